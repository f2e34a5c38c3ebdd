#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/site_check.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;
using namespace specweb::testing;

namespace {

const fs::path kSample = fs::path(SPECWEB_SOURCE_DIR) / "data/sample/spec.xml";

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + SPECWEB_CLI + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh(const std::string& name) {
  auto p = fs::temp_directory_path() / ("specweb_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::vector<std::string> tree_listing(const fs::path& root) {
  std::vector<std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), root).string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("pipeline on the sample") {
  const auto out = fresh("pipeline");
  REQUIRE(run("pipeline -i " + q(kSample) + " -o " + q(out)) == 0);
  CHECK(fs::exists(out / "structured.xml"));
  CHECK(fs::exists(out / "report.tsv"));
  CHECK(fs::exists(out / "site" / "index.html"));
  CHECK(fs::exists(out / "site" / "UniqueKeywords.txt"));
  CHECK(fs::exists(out / "site" / "images" / "classes_overview.png"));
  const auto check = check_site(out / "site");
  CHECK(check.malformed.empty());
  CHECK(check.broken.empty());
  CHECK(check.nested_anchor_pages == 0);
}

TEST_CASE("separate stages reproduce the pipeline") {
  const auto whole = fresh("whole");
  const auto staged = fresh("staged");
  REQUIRE(run("pipeline -i " + q(kSample) + " -o " + q(whole)) == 0);
  REQUIRE(run("extract -i " + q(kSample) + " -o " + q(staged / "structured.xml")) == 0);
  CHECK(slurp(staged / "structured.xml") == slurp(whole / "structured.xml"));

  const auto assets = kSample.parent_path() / "images";
  REQUIRE(run("render -i " + q(staged / "structured.xml") + " -o " + q(staged / "site") + " --assets " + q(assets)) ==
          0);
  REQUIRE(run("crossref -i " + q(staged / "structured.xml") + " -o " + q(staged / "site" / "UniqueKeywords.txt")) ==
          0);
  CHECK(tree_listing(staged / "site") == tree_listing(whole / "site"));
  for (const auto& f : tree_listing(whole / "site")) {
    CHECK_MESSAGE(slurp(staged / "site" / f) == slurp(whole / "site" / f), f);
  }

  { std::ofstream(staged / "label.conf") << "document = spec\n"; }
  REQUIRE(run("stats -i " + q(staged / "structured.xml") + " -c " + q(staged / "label.conf") + " -o " +
              q(staged / "report.tsv")) == 0);
  CHECK(slurp(staged / "report.tsv") == slurp(whole / "report.tsv"));
}

TEST_CASE("serial flag gives identical output") {
  const auto a = fresh("par");
  const auto b = fresh("ser");
  REQUIRE(run("pipeline -i " + q(kSample) + " -o " + q(a)) == 0);
  REQUIRE(run("pipeline --serial -i " + q(kSample) + " -o " + q(b)) == 0);
  for (const auto& f : tree_listing(a)) CHECK_MESSAGE(slurp(a / f) == slurp(b / f), f);
}

TEST_CASE("exit codes") {
  const auto dir = fresh("codes");
  CHECK(run("pipeline -i " + q(dir / "missing.xml") + " -o " + q(dir / "out")) == 2);

  { std::ofstream(dir / "bad.xml") << "<P>open\n<Q>x</P>\n"; }
  CHECK(run("extract -i " + q(dir / "bad.xml") + " -o " + q(dir / "bad.out")) == 3);

  { std::ofstream(dir / "badenc.xml") << "<P>\xFF</P>\n"; }
  CHECK(run("extract -i " + q(dir / "badenc.xml")) == 3);

  { std::ofstream(dir / "dup.xml") << "<P id=\"LinkTarget_1\">7 A</P>\n<P id=\"LinkTarget_2\">7 B</P>\n"; }
  CHECK(run("extract -i " + q(dir / "dup.xml") + " -o " + q(dir / "dup.out")) == 1);

  { std::ofstream(dir / "bad.conf") << "nonsense = 1\n"; }
  CHECK(run("extract -i " + q(kSample) + " -c " + q(dir / "bad.conf")) == 3);
}

TEST_CASE("empty input gives an empty book") {
  const auto dir = fresh("empty");
  { std::ofstream(dir / "empty.xml"); }
  REQUIRE(run("extract -i " + q(dir / "empty.xml") + " -o " + q(dir / "out.xml")) == 0);
  CHECK(slurp(dir / "out.xml").find("<Book/>") != std::string::npos);
}

TEST_CASE("dry run writes nothing") {
  const auto dir = fresh("dry");
  CHECK(run("pipeline --dry-run -i " + q(kSample) + " -o " + q(dir / "out")) == 0);
  CHECK_FALSE(fs::exists(dir / "out"));
  CHECK(run("render --dry-run -i " + q(kSample) + " -o " + q(dir / "site")) != 0);  // flat input is not structured
  CHECK_FALSE(fs::exists(dir / "site"));
}
