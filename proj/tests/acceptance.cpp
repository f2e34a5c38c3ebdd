// Acceptance gate: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include "specweb/concepts.hpp"
#include "specweb/crossref.hpp"
#include "specweb/pipeline.hpp"
#include "specweb/sitegen.hpp"
#include "specweb/stats.hpp"
#include "specweb/structured_xml.hpp"
#include "specweb/text.hpp"
#include "support/generators.hpp"
#include "support/site_check.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace specweb;
using namespace specweb::testing;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      note << what;
    }
  }
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

fs::path fresh(const std::string& name) {
  auto p = fs::temp_directory_path() / ("specweb_acceptance_" + name);
  fs::remove_all(p);
  return p;
}

DocNode node(HeadingKind k, std::string number, std::string title, std::vector<std::string> refs = {},
             std::vector<DocNode> children = {}) {
  return {HeadingEntry{k, std::move(number), std::move(title), std::move(refs), 0}, {}, std::move(children)};
}

// ---------------------------------------------------------------------------

void ac1(Outcome& o) {
  const std::string flat =
      "<P id=\"LinkTarget_1\">7.3 Class Descriptions</P>\n"
      "<P id=\"LinkTarget_2\">7.3.1 Abstraction</P>\n"
      "<P id=\"LinkTarget_3\">7.3.2 Association</P>\n"
      "<P id=\"LinkTarget_4\">7.4 Diagrams</P>\n";
  const std::string expected =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<Book>\n"
      "  <Section Number=\"7.3\" Line=\"1\">\n"
      "    <Name>Class Descriptions</Name>\n"
      "    <Subsection Number=\"7.3.1\" Line=\"2\">\n"
      "      <Name>Abstraction</Name>\n"
      "    </Subsection>\n"
      "    <Subsection Number=\"7.3.2\" Line=\"3\">\n"
      "      <Name>Association</Name>\n"
      "    </Subsection>\n"
      "  </Section>\n"
      "  <Section Number=\"7.4\" Line=\"4\">\n"
      "    <Name>Diagrams</Name>\n"
      "  </Section>\n"
      "</Book>\n";
  const auto t0 = Clock::now();
  const auto r = pipeline::extract(flat, PipelineConfig{});
  const auto xml = structure::serialize_structured_xml(r.tree);
  const double ms = ms_since(t0);
  o.require(r.error_count() == 0, "extract reported errors");
  o.require(xml == expected, "serialization differs:\n" + xml);
  o.require(ms < 10.0, "took " + std::to_string(ms) + " ms");
  if (o.pass) o.note << "7.4 is a sibling of 7.3, " << ms << " ms";
}

bool strictly_nested(const DocNode& n) {
  for (const auto& c : n.children) {
    if (structure::rank(c.heading.kind) <= structure::rank(n.heading.kind) || !strictly_nested(c)) return false;
  }
  return true;
}

void ac2(Outcome& o) {
  std::mt19937 rng(2024);
  const int rounds = 1000;
  std::size_t longest = 0;
  for (int i = 0; i < rounds && o.pass; ++i) {
    const auto q = random_queue(rng, 500);
    longest = std::max(longest, q.size());
    const auto r = structure::build_tree(q);
    o.require(r.opened == q.size() && r.closed == q.size(), "opened/closed differ from queue length");
    o.require(strictly_nested(r.tree.root), "parent rank not below child rank");
    std::vector<std::string> order;
    structure::for_each_node(r.tree.root, [&](const DocNode& n, std::size_t) { order.push_back(n.heading.title); });
    std::vector<std::string> input;
    for (const auto& h : q) input.push_back(h.title);
    o.require(order == input, "pre-order differs from input order");
  }
  if (o.pass) o.note << rounds << " queues, longest " << longest;
}

std::size_t count_html(const fs::path& root) {
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(root)) n += e.path().extension() == ".html";
  return n;
}

std::vector<sitegen::PageSpec> concept_pages_for(std::size_t classes) {
  std::vector<concepts::ClassEntry> entries;
  std::vector<std::string> packages;
  for (std::size_t i = 0; i < classes; ++i) {
    packages.push_back("Pkg" + std::to_string(i));
    entries.push_back({"C" + std::to_string(i), {packages.back()}, "1.html", "Group"});
  }
  return concepts::render_concept_pages(entries, concepts::extract_package_catalog(entries, packages));
}

void ac3(Outcome& o) {
  std::mt19937 rng(3);
  struct Case {
    std::size_t h;
    std::size_t classes;
    std::size_t expect;  // stated file count, 0 when only the law applies
  };
  const std::vector<Case> cases = {{787, 0, 788}, {18, 0, 19}, {0, 0, 1}, {40, 3, 0}, {120, 1, 0}};
  for (const auto& c : cases) {
    const auto tree = structural_tree(c.h, rng);
    auto m = sitegen::link_pages(sitegen::paginate(tree));
    const auto cp = concept_pages_for(c.classes);
    const std::size_t concept_count = cp.size();
    if (!cp.empty()) sitegen::attach_concept_pages(m, tree, cp);
    const auto dir = fresh("pages");
    sitegen::emit_site(m, dir);
    const std::size_t files = count_html(dir);
    o.require(files == c.h + 1 + concept_count,
              "H=" + std::to_string(c.h) + " C=" + std::to_string(concept_count) + " gave " + std::to_string(files));
    if (c.expect) o.require(files == c.expect, "H=" + std::to_string(c.h) + " gave " + std::to_string(files));
  }
  if (o.pass) o.note << "787 -> 788, 18 -> 19, law holds with concept pages";
}

// pre-order of the headings that own a page, computed from the tree alone
std::vector<std::string> page_order(const DocTree& t) {
  std::vector<std::string> out;
  std::string last_subsection;
  structure::for_each_node(t.root, [&](const DocNode& n, std::size_t) {
    const auto& h = n.heading;
    if (h.kind == HeadingKind::Keyword) return;
    if (structure::is_deep_subsection(h) && !last_subsection.empty() &&
        text::starts_with(h.number, last_subsection + ".")) {
      return;
    }
    if (h.kind == HeadingKind::Subsection && !structure::is_deep_subsection(h)) last_subsection = h.number;
    out.push_back(structure::page_key(h) + ".html");
  });
  return out;
}

void ac4(Outcome& o) {
  std::mt19937 rng(4);
  int checked = 0;
  for (int round = 0; round < 500 && o.pass; ++round) {
    const auto tree = random_valid_tree(rng);
    const auto m = sitegen::link_pages(sitegen::paginate(tree));
    const auto expected = page_order(tree);
    if (m.pages.empty()) {
      o.require(expected.empty(), "pages missing");
      continue;
    }
    ++checked;
    std::map<std::string, const sitegen::PageSpec*> by_name;
    for (const auto& p : m.pages) by_name[p.filename] = &p;
    o.require(!m.pages.front().nav.prev, "first page has a Previous link");
    o.require(!m.pages.back().nav.next, "last page has a Next link");
    std::vector<std::string> walk;
    std::set<std::string> seen;
    for (const sitegen::PageSpec* cur = &m.pages.front(); cur;) {
      if (!seen.insert(cur->filename).second) {
        o.require(false, "page visited twice: " + cur->filename);
        break;
      }
      walk.push_back(cur->filename);
      if (!cur->nav.next) break;
      const auto it = by_name.find(*cur->nav.next);
      if (it == by_name.end()) {
        o.require(false, "Next link to unknown page");
        break;
      }
      // prev of next is the page itself
      o.require(it->second->nav.prev == cur->filename, "prev(next(p)) != p at " + cur->filename);
      cur = it->second;
    }
    o.require(walk == expected, "traversal is not the pre-order of page headings");
  }
  if (o.pass) o.note << checked << " non-empty manifests";
}

std::size_t site_hash(const fs::path& root) {
  std::size_t h = 0;
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    h = h * 1000003u ^ std::hash<std::string>{}(fs::relative(f, root).string());
    h = h * 1000003u ^ std::hash<std::string>{}(slurp(f));
  }
  return h;
}

void ac5(Outcome& o) {
  std::mt19937 rng(5);
  const int rounds = 1000;
  for (int i = 0; i < rounds && o.pass; ++i) {
    const auto t = random_valid_tree(rng);
    o.require(structure::parse_structured_xml(structure::serialize_structured_xml(t)) == t,
              "round trip failed on tree " + std::to_string(i));
  }
  const auto sample = fs::path(SPECWEB_SOURCE_DIR) / "data/sample/spec.xml";
  PipelineConfig cfg;
  cfg.input = sample;
  const auto ex = pipeline::extract(pipeline::read_file(sample), cfg);
  const auto a = fresh("hash_a");
  const auto b = fresh("hash_b");
  pipeline::write_site(pipeline::render(ex.tree, cfg), a);
  pipeline::write_site(pipeline::render(ex.tree, cfg), b, Exec::Serial);
  const auto ha = site_hash(a);
  const auto hb = site_hash(b);
  o.require(ha == hb, "site hashes differ");
  if (o.pass) o.note << rounds << " trees; site hash " << std::hex << ha << std::dec << " twice";
}

void ac6(Outcome& o) {
  DocTree t;
  auto overview = node(HeadingKind::Section, "7.1", "Overview");
  overview.blocks.push_back(structure::Paragraph{"AssociationClass extends Association"});
  auto descriptions = node(HeadingKind::Section, "7.3", "Class Descriptions", {},
                           {node(HeadingKind::Subsection, "7.3.1", "Association"),
                            node(HeadingKind::Subsection, "7.3.2", "AssociationClass")});
  t.root.children.push_back(node(HeadingKind::Chapter, "7", "Classes", {}, {overview, descriptions}));

  auto m = sitegen::link_pages(sitegen::paginate(t));
  const auto before = m;
  const auto bindings = crossref::order_longest_first(crossref::remove_multi_target(crossref::build_keyword_map(m, t)));
  crossref::apply_crossrefs(m, bindings);
  const auto* page = m.find("7.1.html");
  o.require(page && !page->body.empty(), "overview page missing");
  if (!o.pass) return;
  const std::string want =
      "<a href=\"7.3.2.html\">AssociationClass</a> extends <a href=\"7.3.1.html\">Association</a>";
  o.require(page->body.front().find(want) != std::string::npos, "links wrong: " + page->body.front());

  for (std::size_t i = 0; i < m.pages.size(); ++i) {
    for (std::size_t j = 0; j < m.pages[i].body.size(); ++j) {
      o.require(crossref::visible_text(m.pages[i].body[j]) == crossref::visible_text(before.pages[i].body[j]),
                "visible text changed on " + m.pages[i].filename);
    }
  }
  auto again = m;
  crossref::apply_crossrefs(again, bindings);
  o.require(again.pages == m.pages && again.toc_page == m.toc_page, "second pass changed output");

  const auto dir = fresh("crossref");
  sitegen::emit_site(m, dir);
  const auto check = check_site(dir);
  o.require(check.nested_anchor_pages == 0, "nested anchors found");
  o.require(check.ok(), "site check failed");
  if (o.pass) o.note << "longest match first, no nested anchors, idempotent";
}

void ac7(Outcome& o) {
  DocTree t;
  auto descriptions = node(HeadingKind::Section, "9.3", "Class Descriptions", {},
                           {node(HeadingKind::Subsection, "9.3.1", "Class", {"StructuredClasses"})});
  t.root.children.push_back(
      node(HeadingKind::Chapter, "9", "Composite Structures", {}, {node(HeadingKind::Section, "9.1", "Overview"),
                                                                   descriptions}));
  const auto entries = concepts::extract_class_hierarchy(t);
  o.require(entries.size() == 1, "expected one class entry");
  if (!o.pass) return;
  const auto& e = entries.front();
  o.require(e.name == "Class" && e.packages == std::vector<std::string>{"StructuredClasses"} && e.page == "9.3.1.html",
            "entry differs");

  const std::vector<std::string> packages = {"Actions", "CompleteActions"};
  const std::vector<concepts::ClassEntry> actions = {{"AddVariableValueAction", {"CompleteActions"}, "a.html", "g"}};
  const auto catalog = concepts::extract_package_catalog(actions, packages);
  const auto* complete = catalog.find("CompleteActions");
  const auto* plain = catalog.find("Actions");
  o.require(complete && complete->size() == 1, "CompleteActions bucket missing the class");
  o.require(!plain || plain->empty(), "class leaked into Actions");
  if (o.pass) o.note << "ClassEntry{Class, [StructuredClasses], 9.3.1.html}; CompleteActions only";
}

// exact oracle: naive counting, ranks by (count desc, first index asc)
stats::Rational oracle_percentage(const std::vector<std::string>& doc, const std::vector<std::string>& heads) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    auto [it, fresh_token] = seen.try_emplace(doc[i], 0, i);
    ++it->second.first;
  }
  std::int64_t sum = 0, n = 0;
  for (const auto& h : std::set<std::string>(heads.begin(), heads.end())) {
    const auto it = seen.find(h);
    if (it == seen.end()) continue;
    std::int64_t rank = 1;
    for (const auto& [tok, cf] : seen) {
      if (cf.first > it->second.first || (cf.first == it->second.first && cf.second < it->second.second)) ++rank;
    }
    sum += rank;
    ++n;
  }
  return stats::Rational(sum * 100, n * static_cast<std::int64_t>(seen.size()));
}

void ac8(Outcome& o) {
  std::mt19937 rng(8);
  int cases = 0;
  for (int round = 0; round < 300 && o.pass; ++round) {
    std::vector<std::string> doc;
    const std::size_t n = 1 + rng() % 1000;
    const std::size_t vocab = 1 + rng() % 120;
    for (std::size_t i = 0; i < n; ++i) doc.push_back("w" + std::to_string(rng() % vocab));
    std::vector<std::string> heads;
    for (int h = 0; h < 1 + static_cast<int>(rng() % 8); ++h) heads.push_back(doc[rng() % doc.size()]);
    const auto ranking = stats::rank_tokens(doc);
    const auto p = stats::heading_prominence(ranking, heads);
    o.require(p.percentage == oracle_percentage(doc, heads), "oracle mismatch in round " + std::to_string(round));

    // every count multiplied by k: ranks and percentage unchanged
    std::vector<std::string> dup;
    const int k = 2 + static_cast<int>(rng() % 3);
    for (const auto& tok : doc) {
      for (int c = 0; c < k; ++c) dup.push_back(tok);
    }
    const auto dup_ranking = stats::rank_tokens(dup);
    bool same_ranks = dup_ranking.size() == ranking.size();
    for (std::size_t i = 0; same_ranks && i < ranking.size(); ++i) {
      same_ranks = dup_ranking.entries()[i].token == ranking.entries()[i].token;
    }
    o.require(same_ranks, "duplication changed the ranking");
    o.require(stats::heading_prominence(dup_ranking, heads).percentage == p.percentage,
              "duplication changed the percentage");
    ++cases;
  }
  for (std::int64_t d = 1; d <= 200 && o.pass; ++d) {
    std::vector<std::string> doc;
    for (std::int64_t i = 0; i < d; ++i) {
      for (std::int64_t c = 0; c < d - i; ++c) doc.push_back("t" + std::to_string(i));
    }
    std::vector<std::string> all(doc);
    const auto p = stats::heading_prominence(stats::rank_tokens(doc), all);
    o.require(p.percentage == stats::Rational((d + 1) * 50, d), "analytic case fails at d=" + std::to_string(d));
  }
  if (o.pass) o.note << cases << " oracle corpora, analytic case d=1..200 exact";
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SPECWEB_CLI + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void ac9(Outcome& o) {
  const auto sample = fs::path(SPECWEB_SOURCE_DIR) / "data/sample/spec.xml";
  const auto out = fresh("e2e");
  const auto t0 = Clock::now();
  const int rc = run_cli("pipeline -i \"" + sample.string() + "\" -o \"" + out.string() + "\"");
  const double ms = ms_since(t0);
  o.require(rc == 0, "exit code " + std::to_string(rc));
  o.require(ms < 1000.0, "took " + std::to_string(ms) + " ms");
  if (!o.pass) return;
  const auto ex = pipeline::extract(pipeline::read_file(sample), PipelineConfig{});
  o.require(structure::count_nodes(ex.tree) == 30, "sample does not have 30 headings");
  const auto check = check_site(out / "site");
  o.require(check.malformed.empty(), "malformed page: " + (check.malformed.empty() ? "" : check.malformed.front()));
  o.require(check.broken.empty(), "broken link: " + (check.broken.empty() ? "" : check.broken.front()));
  o.require(check.html_files > 0, "no pages written");
  if (o.pass) o.note << check.html_files << " pages, " << check.links << " links, " << ms << " ms";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"AC1 mis-nesting regression", ac1},  {"AC2 stack balance", ac2},
      {"AC3 page-count law", ac3},          {"AC4 navigation chain", ac4},
      {"AC5 round trip and determinism", ac5}, {"AC6 cross-reference correctness", ac6},
      {"AC7 concept extraction", ac7},      {"AC8 prominence formula", ac8},
      {"AC9 end-to-end sample", ac9},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << "exception: " << e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.note.str() << "\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
