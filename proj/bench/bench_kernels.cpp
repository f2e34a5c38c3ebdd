// Serial reference vs OpenMP kernel for each parallel stage.

#include "specweb/crossref.hpp"
#include "specweb/sitegen.hpp"
#include "specweb/stats.hpp"
#include "specweb/structure.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

using namespace specweb;

namespace {

const char* kWords[] = {"model", "element", "class", "association", "package", "constraint", "attribute",
                        "operation", "semantics", "notation", "instance", "property", "type", "value"};

std::string sentence(std::mt19937& rng, int words) {
  std::string s;
  for (int i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += kWords[rng() % std::size(kWords)];
  }
  return s;
}

// chapters x sections x subsections, each with a few paragraphs and keyword blocks
structure::DocTree synthetic_tree(int chapters, int sections, int subsections) {
  std::mt19937 rng(7);
  structure::DocTree tree;
  auto para = [&] { return structure::Block{structure::Paragraph{sentence(rng, 40)}}; };
  for (int c = 1; c <= chapters; ++c) {
    structure::DocNode ch;
    ch.heading = {structure::HeadingKind::Chapter, std::to_string(c), "Chapter" + std::to_string(c), {}, 0};
    ch.blocks.push_back(para());
    for (int s = 1; s <= sections; ++s) {
      structure::DocNode sec;
      const std::string sn = std::to_string(c) + "." + std::to_string(s);
      sec.heading = {structure::HeadingKind::Section, sn, "Section" + sn, {}, 0};
      sec.blocks.push_back(para());
      for (int u = 1; u <= subsections; ++u) {
        structure::DocNode sub;
        const std::string un = sn + "." + std::to_string(u);
        sub.heading = {structure::HeadingKind::Subsection, un, "Concept" + un, {}, 0};
        sub.blocks.push_back(para());
        structure::DocNode kw;
        kw.heading = {structure::HeadingKind::Keyword, "", "Semantics", {}, 0};
        kw.blocks.push_back(para());
        sub.children.push_back(std::move(kw));
        sec.children.push_back(std::move(sub));
      }
      ch.children.push_back(std::move(sec));
    }
    tree.root.children.push_back(std::move(ch));
  }
  return tree;
}

const structure::DocTree& tree() {
  static const auto t = synthetic_tree(18, 5, 8);
  return t;
}

Exec mode(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_Paginate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sitegen::paginate(tree(), mode(state)));
}
BENCHMARK(BM_Paginate)->Arg(0)->Arg(1)->ArgName("parallel");

void BM_Crossref(benchmark::State& state) {
  const auto manifest = sitegen::link_pages(sitegen::paginate(tree(), Exec::Serial));
  const auto bindings = crossref::filter_ambiguous(crossref::build_keyword_map(manifest, tree()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(crossref::apply_crossrefs(manifest.pages, bindings, mode(state)));
  }
}
BENCHMARK(BM_Crossref)->Arg(0)->Arg(1)->ArgName("parallel");

void BM_RankTokens(benchmark::State& state) {
  const auto tokens = stats::document_tokens(tree());
  for (auto _ : state) benchmark::DoNotOptimize(stats::rank_tokens(tokens, mode(state)));
}
BENCHMARK(BM_RankTokens)->Arg(0)->Arg(1)->ArgName("parallel");

void BM_EmitSite(benchmark::State& state) {
  const auto manifest = sitegen::link_pages(sitegen::paginate(tree(), Exec::Serial));
  const auto dir = std::filesystem::temp_directory_path() / "specweb_bench_site";
  for (auto _ : state) benchmark::DoNotOptimize(sitegen::emit_site(manifest, dir, mode(state)));
  std::filesystem::remove_all(dir);
}
BENCHMARK(BM_EmitSite)->Arg(0)->Arg(1)->ArgName("parallel");

}  // namespace

BENCHMARK_MAIN();
