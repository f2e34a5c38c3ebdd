#include "specweb/pipeline.hpp"

#include "specweb/error.hpp"
#include "specweb/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace specweb::pipeline {

namespace fs = std::filesystem;

std::size_t ExtractResult::error_count() const {
  return diagnostics.count(Severity::Error) + validation.violations.size();
}

ExtractResult extract(std::string_view flat_bytes, const PipelineConfig& config) {
  ExtractResult result;
  const std::string clean = ingest::sanitize_stream(flat_bytes);
  const auto events = ingest::parse_flat_stream(clean);
  result.events = events.size();
  const auto lines = ingest::collect_heading_queue(events, config.marker, &result.diagnostics);

  const structure::HeadingClassifier classifier(config.patterns);
  std::vector<structure::QueuedHeading> queue;
  queue.reserve(lines.size());
  for (const auto& line : lines) {
    queue.push_back({classifier.classify(line, &result.diagnostics), line.begin, line.end});
  }
  result.headings = queue.size();
  auto built = structure::build_tree(queue, events, &result.diagnostics);
  result.tree = std::move(built.tree);
  result.validation = structure::validate_tree(result.tree);
  return result;
}

fs::path asset_dir_for(const PipelineConfig& config) {
  if (!config.assets.empty()) return config.assets;
  if (config.input.empty()) return {};
  fs::path candidate = config.input.parent_path() / "images";
  return fs::is_directory(candidate) ? candidate : fs::path{};
}

std::string document_label(const PipelineConfig& config) {
  if (!config.document.empty()) return config.document;
  if (!config.input.empty()) return config.input.stem().string();
  return "document";
}

RenderResult render(const structure::DocTree& tree, const PipelineConfig& config, Exec exec) {
  RenderResult r;
  r.manifest = sitegen::link_pages(sitegen::paginate(tree, exec));
  r.manifest.asset_dir = asset_dir_for(config);

  if (config.concepts_enabled) {
    r.classes = concepts::extract_class_hierarchy(tree, config.concepts_trigger);
    r.catalog = concepts::extract_package_catalog(r.classes, config.concepts_packages);
    auto pages = concepts::render_concept_pages(r.classes, r.catalog);
    if (!pages.empty()) sitegen::attach_concept_pages(r.manifest, tree, std::move(pages));
  }

  if (config.crossref_enabled) {
    r.bindings = crossref::build_keyword_map(r.manifest, tree);
    r.unique = crossref::remove_multi_target(r.bindings);
    crossref::apply_crossrefs(r.manifest, crossref::order_longest_first(r.unique), exec);
  }
  return r;
}

sitegen::EmitSummary write_site(const RenderResult& rendered, const fs::path& out_dir, Exec exec) {
  auto summary = sitegen::emit_site(rendered.manifest, out_dir, exec);
  if (!rendered.bindings.empty() || !rendered.unique.empty()) {
    const std::string keywords = crossref::format_unique_keywords(rendered.unique);
    write_file(out_dir / kKeywordsFilename, keywords);
    summary.written.emplace_back(kKeywordsFilename);
    summary.bytes += keywords.size();
    std::sort(summary.written.begin(), summary.written.end());
    summary.files = summary.written.size();
  }
  return summary;
}

stats::ReportRow compute_stats(const structure::DocTree& tree, const RenderResult& rendered,
                               const PipelineConfig& config, Exec exec) {
  stats::TokenizerConfig tok{config.stopwords};
  const auto doc = stats::document_tokens(tree, tok);
  const auto ranking = stats::rank_tokens(doc, exec);
  const auto heads = stats::heading_tokens(tree, tok);
  stats::ProminenceMode mode;
  mode.min_occurrence = config.min_occurrence;

  stats::ReportRow row;
  row.document = document_label(config);
  row.headings = rendered.manifest.pages.size();
  row.crossref_headings = rendered.unique.size();
  row.pages = rendered.manifest.total_pages();
  row.prominence = stats::heading_prominence(ranking, heads, mode);
  return row;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocError(ErrorKind::IoFailure, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DocError(ErrorKind::IoFailure, "read failed: " + path.string());
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DocError(ErrorKind::IoFailure, "cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DocError(ErrorKind::IoFailure, "write failed: " + path.string());
}

}  // namespace specweb::pipeline
