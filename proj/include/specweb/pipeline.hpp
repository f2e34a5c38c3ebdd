#pragma once

#include "specweb/concepts.hpp"
#include "specweb/config.hpp"
#include "specweb/crossref.hpp"
#include "specweb/diagnostics.hpp"
#include "specweb/exec.hpp"
#include "specweb/sitegen.hpp"
#include "specweb/stats.hpp"
#include "specweb/structure.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace specweb::pipeline {

inline constexpr std::string_view kStructuredFilename = "structured.xml";
inline constexpr std::string_view kSiteDir = "site";
inline constexpr std::string_view kKeywordsFilename = "UniqueKeywords.txt";
inline constexpr std::string_view kReportFilename = "report.tsv";

struct ExtractResult {
  structure::DocTree tree;
  Diagnostics diagnostics;
  structure::ValidationReport validation;
  std::size_t events = 0;
  std::size_t headings = 0;

  /// Errors from tree construction plus validation violations.
  std::size_t error_count() const;
};

/// ingest + structure over raw flat-stream bytes. DocErrors from malformed
/// input propagate with their line numbers.
ExtractResult extract(std::string_view flat_bytes, const PipelineConfig& config);

struct RenderResult {
  sitegen::SiteManifest manifest;
  std::vector<concepts::ClassEntry> classes;
  concepts::PackageCatalog catalog;
  std::vector<crossref::KeywordBinding> bindings;  // all headings, document order
  std::vector<crossref::KeywordBinding> unique;    // after ambiguity removal, document order
};

/// sitegen + concepts + crossref, entirely in memory.
RenderResult render(const structure::DocTree& tree, const PipelineConfig& config, Exec exec = Exec::Parallel);

/// Writes the site and UniqueKeywords.txt under `out_dir`.
sitegen::EmitSummary write_site(const RenderResult& rendered, const std::filesystem::path& out_dir,
                                Exec exec = Exec::Parallel);

stats::ReportRow compute_stats(const structure::DocTree& tree, const RenderResult& rendered,
                               const PipelineConfig& config, Exec exec = Exec::Parallel);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Asset directory to copy: the configured one, else `images/` beside `input`.
std::filesystem::path asset_dir_for(const PipelineConfig& config);

/// Report label: the configured one, else the input file stem.
std::string document_label(const PipelineConfig& config);

}  // namespace specweb::pipeline
