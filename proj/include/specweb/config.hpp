#pragma once

#include "specweb/structure.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace specweb {

/// Settings for every pipeline stage. Defaults need nothing beyond input and
/// output paths.
struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path out;
  std::filesystem::path assets;  // empty: `images/` next to the input
  std::string document;          // report label; empty: input file stem
  std::string marker = "LinkTarget";
  structure::HeadingPatternConfig patterns;
  std::string concepts_trigger = "Class Descriptions";
  std::vector<std::string> concepts_packages;  // empty: every reference
  bool concepts_enabled = true;
  bool crossref_enabled = true;
  std::optional<std::size_t> min_occurrence;
  std::set<std::string> stopwords;
};

/// Applies `key = value` lines on top of `base`. Blank lines and lines
/// starting with '#' are ignored; list values are comma-separated. Throws
/// DocError(InvalidConfig) with the line number on unknown keys or bad values.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});

/// parse_config over a file. Throws DocError(IoFailure) if it cannot be read.
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

/// The configuration as `key = value` lines parse_config accepts.
std::string format_config(const PipelineConfig& config);

}  // namespace specweb
