#include "specweb/config.hpp"

#include "specweb/error.hpp"
#include "specweb/text.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

namespace specweb {

namespace {

std::vector<std::string> parse_list(std::string_view value) {
  std::vector<std::string> out;
  for (const auto& item : text::split(value, ',')) {
    std::string v(text::trim(item));
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

bool parse_bool(std::string_view value, std::size_t line) {
  if (value == "true" || value == "yes" || value == "on" || value == "1") return true;
  if (value == "false" || value == "no" || value == "off" || value == "0") return false;
  throw DocError(ErrorKind::InvalidConfig, "expected a boolean, got '" + std::string(value) + "'", line);
}

std::size_t parse_count(std::string_view value, std::size_t line) {
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw DocError(ErrorKind::InvalidConfig, "expected a non-negative integer, got '" + std::string(value) + "'",
                   line);
  }
  return n;
}

std::string checked_pattern(const std::string& value, std::size_t line) {
  try {
    std::regex re(value);
  } catch (const std::regex_error& e) {
    throw DocError(ErrorKind::InvalidConfig, "bad pattern '" + value + "': " + e.what(), line);
  }
  return value;
}

}  // namespace

PipelineConfig parse_config(std::string_view content, PipelineConfig cfg) {
  std::size_t line_no = 0;
  for (const auto& raw : text::split(content, '\n')) {
    ++line_no;
    const std::string line(text::trim(raw));
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DocError(ErrorKind::InvalidConfig, "expected key = value", line_no);
    const std::string key(text::trim(std::string_view(line).substr(0, eq)));
    const std::string value(text::trim(std::string_view(line).substr(eq + 1)));

    if (key == "input") {
      cfg.input = value;
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "assets") {
      cfg.assets = value;
    } else if (key == "document") {
      cfg.document = value;
    } else if (key == "marker") {
      if (value.empty()) throw DocError(ErrorKind::InvalidConfig, "marker must not be empty", line_no);
      cfg.marker = value;
    } else if (key == "patterns.part") {
      cfg.patterns.part = checked_pattern(value, line_no);
    } else if (key == "patterns.chapter") {
      cfg.patterns.chapter = checked_pattern(value, line_no);
    } else if (key == "patterns.section") {
      cfg.patterns.section = checked_pattern(value, line_no);
    } else if (key == "patterns.subsection") {
      cfg.patterns.subsection = checked_pattern(value, line_no);
    } else if (key == "patterns.end_part") {
      cfg.patterns.end_part = checked_pattern(value, line_no);
    } else if (key == "patterns.last_part") {
      cfg.patterns.last_part = checked_pattern(value, line_no);
    } else if (key == "keywords") {
      cfg.patterns.keywords = parse_list(value);
    } else if (key == "concepts.trigger") {
      cfg.concepts_trigger = value;
    } else if (key == "concepts.packages") {
      cfg.concepts_packages = parse_list(value);
    } else if (key == "concepts.enabled") {
      cfg.concepts_enabled = parse_bool(value, line_no);
    } else if (key == "crossref.enabled") {
      cfg.crossref_enabled = parse_bool(value, line_no);
    } else if (key == "stats.min_occurrence") {
      if (value.empty() || value == "none") {
        cfg.min_occurrence.reset();
      } else {
        cfg.min_occurrence = parse_count(value, line_no);
      }
    } else if (key == "stats.stopwords") {
      cfg.stopwords.clear();
      for (auto& w : parse_list(value)) {
        for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        cfg.stopwords.insert(std::move(w));
      }
    } else {
      throw DocError(ErrorKind::InvalidConfig, "unknown key '" + key + "'", line_no);
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocError(ErrorKind::IoFailure, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string format_config(const PipelineConfig& c) {
  std::string out;
  auto put = [&](std::string_view key, const std::string& value) {
    out += std::string(key) + " = " + value + "\n";
  };
  if (!c.input.empty()) put("input", c.input.string());
  if (!c.out.empty()) put("out", c.out.string());
  if (!c.assets.empty()) put("assets", c.assets.string());
  if (!c.document.empty()) put("document", c.document);
  put("marker", c.marker);
  put("patterns.part", c.patterns.part);
  put("patterns.chapter", c.patterns.chapter);
  put("patterns.section", c.patterns.section);
  put("patterns.subsection", c.patterns.subsection);
  put("patterns.end_part", c.patterns.end_part);
  put("patterns.last_part", c.patterns.last_part);
  put("keywords", text::join(c.patterns.keywords, ", "));
  put("concepts.trigger", c.concepts_trigger);
  put("concepts.packages", text::join(c.concepts_packages, ", "));
  put("concepts.enabled", c.concepts_enabled ? "true" : "false");
  put("crossref.enabled", c.crossref_enabled ? "true" : "false");
  put("stats.min_occurrence", c.min_occurrence ? std::to_string(*c.min_occurrence) : "none");
  put("stats.stopwords", text::join(std::vector<std::string>(c.stopwords.begin(), c.stopwords.end()), ", "));
  return out;
}

}  // namespace specweb
