#pragma once

#include "specweb/exec.hpp"
#include "specweb/structure.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace specweb::stats {

struct TokenizerConfig {
  std::set<std::string> stopwords;  // compared after lowercasing
};

/// Lowercased maximal runs of ASCII letters/digits and non-ASCII bytes.
std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config = {});

struct TokenCount {
  std::string token;
  std::size_t count = 0;
  bool operator==(const TokenCount&) const = default;
};

/// Tokens by count descending, ties by first occurrence.
class TokenRanking {
public:
  TokenRanking() = default;
  explicit TokenRanking(std::vector<TokenCount> entries);

  const std::vector<TokenCount>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t total() const noexcept { return total_; }
  /// 1-based rank, if present.
  std::optional<std::size_t> rank_of(std::string_view token) const;
  std::size_t count_of(std::string_view token) const;

  bool operator==(const TokenRanking& other) const { return entries_ == other.entries_; }

private:
  std::vector<TokenCount> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t total_ = 0;
};

TokenRanking rank_tokens(std::span<const std::string> tokens, Exec exec = Exec::Parallel);

/// Exact non-negative fraction in lowest terms.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;                    // "n" or "n/d"
  std::string decimal(int places) const;      // rounded half up

  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct ProminenceMode {
  std::optional<std::size_t> min_occurrence;  // keep tokens with count > k

  static ProminenceMode all_headings() { return {}; }
  static ProminenceMode threshold(std::size_t k) { return {k}; }
  std::string name() const;
  bool operator==(const ProminenceMode&) const = default;
};

struct ProminenceReport {
  std::size_t doc_token_count = 0;      // distinct ranked tokens
  std::size_t raw_doc_token_count = 0;  // all occurrences
  std::size_t heading_token_count = 0;  // distinct heading tokens offered
  std::vector<std::string> kept_tokens;
  std::vector<std::size_t> positions;
  std::vector<std::string> missing_tokens;  // not in the document ranking
  Rational mean;
  Rational percentage;
  ProminenceMode mode;
};

/// Positions of the heading tokens among the ranked document tokens, their
/// mean and mean * 100 / (ranked token count). Throws
/// DocError(EmptyHeadings) when no heading token survives.
ProminenceReport heading_prominence(const TokenRanking& doc_ranking, std::span<const std::string> heading_tokens,
                                    ProminenceMode mode = {});

/// Tokens of the document body (every block, headings excluded), in
/// document order.
std::vector<std::string> document_tokens(const structure::DocTree& tree, const TokenizerConfig& config = {});

/// Distinct tokens of heading titles in first-occurrence order.
std::vector<std::string> heading_tokens(const structure::DocTree& tree, const TokenizerConfig& config = {});

struct ReportRow {
  std::string document;
  std::size_t headings = 0;  // structural headings (one page each)
  std::size_t crossref_headings = 0;
  std::size_t pages = 0;
  ProminenceReport prominence;
};

/// Tab-separated table with a header line. Throws DocError(EmptyReport).
std::string emit_report(std::span<const ReportRow> rows);

}  // namespace specweb::stats
