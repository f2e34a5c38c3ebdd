#include "specweb/stats.hpp"

#include "specweb/error.hpp"

#include <algorithm>
#include <numeric>
#include <omp.h>
#include <unordered_set>

namespace specweb::stats {

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    if (!config.stopwords.count(current)) out.push_back(current);
    current.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c >= 0x80 || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z')) {
      current += ch;
    } else if (c >= 'A' && c <= 'Z') {
      current += static_cast<char>(c - 'A' + 'a');
    } else {
      flush();
    }
  }
  flush();
  return out;
}

TokenRanking::TokenRanking(std::vector<TokenCount> entries) : entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    index_.emplace(entries_[i].token, i);
    total_ += entries_[i].count;
  }
}

std::optional<std::size_t> TokenRanking::rank_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second + 1;
}

std::size_t TokenRanking::count_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? 0 : entries_[it->second].count;
}

namespace {

struct Tally {
  std::size_t count = 0;
  std::size_t first = 0;
};

using TallyMap = std::unordered_map<std::string, Tally>;

TokenRanking finish(const TallyMap& tallies) {
  std::vector<std::pair<const std::string*, Tally>> rows;
  rows.reserve(tallies.size());
  for (const auto& [token, t] : tallies) rows.emplace_back(&token, t);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second.count != b.second.count) return a.second.count > b.second.count;
    return a.second.first < b.second.first;
  });
  std::vector<TokenCount> entries;
  entries.reserve(rows.size());
  for (const auto& [token, t] : rows) entries.push_back({*token, t.count});
  return TokenRanking(std::move(entries));
}

}  // namespace

TokenRanking rank_tokens(std::span<const std::string> tokens, Exec exec) {
  if (exec == Exec::Serial) {
    TallyMap tallies;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      auto [it, inserted] = tallies.try_emplace(tokens[i], Tally{0, i});
      ++it->second.count;
    }
    return finish(tallies);
  }

  const int shards = std::max(1, omp_get_max_threads());
  std::vector<TallyMap> partial(static_cast<std::size_t>(shards));
  const std::size_t n = tokens.size();
#pragma omp parallel for schedule(static) num_threads(shards)
  for (int s = 0; s < shards; ++s) {
    const std::size_t begin = n * static_cast<std::size_t>(s) / static_cast<std::size_t>(shards);
    const std::size_t end = n * static_cast<std::size_t>(s + 1) / static_cast<std::size_t>(shards);
    auto& local = partial[static_cast<std::size_t>(s)];
    for (std::size_t i = begin; i < end; ++i) {
      auto [it, inserted] = local.try_emplace(tokens[i], Tally{0, i});
      ++it->second.count;
    }
  }
  TallyMap merged = std::move(partial.front());
  for (std::size_t s = 1; s < partial.size(); ++s) {
    for (auto& [token, t] : partial[s]) {
      auto [it, inserted] = merged.try_emplace(token, t);
      if (!inserted) {
        it->second.count += t.count;
        it->second.first = std::min(it->second.first, t.first);
      }
    }
  }
  return finish(merged);
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DocError(ErrorKind::MalformedInput, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal(int places) const {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const bool negative = num_ < 0;
  const std::int64_t a = negative ? -num_ : num_;
  const std::int64_t scaled = (a * scale * 2 + den_) / (den_ * 2);
  std::string s = std::to_string(scaled / scale);
  if (places > 0) {
    std::string frac = std::to_string(scaled % scale);
    s += "." + std::string(static_cast<std::size_t>(places) - frac.size(), '0') + frac;
  }
  return negative ? "-" + s : s;
}

std::string ProminenceMode::name() const {
  if (!min_occurrence) return "all-headings";
  return "min-occurrence>" + std::to_string(*min_occurrence);
}

ProminenceReport heading_prominence(const TokenRanking& doc_ranking, std::span<const std::string> heading_tokens,
                                    ProminenceMode mode) {
  ProminenceReport r;
  r.mode = mode;
  r.doc_token_count = doc_ranking.size();
  r.raw_doc_token_count = doc_ranking.total();
  std::unordered_set<std::string> seen;
  for (const auto& t : heading_tokens) {
    if (!seen.insert(t).second) continue;
    ++r.heading_token_count;
    const auto rank = doc_ranking.rank_of(t);
    if (!rank) {
      r.missing_tokens.push_back(t);
      continue;
    }
    if (mode.min_occurrence && doc_ranking.count_of(t) <= *mode.min_occurrence) continue;
    r.kept_tokens.push_back(t);
    r.positions.push_back(*rank);
  }
  if (r.positions.empty()) throw DocError(ErrorKind::EmptyHeadings, "no heading token survives filtering");
  std::int64_t sum = 0;
  for (auto p : r.positions) sum += static_cast<std::int64_t>(p);
  const auto n = static_cast<std::int64_t>(r.positions.size());
  const auto d = static_cast<std::int64_t>(r.doc_token_count);
  r.mean = Rational(sum, n);
  r.percentage = Rational(sum * 100, n * d);
  return r;
}

namespace {

void append_tokens(std::string_view s, const TokenizerConfig& config, std::vector<std::string>& out) {
  auto t = tokenize(s, config);
  out.insert(out.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
}

void list_tokens(const structure::List& l, const TokenizerConfig& config, std::vector<std::string>& out) {
  for (const auto& item : l.items) {
    append_tokens(item.label, config, out);
    append_tokens(item.title, config, out);
    if (item.sublist) list_tokens(*item.sublist, config, out);
  }
}

void block_tokens(const structure::Block& b, const TokenizerConfig& config, std::vector<std::string>& out) {
  if (const auto* p = std::get_if<structure::Paragraph>(&b)) {
    append_tokens(p->text, config, out);
  } else if (const auto* f = std::get_if<structure::Figure>(&b)) {
    append_tokens(f->caption, config, out);
  } else if (const auto* t = std::get_if<structure::Table>(&b)) {
    append_tokens(t->caption, config, out);
    for (const auto& row : t->header_rows) {
      for (const auto& c : row) append_tokens(c, config, out);
    }
    for (const auto& row : t->data_rows) {
      for (const auto& c : row) append_tokens(c, config, out);
    }
  } else if (const auto* l = std::get_if<structure::List>(&b)) {
    list_tokens(*l, config, out);
  }
}

void node_tokens(const structure::DocNode& n, const TokenizerConfig& config, std::vector<std::string>& out) {
  for (const auto& b : n.blocks) block_tokens(b, config, out);
  for (const auto& c : n.children) node_tokens(c, config, out);
}

}  // namespace

std::vector<std::string> document_tokens(const structure::DocTree& tree, const TokenizerConfig& config) {
  std::vector<std::string> out;
  node_tokens(tree.root, config, out);
  return out;
}

std::vector<std::string> heading_tokens(const structure::DocTree& tree, const TokenizerConfig& config) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  structure::for_each_node(tree.root, [&](const structure::DocNode& n, std::size_t) {
    for (auto& t : tokenize(n.heading.title, config)) {
      if (seen.insert(t).second) out.push_back(std::move(t));
    }
  });
  return out;
}

std::string emit_report(std::span<const ReportRow> rows) {
  if (rows.empty()) throw DocError(ErrorKind::EmptyReport, "no report rows");
  std::string out =
      "document\theadings\tcrossref_headings\tdoc_tokens\traw_doc_tokens\theading_tokens\tpercentage\t"
      "percentage_exact\tpages\tmode\n";
  for (const auto& r : rows) {
    const auto& p = r.prominence;
    out += r.document + '\t' + std::to_string(r.headings) + '\t' + std::to_string(r.crossref_headings) + '\t' +
           std::to_string(p.doc_token_count) + '\t' + std::to_string(p.raw_doc_token_count) + '\t' +
           std::to_string(p.heading_token_count) + '\t' + p.percentage.decimal(1) + '\t' + p.percentage.str() +
           '\t' + std::to_string(r.pages) + '\t' + p.mode.name() + '\n';
  }
  return out;
}

}  // namespace specweb::stats
