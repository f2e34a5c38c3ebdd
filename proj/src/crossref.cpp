#include "specweb/crossref.hpp"

#include "specweb/error.hpp"
#include "specweb/text.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace specweb::crossref {

namespace {

std::string decode_entities(std::string_view s) {
  static const std::pair<std::string_view, char> table[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}, {"&#39;", '\''}};
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] == '&') {
      bool done = false;
      for (const auto& [name, c] : table) {
        if (s.substr(i, name.size()) == name) {
          out += c;
          i += name.size();
          done = true;
          break;
        }
      }
      if (done) continue;
    }
    out += s[i++];
  }
  return out;
}

bool is_anchor_open(std::string_view tag) {
  return tag.size() >= 3 && tag[0] == '<' && (tag[1] == 'a' || tag[1] == 'A') &&
         (tag[2] == '>' || tag[2] == ' ' || tag[2] == '\t' || tag[2] == '\n');
}

bool is_anchor_close(std::string_view tag) {
  return tag.size() >= 4 && tag.substr(0, 2) == "</" && (tag[2] == 'a' || tag[2] == 'A') &&
         (tag[3] == '>' || tag[3] == ' ');
}

struct Piece {
  std::string data;  // markup, or decoded text
  bool text = false;
  bool open = false;  // text outside any anchor, still eligible
};

std::vector<Piece> split_markup(std::string_view html) {
  std::vector<Piece> pieces;
  int depth = 0;
  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] == '<') {
      std::size_t end = html.find('>', i);
      if (end == std::string_view::npos) end = html.size() - 1;
      std::string_view tag = html.substr(i, end - i + 1);
      if (is_anchor_open(tag) && tag[tag.size() - 2] != '/') ++depth;
      if (is_anchor_close(tag) && depth > 0) --depth;
      pieces.push_back({std::string(tag), false, false});
      i = end + 1;
    } else {
      std::size_t end = html.find('<', i);
      if (end == std::string_view::npos) end = html.size();
      pieces.push_back({decode_entities(html.substr(i, end - i)), true, depth == 0});
      i = end;
    }
  }
  return pieces;
}

std::string_view file_part(std::string_view target) {
  const auto hash = target.find('#');
  return hash == std::string_view::npos ? target : target.substr(0, hash);
}

bool whole_word_at(std::string_view text, std::size_t pos, std::string_view kw) {
  auto word = [](char c) { return is_word_byte(static_cast<unsigned char>(c)); };
  if (pos > 0 && word(text[pos - 1]) && word(kw.front())) return false;
  const std::size_t end = pos + kw.size();
  if (end < text.size() && word(text[end]) && word(kw.back())) return false;
  return true;
}

std::string extract_href(std::string_view replacement) {
  const auto start = replacement.find("href=\"");
  if (start == std::string_view::npos) return {};
  const auto end = replacement.find('"', start + 6);
  if (end == std::string_view::npos) return {};
  return decode_entities(replacement.substr(start + 6, end - start - 6));
}

}  // namespace

bool is_word_byte(unsigned char c) noexcept {
  return c >= 0x80 || c == '_' || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

KeywordBinding make_binding(std::string keyword, std::string target) {
  std::string replacement =
      "<a href=\"" + text::escape_markup(target) + "\">" + text::escape_markup(keyword) + "</a>";
  return {std::move(keyword), std::move(replacement), std::move(target)};
}

std::vector<KeywordBinding> build_keyword_map(const sitegen::SiteManifest& manifest,
                                              const structure::DocTree& tree) {
  if (manifest.targets.size() != structure::count_nodes(tree)) {
    throw DocError(ErrorKind::InvalidTree, "site manifest does not match the document tree");
  }
  std::vector<KeywordBinding> out;
  out.reserve(manifest.targets.size());
  for (const auto& t : manifest.targets) {
    const std::string kw = text::collapse_whitespace(t.title);
    if (kw.empty() || kw.find('@') != std::string::npos) continue;
    out.push_back(make_binding(kw, t.target));
  }
  return out;
}

std::string format_unique_keywords(std::span<const KeywordBinding> bindings) {
  std::string out;
  for (const auto& b : bindings) {
    out += b.line();
    out += '\n';
  }
  return out;
}

std::vector<KeywordBinding> parse_unique_keywords(std::string_view content) {
  std::vector<KeywordBinding> out;
  std::size_t line_no = 0;
  for (auto line : text::split(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto at = line.find('@');
    if (at == std::string::npos || at == 0) {
      throw DocError(ErrorKind::MalformedInput, "keyword line without '@' separator", line_no);
    }
    KeywordBinding b{line.substr(0, at), line.substr(at + 1), {}};
    b.target = extract_href(b.replacement);
    if (b.target.empty() || !text::starts_with(b.replacement, "<a ") ||
        b.replacement.size() < 4 || b.replacement.substr(b.replacement.size() - 4) != "</a>") {
      throw DocError(ErrorKind::MalformedInput, "keyword line has no hyperlink fragment", line_no);
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<KeywordBinding> remove_multi_target(std::span<const KeywordBinding> bindings) {
  std::map<std::string, std::set<std::string>> targets;
  for (const auto& b : bindings) targets[b.keyword].insert(b.target);
  std::vector<KeywordBinding> out;
  std::set<std::string> emitted;
  for (const auto& b : bindings) {
    if (targets[b.keyword].size() != 1) continue;
    if (!emitted.insert(b.keyword).second) continue;
    out.push_back(b);
  }
  return out;
}

std::vector<KeywordBinding> order_longest_first(std::vector<KeywordBinding> bindings) {
  std::stable_sort(bindings.begin(), bindings.end(), [](const KeywordBinding& a, const KeywordBinding& b) {
    return a.keyword.size() > b.keyword.size();
  });
  return bindings;
}

std::vector<KeywordBinding> filter_ambiguous(std::span<const KeywordBinding> bindings) {
  return order_longest_first(remove_multi_target(bindings));
}

std::string link_fragment(std::string_view fragment, std::span<const KeywordBinding> bindings,
                          std::string_view self_file) {
  std::vector<Piece> pieces = split_markup(fragment);
  for (const auto& b : bindings) {
    if (b.keyword.empty() || file_part(b.target) == self_file) continue;
    std::vector<Piece> next;
    next.reserve(pieces.size());
    for (auto& p : pieces) {
      if (!p.open) {
        next.push_back(std::move(p));
        continue;
      }
      std::string_view t = p.data;
      std::size_t from = 0;
      std::size_t pos = t.find(b.keyword);
      while (pos != std::string_view::npos) {
        if (whole_word_at(t, pos, b.keyword)) {
          if (pos > from) next.push_back({std::string(t.substr(from, pos - from)), true, true});
          next.push_back({b.replacement, false, false});
          from = pos + b.keyword.size();
          pos = t.find(b.keyword, from);
        } else {
          pos = t.find(b.keyword, pos + 1);
        }
      }
      if (from == 0) {
        next.push_back(std::move(p));
      } else if (from < t.size()) {
        next.push_back({std::string(t.substr(from)), true, true});
      }
    }
    pieces = std::move(next);
  }
  std::string out;
  out.reserve(fragment.size());
  for (const auto& p : pieces) out += p.text ? text::escape_markup(p.data) : p.data;
  return out;
}

std::vector<sitegen::PageSpec> apply_crossrefs(std::vector<sitegen::PageSpec> pages,
                                               std::span<const KeywordBinding> bindings, Exec exec) {
  const long n = static_cast<long>(pages.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::Parallel)
  for (long i = 0; i < n; ++i) {
    auto& page = pages[static_cast<std::size_t>(i)];
    for (auto& fragment : page.body) fragment = link_fragment(fragment, bindings, page.filename);
  }
  return pages;
}

void apply_crossrefs(sitegen::SiteManifest& manifest, std::span<const KeywordBinding> bindings, Exec exec) {
  std::vector<sitegen::PageSpec> all;
  all.reserve(manifest.pages.size() + 1);
  all.push_back(std::move(manifest.toc_page));
  for (auto& p : manifest.pages) all.push_back(std::move(p));
  all = apply_crossrefs(std::move(all), bindings, exec);
  manifest.toc_page = std::move(all.front());
  for (std::size_t i = 0; i < manifest.pages.size(); ++i) manifest.pages[i] = std::move(all[i + 1]);
}

std::string visible_text(std::string_view html) {
  std::string out;
  for (const auto& p : split_markup(html)) {
    if (p.text) out += p.data;
  }
  return out;
}

bool has_nested_anchors(std::string_view html) {
  int depth = 0;
  for (const auto& p : split_markup(html)) {
    if (p.text) continue;
    if (is_anchor_open(p.data) && p.data[p.data.size() - 2] != '/') {
      if (++depth > 1) return true;
    } else if (is_anchor_close(p.data) && depth > 0) {
      --depth;
    }
  }
  return false;
}

}  // namespace specweb::crossref
