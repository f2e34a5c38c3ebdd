#pragma once

#include "specweb/exec.hpp"
#include "specweb/sitegen.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace specweb::crossref {

struct KeywordBinding {
  std::string keyword;
  std::string replacement;  // `<a href="target">keyword</a>`
  std::string target;       // filename, optionally with #anchor

  std::string line() const { return keyword + "@" + replacement; }
  bool operator==(const KeywordBinding&) const = default;
};

KeywordBinding make_binding(std::string keyword, std::string target);

/// One binding per heading title, in document order. Structural headings
/// point at their page, keyword headings at their in-page anchor. Titles that
/// cannot be written to the keywords file (empty, containing '@' or a line
/// break) are skipped. Throws DocError(InvalidTree) when the manifest was not
/// built from `tree`.
std::vector<KeywordBinding> build_keyword_map(const sitegen::SiteManifest& manifest,
                                              const structure::DocTree& tree);

/// Contents of UniqueKeywords.txt: one `keyword@fragment` line per binding.
std::string format_unique_keywords(std::span<const KeywordBinding> bindings);

/// Inverse of format_unique_keywords. Throws DocError(MalformedInput).
std::vector<KeywordBinding> parse_unique_keywords(std::string_view content);

/// Drops keywords bound to more than one distinct target and duplicate
/// bindings, keeping document order.
std::vector<KeywordBinding> remove_multi_target(std::span<const KeywordBinding> bindings);

/// Stable sort, longest keyword first.
std::vector<KeywordBinding> order_longest_first(std::vector<KeywordBinding> bindings);

/// remove_multi_target followed by order_longest_first.
std::vector<KeywordBinding> filter_ambiguous(std::span<const KeywordBinding> bindings);

/// Links whole-word keyword occurrences in the text of one HTML fragment.
/// Text inside <a> elements, tags and attribute values is left alone, as are
/// bindings whose target file is `self_file`.
std::string link_fragment(std::string_view fragment, std::span<const KeywordBinding> bindings,
                          std::string_view self_file);

/// link_fragment over every body fragment of every page, one page per task.
std::vector<sitegen::PageSpec> apply_crossrefs(std::vector<sitegen::PageSpec> pages,
                                               std::span<const KeywordBinding> bindings,
                                               Exec exec = Exec::Parallel);

/// Rewrites the ToC and structural pages of a manifest (concept pages are
/// link lists already).
void apply_crossrefs(sitegen::SiteManifest& manifest, std::span<const KeywordBinding> bindings,
                     Exec exec = Exec::Parallel);

/// Text with tags removed and entities decoded.
std::string visible_text(std::string_view html);

bool has_nested_anchors(std::string_view html);

/// Word characters for whole-word matching: ASCII letters, digits, '_' and
/// any byte of a multi-byte UTF-8 sequence.
bool is_word_byte(unsigned char c) noexcept;

}  // namespace specweb::crossref
