#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace specweb::text {

/// Offset of the first byte that breaks UTF-8 well-formedness, if any.
std::optional<std::size_t> find_invalid_utf8(std::string_view s);

/// 1-based line number of `offset` within `s`.
std::size_t line_at(std::string_view s, std::size_t offset);

std::string_view trim(std::string_view s);

/// Trims and collapses every run of ASCII whitespace to a single space.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool starts_with(std::string_view s, std::string_view prefix);
bool is_ascii_alnum(unsigned char c);

/// Lowercase ASCII slug: alphanumerics kept, every other run becomes '-'.
std::string slugify(std::string_view s);

/// Escapes &, <, > and " for use in XML/HTML text and attribute values.
std::string escape_markup(std::string_view s);

}  // namespace specweb::text
