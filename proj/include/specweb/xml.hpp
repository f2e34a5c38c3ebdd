#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace specweb::xml {

using Attributes = std::vector<std::pair<std::string, std::string>>;

/// Minimal DOM node. Element nodes carry a name, attributes and children;
/// text nodes carry decoded character data.
struct Node {
  enum class Kind { Element, Text };

  Kind kind = Kind::Element;
  std::string name;
  Attributes attrs;
  std::vector<Node> children;
  std::string text;
  std::size_t line = 0;

  bool is_element() const noexcept { return kind == Kind::Element; }
  bool is_text() const noexcept { return kind == Kind::Text; }
  const std::string* attr(std::string_view key) const;
  /// Concatenated character data of all descendant text nodes.
  std::string text_content() const;
  /// True if the node has at least one element child.
  bool has_element_children() const;
};

/// Parses a sequence of top-level nodes (an XML fragment). Comments, the XML
/// declaration, processing instructions and DOCTYPE are skipped; adjacent
/// character data is merged. Throws DocError(MalformedInput) with the line of
/// the first violation.
std::vector<Node> parse_fragment(std::string_view input);

/// Parses a document with exactly one root element.
Node parse_document(std::string_view input);

/// True if `c` may start an XML name (ASCII subset plus any non-ASCII byte).
bool is_name_start(unsigned char c);
bool is_name_char(unsigned char c);

}  // namespace specweb::xml
