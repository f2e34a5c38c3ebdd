#pragma once

#include "specweb/structure.hpp"

#include <string>
#include <string_view>

namespace specweb::structure {

/// Element name used for a keyword heading: the title's ASCII words in
/// CamelCase ("Presentation Options" -> "PresentationOptions"), suffixed
/// with "Keyword" when it would collide with a reserved element.
std::string keyword_element_name(std::string_view title);

bool is_reserved_element(std::string_view name);

/// Serializes the tree as the structured XML document (`<Book>` root).
/// Throws DocError(InvalidTree) if validate_tree reports violations.
std::string serialize_structured_xml(const DocTree& tree);

/// Exact inverse of serialize_structured_xml on its image. Throws
/// DocError(SchemaViolation) naming the element and line.
DocTree parse_structured_xml(std::string_view bytes);

}  // namespace specweb::structure
