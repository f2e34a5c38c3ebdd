#pragma once

#include "specweb/diagnostics.hpp"
#include "specweb/xml.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

/// Reading the flat, presentation-oriented tag stream: sanitizing stray
/// markup characters, turning the stream into events and pulling out the
/// ordered queue of heading paragraphs.
namespace specweb::ingest {

enum class EventKind {
  ParaStart,
  ParaEnd,
  Text,
  FigureStart,
  ImageData,
  CaptionStart,
  CaptionEnd,
  TableStart,
  TableCaption,
  RowStart,
  HeaderCell,
  DataCell,
  RowEnd,
  TableEnd,
  ListStart,
  ItemStart,
  ItemLabel,
  ItemTitle,
  ItemEnd,
  ListEnd,
  FigureEnd,
};

std::string_view event_kind_name(EventKind kind);

using Attributes = xml::Attributes;

/// One markup token of the flat stream. `text` holds the payload of Text,
/// TableCaption, HeaderCell, DataCell, ItemLabel and ItemTitle events;
/// `name` is the source element name of ParaStart/ParaEnd (unknown elements
/// degrade to paragraphs under their own name).
struct FlatEvent {
  EventKind kind = EventKind::Text;
  std::string text;
  std::string name;
  Attributes attrs;
  std::size_t line = 0;

  std::string_view attr(std::string_view key) const;

  /// Compares everything except the source line.
  friend bool operator==(const FlatEvent& a, const FlatEvent& b) {
    return a.kind == b.kind && a.text == b.text && a.name == b.name && a.attrs == b.attrs;
  }
};

/// Escapes `<`, `>` and `&` that do not belong to markup so the stream
/// parses as well-formed XML. A `<` is markup when it starts a comment,
/// CDATA section, processing instruction, DOCTYPE, or a syntactically
/// complete start/end/empty tag. Throws DocError(UnrecoverableMarkup) when
/// the tags themselves do not balance and DocError(InvalidEncoding) on
/// non-UTF-8 input.
std::string sanitize_stream(std::string_view raw);

/// Turns sanitized flat XML into events in document order. Throws
/// DocError(MalformedInput) with the source line on unbalanced markup.
std::vector<FlatEvent> parse_flat_stream(std::string_view clean);

/// Inverse of parse_flat_stream on its image.
std::string serialize_flat_stream(std::span<const FlatEvent> events);

struct RawHeadingLine {
  std::size_t line_no = 0;
  std::string id;
  std::string text;
  std::size_t begin = 0;  // index of the ParaStart event
  std::size_t end = 0;    // index of the matching ParaEnd event
};

inline constexpr std::string_view kDefaultMarker = "LinkTarget";

/// Paragraphs whose `id` attribute contains `marker`, in document order.
/// Empty headings are skipped and multi-line candidates are flagged in
/// `diagnostics`.
std::vector<RawHeadingLine> collect_heading_queue(std::span<const FlatEvent> events,
                                                  std::string_view marker = kDefaultMarker,
                                                  Diagnostics* diagnostics = nullptr);

}  // namespace specweb::ingest
