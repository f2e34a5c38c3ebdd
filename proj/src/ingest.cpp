#include "specweb/ingest.hpp"

#include "specweb/error.hpp"
#include "specweb/text.hpp"

#include <optional>

namespace specweb::ingest {

std::string_view event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::ParaStart: return "ParaStart";
    case EventKind::ParaEnd: return "ParaEnd";
    case EventKind::Text: return "Text";
    case EventKind::FigureStart: return "FigureStart";
    case EventKind::ImageData: return "ImageData";
    case EventKind::CaptionStart: return "CaptionStart";
    case EventKind::CaptionEnd: return "CaptionEnd";
    case EventKind::TableStart: return "TableStart";
    case EventKind::TableCaption: return "TableCaption";
    case EventKind::RowStart: return "RowStart";
    case EventKind::HeaderCell: return "HeaderCell";
    case EventKind::DataCell: return "DataCell";
    case EventKind::RowEnd: return "RowEnd";
    case EventKind::TableEnd: return "TableEnd";
    case EventKind::ListStart: return "ListStart";
    case EventKind::ItemStart: return "ItemStart";
    case EventKind::ItemLabel: return "ItemLabel";
    case EventKind::ItemTitle: return "ItemTitle";
    case EventKind::ItemEnd: return "ItemEnd";
    case EventKind::ListEnd: return "ListEnd";
    case EventKind::FigureEnd: return "FigureEnd";
  }
  return "?";
}

std::string_view FlatEvent::attr(std::string_view key) const {
  for (const auto& [k, v] : attrs) {
    if (k == key) return v;
  }
  return {};
}

// ---------------------------------------------------------------------------
// sanitize

namespace {

struct TagShape {
  enum class Kind { Open, Close, Empty } kind;
  std::string name;
  std::size_t length;
};

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Descendant character data, element boundaries treated as word breaks.
void gather_text(const xml::Node& n, std::string& out) {
  if (n.is_text()) {
    out += n.text;
    return;
  }
  out += ' ';
  for (const auto& c : n.children) gather_text(c, out);
  out += ' ';
}

std::string spaced_text(const xml::Node& n) {
  std::string raw;
  gather_text(n, raw);
  return raw;
}

// Recognizes a complete tag at `pos` (which holds '<').
std::optional<TagShape> match_tag(std::string_view s, std::size_t pos) {
  std::size_t i = pos + 1;
  const bool closing = i < s.size() && s[i] == '/';
  if (closing) ++i;
  if (i >= s.size() || !xml::is_name_start(static_cast<unsigned char>(s[i]))) return std::nullopt;
  const std::size_t name_begin = i;
  while (i < s.size() && xml::is_name_char(static_cast<unsigned char>(s[i]))) ++i;
  std::string name(s.substr(name_begin, i - name_begin));
  if (closing) {
    while (i < s.size() && is_ws(s[i])) ++i;
    if (i < s.size() && s[i] == '>') return TagShape{TagShape::Kind::Close, std::move(name), i + 1 - pos};
    return std::nullopt;
  }
  while (true) {
    const std::size_t before = i;
    while (i < s.size() && is_ws(s[i])) ++i;
    if (i >= s.size()) return std::nullopt;
    if (s[i] == '>') return TagShape{TagShape::Kind::Open, std::move(name), i + 1 - pos};
    if (s[i] == '/') {
      if (i + 1 < s.size() && s[i + 1] == '>') {
        return TagShape{TagShape::Kind::Empty, std::move(name), i + 2 - pos};
      }
      return std::nullopt;
    }
    if (i == before) return std::nullopt;  // attribute not separated by whitespace
    if (!xml::is_name_start(static_cast<unsigned char>(s[i]))) return std::nullopt;
    while (i < s.size() && xml::is_name_char(static_cast<unsigned char>(s[i]))) ++i;
    while (i < s.size() && is_ws(s[i])) ++i;
    if (i >= s.size() || s[i] != '=') return std::nullopt;
    ++i;
    while (i < s.size() && is_ws(s[i])) ++i;
    if (i >= s.size() || (s[i] != '"' && s[i] != '\'')) return std::nullopt;
    const char q = s[i++];
    while (i < s.size() && s[i] != q) {
      if (s[i] == '<') return std::nullopt;
      ++i;
    }
    if (i >= s.size()) return std::nullopt;
    ++i;
  }
}

bool is_entity_at(std::string_view s, std::size_t pos) {
  const std::size_t semi = s.find(';', pos);
  if (semi == std::string_view::npos || semi == pos + 1 || semi - pos > 10) return false;
  const std::string_view body = s.substr(pos + 1, semi - pos - 1);
  if (body == "amp" || body == "lt" || body == "gt" || body == "quot" || body == "apos") return true;
  if (body[0] != '#' || body.size() < 2) return false;
  const bool hex = body[1] == 'x';
  const std::string_view digits = body.substr(hex ? 2 : 1);
  if (digits.empty()) return false;
  for (char c : digits) {
    const bool ok = (c >= '0' && c <= '9') ||
                    (hex && ((c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F')));
    if (!ok) return false;
  }
  return true;
}

// Length of a special construct (<!-- -->, <![CDATA[ ]]>, <? ?>, <!DOCTYPE >)
// starting at pos, or 0 if none is complete there.
std::size_t match_special(std::string_view s, std::size_t pos) {
  const std::string_view rest = s.substr(pos);
  auto span_to = [&](std::size_t open_len, std::string_view close) -> std::size_t {
    const auto end = s.find(close, pos + open_len);
    return end == std::string_view::npos ? 0 : end + close.size() - pos;
  };
  if (text::starts_with(rest, "<!--")) return span_to(4, "-->");
  if (text::starts_with(rest, "<![CDATA[")) return span_to(9, "]]>");
  if (text::starts_with(rest, "<?")) return span_to(2, "?>");
  if (text::starts_with(rest, "<!DOCTYPE")) return span_to(9, ">");
  return 0;
}

}  // namespace

std::string sanitize_stream(std::string_view raw) {
  if (auto bad = text::find_invalid_utf8(raw)) {
    throw DocError(ErrorKind::InvalidEncoding, "input is not valid UTF-8", text::line_at(raw, *bad));
  }
  struct Open {
    std::string name;
    std::size_t line;
  };
  std::vector<Open> stack;
  std::string out;
  out.reserve(raw.size() + raw.size() / 16);
  std::size_t line = 1;
  std::size_t i = 0;
  auto copy = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (raw[i + k] == '\n') ++line;
    }
    out.append(raw.substr(i, n));
    i += n;
  };
  while (i < raw.size()) {
    const char c = raw[i];
    if (c == '<') {
      if (std::size_t n = match_special(raw, i)) {
        copy(n);
        continue;
      }
      if (auto tag = match_tag(raw, i)) {
        switch (tag->kind) {
          case TagShape::Kind::Open:
            stack.push_back({tag->name, line});
            break;
          case TagShape::Kind::Close:
            if (stack.empty()) {
              throw DocError(ErrorKind::UnrecoverableMarkup,
                             "end tag </" + tag->name + "> has no matching start tag", line);
            }
            if (stack.back().name != tag->name) {
              throw DocError(ErrorKind::UnrecoverableMarkup,
                             "end tag </" + tag->name + "> closes <" + stack.back().name +
                                 "> opened at line " + std::to_string(stack.back().line),
                             line);
            }
            stack.pop_back();
            break;
          case TagShape::Kind::Empty:
            break;
        }
        copy(tag->length);
        continue;
      }
      out += "&lt;";
      ++i;
    } else if (c == '>') {
      out += "&gt;";
      ++i;
    } else if (c == '&') {
      if (is_entity_at(raw, i)) {
        copy(1);
      } else {
        out += "&amp;";
        ++i;
      }
    } else {
      copy(1);
    }
  }
  if (!stack.empty()) {
    throw DocError(ErrorKind::UnrecoverableMarkup,
                   "element <" + stack.back().name + "> is never closed", stack.back().line);
  }
  return out;
}

// ---------------------------------------------------------------------------
// parse

namespace {

class EventBuilder {
public:
  std::vector<FlatEvent> events;

  void normal(const xml::Node& n) {
    if (n.is_text()) {
      text_event(EventKind::Text, n.text, n.line);
      return;
    }
    if (n.name == "Figure") {
      emit(EventKind::FigureStart, n);
      for (const auto& c : n.children) figure_child(c);
      emit_end(EventKind::FigureEnd, n);
    } else if (n.name == "ImageData") {
      image(n);
    } else if (n.name == "Table") {
      emit(EventKind::TableStart, n);
      for (const auto& c : n.children) table_child(c);
      emit_end(EventKind::TableEnd, n);
    } else if (n.name == "L") {
      list(n);
    } else {
      FlatEvent start = make(EventKind::ParaStart, n);
      start.name = n.name;
      events.push_back(std::move(start));
      for (const auto& c : n.children) normal(c);
      FlatEvent end;
      end.kind = EventKind::ParaEnd;
      end.name = n.name;
      end.line = n.line;
      events.push_back(std::move(end));
    }
  }

private:
  static FlatEvent make(EventKind kind, const xml::Node& n) {
    FlatEvent e;
    e.kind = kind;
    e.attrs = n.attrs;
    e.line = n.line;
    return e;
  }
  void emit(EventKind kind, const xml::Node& n) { events.push_back(make(kind, n)); }
  void emit_end(EventKind kind, const xml::Node& n) {
    FlatEvent e;
    e.kind = kind;
    e.line = n.line;
    events.push_back(std::move(e));
  }
  void text_event(EventKind kind, std::string_view raw, std::size_t line, bool keep_empty = false) {
    std::string t = text::collapse_whitespace(raw);
    if (t.empty() && !keep_empty) return;
    FlatEvent e;
    e.kind = kind;
    e.text = std::move(t);
    e.line = line;
    events.push_back(std::move(e));
  }

  void image(const xml::Node& n) {
    const std::string* src = n.attr("src");
    if (!src || text::trim(*src).empty()) {
      throw DocError(ErrorKind::MalformedInput, "<ImageData> without a src attribute", n.line);
    }
    emit(EventKind::ImageData, n);
  }

  void caption_text(const xml::Node& n) {
    if (n.is_text()) {
      text_event(EventKind::Text, n.text, n.line);
      return;
    }
    for (const auto& c : n.children) caption_text(c);
  }

  void figure_child(const xml::Node& n) {
    if (n.is_element() && n.name == "Caption") {
      emit(EventKind::CaptionStart, n);
      for (const auto& c : n.children) caption_text(c);
      emit_end(EventKind::CaptionEnd, n);
    } else {
      normal(n);
    }
  }

  void row_child(const xml::Node& n) {
    if (n.is_text()) return;
    if (n.name == "TH") {
      text_event(EventKind::HeaderCell, spaced_text(n), n.line, true);
    } else if (n.name == "TD") {
      text_event(EventKind::DataCell, spaced_text(n), n.line, true);
    } else {
      for (const auto& c : n.children) row_child(c);
    }
  }

  void table_child(const xml::Node& n) {
    if (n.is_text()) return;
    if (n.name == "Caption") {
      text_event(EventKind::TableCaption, spaced_text(n), n.line, true);
    } else if (n.name == "TR") {
      emit_end(EventKind::RowStart, n);
      for (const auto& c : n.children) row_child(c);
      emit_end(EventKind::RowEnd, n);
    } else if (n.name == "TH" || n.name == "TD") {
      emit_end(EventKind::RowStart, n);
      row_child(n);
      emit_end(EventKind::RowEnd, n);
    } else {
      for (const auto& c : n.children) table_child(c);
    }
  }

  void list(const xml::Node& n) {
    emit(EventKind::ListStart, n);
    for (const auto& c : n.children) list_child(c);
    emit_end(EventKind::ListEnd, n);
  }

  void list_child(const xml::Node& n) {
    if (n.is_text()) return;
    if (n.name == "LI") {
      emit_end(EventKind::ItemStart, n);
      for (const auto& c : n.children) item_child(c);
      emit_end(EventKind::ItemEnd, n);
    } else if (n.name == "L") {
      list(n);
    } else {
      for (const auto& c : n.children) list_child(c);
    }
  }

  void item_child(const xml::Node& n) {
    if (n.is_text()) {
      text_event(EventKind::ItemTitle, n.text, n.line);
    } else if (n.name == "LI_Label") {
      text_event(EventKind::ItemLabel, spaced_text(n), n.line, true);
    } else if (n.name == "LI_Title") {
      text_event(EventKind::ItemTitle, spaced_text(n), n.line, true);
    } else if (n.name == "L") {
      list(n);
    } else {
      for (const auto& c : n.children) item_child(c);
    }
  }
};

}  // namespace

std::vector<FlatEvent> parse_flat_stream(std::string_view clean) {
  const auto nodes = xml::parse_fragment(clean);
  EventBuilder builder;
  for (const auto& n : nodes) builder.normal(n);
  return std::move(builder.events);
}

namespace {

void write_attrs(std::string& out, const Attributes& attrs) {
  for (const auto& [k, v] : attrs) {
    out += ' ';
    out += k;
    out += "=\"";
    out += text::escape_markup(v);
    out += '"';
  }
}

void write_element(std::string& out, std::string_view name, std::string_view body) {
  out += '<';
  out += name;
  out += '>';
  out += text::escape_markup(body);
  out += "</";
  out += name;
  out += ">\n";
}

}  // namespace

std::string serialize_flat_stream(std::span<const FlatEvent> events) {
  std::string out;
  bool in_caption = false;
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::ParaStart:
        out += '<' + e.name;
        write_attrs(out, e.attrs);
        out += ">\n";
        break;
      case EventKind::ParaEnd: out += "</" + e.name + ">\n"; break;
      case EventKind::Text:
        if (in_caption) {
          write_element(out, "P", e.text);
        } else {
          out += text::escape_markup(e.text);
          out += '\n';
        }
        break;
      case EventKind::FigureStart:
        out += "<Figure";
        write_attrs(out, e.attrs);
        out += ">\n";
        break;
      case EventKind::ImageData:
        out += "<ImageData";
        write_attrs(out, e.attrs);
        out += "/>\n";
        break;
      case EventKind::CaptionStart:
        out += "<Caption";
        write_attrs(out, e.attrs);
        out += ">\n";
        in_caption = true;
        break;
      case EventKind::CaptionEnd:
        out += "</Caption>\n";
        in_caption = false;
        break;
      case EventKind::FigureEnd: out += "</Figure>\n"; break;
      case EventKind::TableStart:
        out += "<Table";
        write_attrs(out, e.attrs);
        out += ">\n";
        break;
      case EventKind::TableCaption: write_element(out, "Caption", e.text); break;
      case EventKind::RowStart: out += "<TR>\n"; break;
      case EventKind::HeaderCell: write_element(out, "TH", e.text); break;
      case EventKind::DataCell: write_element(out, "TD", e.text); break;
      case EventKind::RowEnd: out += "</TR>\n"; break;
      case EventKind::TableEnd: out += "</Table>\n"; break;
      case EventKind::ListStart:
        out += "<L";
        write_attrs(out, e.attrs);
        out += ">\n";
        break;
      case EventKind::ItemStart: out += "<LI>\n"; break;
      case EventKind::ItemLabel: write_element(out, "LI_Label", e.text); break;
      case EventKind::ItemTitle: write_element(out, "LI_Title", e.text); break;
      case EventKind::ItemEnd: out += "</LI>\n"; break;
      case EventKind::ListEnd: out += "</L>\n"; break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// heading queue

std::vector<RawHeadingLine> collect_heading_queue(std::span<const FlatEvent> events,
                                                  std::string_view marker,
                                                  Diagnostics* diagnostics) {
  std::vector<RawHeadingLine> queue;
  if (marker.empty()) return queue;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (e.kind != EventKind::ParaStart) continue;
    const std::string_view id = e.attr("id");
    if (id.find(marker) == std::string_view::npos) continue;

    std::size_t depth = 0;
    std::size_t j = i;
    std::size_t pieces = 0;
    bool nested = false;
    std::string joined;
    for (; j < events.size(); ++j) {
      const auto& f = events[j];
      if (f.kind == EventKind::ParaStart) {
        if (depth > 0) nested = true;
        ++depth;
      } else if (f.kind == EventKind::ParaEnd) {
        if (--depth == 0) break;
      } else if (f.kind == EventKind::Text) {
        if (!joined.empty()) joined += ' ';
        joined += f.text;
        ++pieces;
      } else {
        nested = true;
      }
    }
    if (j >= events.size()) j = events.size() - 1;

    RawHeadingLine h;
    h.line_no = e.line;
    h.id = std::string(id);
    h.text = text::collapse_whitespace(joined);
    h.begin = i;
    h.end = j;
    if (h.text.empty()) {
      if (diagnostics) diagnostics->warn(e.line, "heading paragraph '" + h.id + "' has no text; skipped");
      continue;
    }
    if (diagnostics && (nested || pieces > 1)) {
      diagnostics->warn(e.line, "heading '" + h.text + "' spans several text runs (multi-line candidate)");
    }
    queue.push_back(std::move(h));
    // Content nested inside the heading paragraph belongs to the heading.
    i = j;
  }
  return queue;
}

}  // namespace specweb::ingest
