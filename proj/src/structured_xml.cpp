#include "specweb/structured_xml.hpp"

#include "specweb/error.hpp"
#include "specweb/text.hpp"
#include "specweb/xml.hpp"

#include <array>
#include <charconv>

namespace specweb::structure {

namespace {

constexpr std::array kReserved = {
    std::string_view("Book"),     std::string_view("Part"),      std::string_view("Chapter"),
    std::string_view("Section"),  std::string_view("Subsection"), std::string_view("EndPart"),
    std::string_view("LastPart"), std::string_view("Keyword"),   std::string_view("Name"),
    std::string_view("References"), std::string_view("Reference"), std::string_view("P"),
    std::string_view("Figure"),   std::string_view("ImageData"), std::string_view("Caption"),
    std::string_view("Table"),    std::string_view("TR"),        std::string_view("TH"),
    std::string_view("TD"),       std::string_view("L"),         std::string_view("LI"),
    std::string_view("LI_Label"), std::string_view("LI_Title"),
};

}  // namespace

bool is_reserved_element(std::string_view name) {
  for (auto r : kReserved) {
    if (r == name) return true;
  }
  return false;
}

std::string keyword_element_name(std::string_view title) {
  std::string out;
  bool word_start = true;
  for (char ch : title) {
    const auto c = static_cast<unsigned char>(ch);
    if (!text::is_ascii_alnum(c)) {
      word_start = true;
      continue;
    }
    if (word_start && c >= 'a' && c <= 'z') {
      out.push_back(static_cast<char>(c - 'a' + 'A'));
    } else {
      out.push_back(ch);
    }
    word_start = false;
  }
  if (out.empty()) return "Keyword";
  if (out[0] >= '0' && out[0] <= '9') out.insert(out.begin(), 'K');
  if (is_reserved_element(out)) out += "Keyword";
  return out;
}

// ---------------------------------------------------------------------------
// serialize

namespace {

class Writer {
public:
  std::string out;

  void leaf(std::size_t depth, std::string_view name, std::string_view body) {
    indent(depth);
    out += '<';
    out += name;
    out += '>';
    out += text::escape_markup(body);
    out += "</";
    out += name;
    out += ">\n";
  }

  void open(std::size_t depth, std::string_view name, std::string_view attrs = {}) {
    indent(depth);
    out += '<';
    out += name;
    out += attrs;
    out += ">\n";
  }

  void close(std::size_t depth, std::string_view name) {
    indent(depth);
    out += "</";
    out += name;
    out += ">\n";
  }

  void block(const Block& b, std::size_t depth) {
    std::visit([&](const auto& v) { write(v, depth); }, b);
  }

  void node(const DocNode& n, std::size_t depth) {
    const auto& h = n.heading;
    const std::string name =
        h.kind == HeadingKind::Keyword ? keyword_element_name(h.title) : std::string(kind_name(h.kind));
    std::string attrs;
    if (is_numbered(h.kind)) attrs += " Number=\"" + text::escape_markup(h.number) + "\"";
    if (h.source_line != 0) attrs += " Line=\"" + std::to_string(h.source_line) + "\"";
    open(depth, name, attrs);
    leaf(depth + 1, "Name", h.title);
    if (!h.references.empty()) {
      open(depth + 1, "References");
      for (const auto& r : h.references) leaf(depth + 2, "Reference", r);
      close(depth + 1, "References");
    }
    for (const auto& b : n.blocks) block(b, depth + 1);
    for (const auto& c : n.children) node(c, depth + 1);
    close(depth, name);
  }

private:
  void indent(std::size_t depth) { out.append(depth * 2, ' '); }

  void caption(std::string_view text, std::size_t depth) {
    if (text.empty()) return;
    indent(depth);
    out += "<Caption><P>";
    out += text::escape_markup(text);
    out += "</P></Caption>\n";
  }

  void write(const Paragraph& p, std::size_t depth) { leaf(depth, "P", p.text); }

  void write(const Figure& f, std::size_t depth) {
    open(depth, "Figure");
    indent(depth + 1);
    out += "<ImageData src=\"" + text::escape_markup(f.src) + "\"/>\n";
    caption(f.caption, depth + 1);
    close(depth, "Figure");
  }

  void row(const std::vector<std::string>& cells, std::string_view cell, std::size_t depth) {
    indent(depth);
    out += "<TR>";
    for (const auto& c : cells) {
      out += '<';
      out += cell;
      out += '>';
      out += text::escape_markup(c);
      out += "</";
      out += cell;
      out += '>';
    }
    out += "</TR>\n";
  }

  void write(const Table& t, std::size_t depth) {
    open(depth, "Table");
    caption(t.caption, depth + 1);
    for (const auto& r : t.header_rows) row(r, "TH", depth + 1);
    for (const auto& r : t.data_rows) row(r, "TD", depth + 1);
    close(depth, "Table");
  }

  void write(const List& l, std::size_t depth) {
    open(depth, "L");
    for (const auto& item : l.items) {
      open(depth + 1, "LI");
      leaf(depth + 2, "LI_Label", item.label);
      leaf(depth + 2, "LI_Title", item.title);
      if (item.sublist) write(*item.sublist, depth + 2);
      close(depth + 1, "LI");
    }
    close(depth, "L");
  }
};

}  // namespace

std::string serialize_structured_xml(const DocTree& tree) {
  const auto report = validate_tree(tree);
  if (!report.ok()) {
    const auto& first = report.violations.front();
    throw DocError(ErrorKind::InvalidTree,
                   std::to_string(report.violations.size()) + " violation(s); first: " + first.message,
                   first.lines.empty() ? 0 : first.lines.front());
  }
  Writer w;
  w.out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (tree.root.children.empty() && tree.root.blocks.empty()) {
    w.out += "<Book/>\n";
    return std::move(w.out);
  }
  w.open(0, "Book");
  for (const auto& b : tree.root.blocks) w.block(b, 1);
  for (const auto& c : tree.root.children) w.node(c, 1);
  w.close(0, "Book");
  return std::move(w.out);
}

// ---------------------------------------------------------------------------
// parse

namespace {

[[noreturn]] void violation(const xml::Node& n, const std::string& why) {
  throw DocError(ErrorKind::SchemaViolation, "<" + n.name + ">: " + why, n.line);
}

void reject_text(const xml::Node& n) {
  for (const auto& c : n.children) {
    if (c.is_text() && !text::trim(c.text).empty()) violation(n, "unexpected character data");
  }
}

std::string leaf_text(const xml::Node& n) {
  if (n.has_element_children()) violation(n, "expected text only");
  return n.text_content();
}

std::string caption_text(const xml::Node& n) {
  reject_text(n);
  std::string out;
  for (const auto& c : n.children) {
    if (!c.is_element()) continue;
    if (c.name != "P") violation(c, "only <P> is allowed inside <Caption>");
    if (!out.empty()) out += ' ';
    out += leaf_text(c);
  }
  return out;
}

Figure parse_figure(const xml::Node& n) {
  reject_text(n);
  Figure f;
  bool has_image = false;
  for (const auto& c : n.children) {
    if (!c.is_element()) continue;
    if (c.name == "ImageData") {
      const std::string* src = c.attr("src");
      if (!src || src->empty()) violation(c, "missing src attribute");
      if (has_image) violation(c, "a figure holds one image");
      f.src = *src;
      has_image = true;
    } else if (c.name == "Caption") {
      f.caption = caption_text(c);
    } else {
      violation(c, "not allowed inside <Figure>");
    }
  }
  if (!has_image) violation(n, "figure without <ImageData>");
  return f;
}

Table parse_table(const xml::Node& n) {
  reject_text(n);
  Table t;
  for (const auto& c : n.children) {
    if (!c.is_element()) continue;
    if (c.name == "Caption") {
      t.caption = caption_text(c);
      continue;
    }
    if (c.name != "TR") violation(c, "not allowed inside <Table>");
    reject_text(c);
    std::vector<std::string> cells;
    bool all_header = true;
    for (const auto& cell : c.children) {
      if (!cell.is_element()) continue;
      if (cell.name != "TH" && cell.name != "TD") violation(cell, "not allowed inside <TR>");
      if (cell.name == "TD") all_header = false;
      cells.push_back(leaf_text(cell));
    }
    auto& rows = (all_header && !cells.empty()) ? t.header_rows : t.data_rows;
    rows.push_back(std::move(cells));
  }
  return t;
}

List parse_list(const xml::Node& n) {
  reject_text(n);
  List l;
  for (const auto& c : n.children) {
    if (!c.is_element()) continue;
    if (c.name != "LI") violation(c, "not allowed inside <L>");
    reject_text(c);
    ListItem item;
    for (const auto& part : c.children) {
      if (!part.is_element()) continue;
      if (part.name == "LI_Label") {
        item.label = leaf_text(part);
      } else if (part.name == "LI_Title") {
        item.title = leaf_text(part);
      } else if (part.name == "L") {
        if (item.sublist) violation(part, "an item holds one nested list");
        item.sublist = parse_list(part);
      } else {
        violation(part, "not allowed inside <LI>");
      }
    }
    l.items.push_back(std::move(item));
  }
  return l;
}

std::optional<Block> parse_block(const xml::Node& n) {
  if (n.name == "P") return Paragraph{leaf_text(n)};
  if (n.name == "Figure") return parse_figure(n);
  if (n.name == "Table") return parse_table(n);
  if (n.name == "L") return parse_list(n);
  return std::nullopt;
}

const xml::Node* first_element(const xml::Node& n) {
  for (const auto& c : n.children) {
    if (c.is_element()) return &c;
  }
  return nullptr;
}

std::optional<HeadingKind> heading_kind(const xml::Node& n) {
  if (auto k = kind_from_name(n.name)) {
    if (*k != HeadingKind::Root && *k != HeadingKind::Keyword) return k;
    return std::nullopt;
  }
  if (is_reserved_element(n.name)) return std::nullopt;
  const xml::Node* first = first_element(n);
  if (first && first->name == "Name") return HeadingKind::Keyword;
  return std::nullopt;
}

void parse_body(const xml::Node& n, DocNode& into, bool is_heading);

DocNode parse_heading(const xml::Node& n, HeadingKind kind) {
  DocNode node;
  node.heading.kind = kind;
  if (const std::string* num = n.attr("Number")) {
    if (!is_numbered(kind)) violation(n, "Number attribute on an unnumbered heading");
    node.heading.number = *num;
  } else if (is_numbered(kind)) {
    violation(n, "missing Number attribute");
  }
  if (const std::string* line = n.attr("Line")) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(line->data(), line->data() + line->size(), v);
    if (ec != std::errc{} || p != line->data() + line->size()) violation(n, "Line must be an integer");
    node.heading.source_line = v;
  }
  parse_body(n, node, true);
  return node;
}

void parse_body(const xml::Node& n, DocNode& into, bool is_heading) {
  reject_text(n);
  bool seen_name = false;
  for (const auto& c : n.children) {
    if (!c.is_element()) continue;
    if (is_heading && c.name == "Name") {
      if (seen_name) violation(c, "duplicate <Name>");
      into.heading.title = leaf_text(c);
      seen_name = true;
    } else if (is_heading && c.name == "References") {
      reject_text(c);
      for (const auto& r : c.children) {
        if (!r.is_element()) continue;
        if (r.name != "Reference") violation(r, "not allowed inside <References>");
        into.heading.references.push_back(leaf_text(r));
      }
    } else if (auto block = parse_block(c)) {
      into.blocks.push_back(std::move(*block));
    } else if (auto kind = heading_kind(c)) {
      into.children.push_back(parse_heading(c, *kind));
    } else {
      violation(c, "unknown element");
    }
  }
  if (is_heading && !seen_name) violation(n, "heading without <Name>");
}

}  // namespace

DocTree parse_structured_xml(std::string_view bytes) {
  xml::Node root;
  try {
    root = xml::parse_document(bytes);
  } catch (const DocError& e) {
    if (e.kind() == ErrorKind::InvalidEncoding) throw;
    throw DocError(ErrorKind::SchemaViolation, e.detail(), e.line());
  }
  if (root.name != "Book") violation(root, "document element must be <Book>");
  DocTree tree;
  parse_body(root, tree.root, false);
  return tree;
}

}  // namespace specweb::structure
