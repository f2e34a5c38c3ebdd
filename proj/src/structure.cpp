#include "specweb/structure.hpp"

#include "specweb/error.hpp"
#include "specweb/text.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace specweb::structure {

std::string_view kind_name(HeadingKind kind) {
  switch (kind) {
    case HeadingKind::Root: return "Book";
    case HeadingKind::Part: return "Part";
    case HeadingKind::Chapter: return "Chapter";
    case HeadingKind::Section: return "Section";
    case HeadingKind::Subsection: return "Subsection";
    case HeadingKind::Keyword: return "Keyword";
    case HeadingKind::EndPart: return "EndPart";
    case HeadingKind::LastPart: return "LastPart";
  }
  return "?";
}

std::optional<HeadingKind> kind_from_name(std::string_view name) {
  for (int r = 0; r <= 7; ++r) {
    const auto k = static_cast<HeadingKind>(r);
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

bool is_numbered(HeadingKind kind) noexcept {
  return kind == HeadingKind::Part || kind == HeadingKind::Chapter || kind == HeadingKind::Section ||
         kind == HeadingKind::Subsection;
}

std::size_t Table::width() const {
  std::size_t w = 0;
  for (const auto& r : header_rows) w = std::max(w, r.size());
  for (const auto& r : data_rows) w = std::max(w, r.size());
  return w;
}

bool List::operator==(const List& other) const { return items == other.items; }

std::size_t list_depth(const List& list) {
  std::size_t deepest = 0;
  for (const auto& item : list.items) {
    if (item.sublist) deepest = std::max(deepest, list_depth(*item.sublist));
  }
  return deepest + 1;
}

std::size_t count_nodes(const DocTree& tree) {
  std::size_t n = 0;
  for_each_node(tree.root, [&](const DocNode&, std::size_t) { ++n; });
  return n;
}

bool is_deep_subsection(const HeadingEntry& heading) {
  return heading.kind == HeadingKind::Subsection &&
         std::count(heading.number.begin(), heading.number.end(), '.') >= 3;
}

namespace {

std::string file_safe(std::string_view s) {
  std::string out;
  bool dash = false;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (text::is_ascii_alnum(c) || c == '_' || c == '.') {
      if (dash && !out.empty()) out.push_back('-');
      dash = false;
      out.push_back(ch);
    } else {
      dash = true;
    }
  }
  return out;
}

}  // namespace

std::string page_key(const HeadingEntry& heading) {
  switch (heading.kind) {
    case HeadingKind::EndPart: return "end-" + file_safe(heading.title);
    case HeadingKind::LastPart: return "last-" + file_safe(heading.title);
    default: return heading.number;
  }
}

// ---------------------------------------------------------------------------
// classification

std::vector<std::string> HeadingPatternConfig::default_keywords() {
  return {"Description",  "Attributes",       "Associations",        "Constraints",
          "Generalization", "Generalizations", "Notation",            "Semantics",
          "Operations",   "Additional Operations", "Presentation Options", "Style Guidelines",
          "Examples",     "Rationale",        "Changes from previous UML", "Semantic Variation Points",
          "Package",      "Issues"};
}

namespace {

std::regex compile(const std::string& pattern, const char* which) {
  try {
    return std::regex(pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw DocError(ErrorKind::InvalidConfig,
                   std::string("invalid ") + which + " pattern '" + pattern + "': " + e.what());
  }
}

// Splits a trailing "(from A, B)" clause off `text`.
std::vector<std::string> take_references(std::string& text) {
  static const std::regex from_clause(R"(\s*\(\s*from\s+([^()]*)\)\s*$)");
  std::smatch m;
  std::vector<std::string> refs;
  if (!std::regex_search(text, m, from_clause)) return refs;
  for (auto& part : text::split(m[1].str(), ',')) {
    std::string r = text::collapse_whitespace(part);
    if (!r.empty()) refs.push_back(std::move(r));
  }
  text.erase(static_cast<std::size_t>(m.position(0)));
  return refs;
}

std::string_view strip_separators(std::string_view s) {
  s = text::trim(s);
  while (!s.empty()) {
    if (s[0] == '-' || s[0] == ':' || s[0] == '.') {
      s.remove_prefix(1);
    } else if (text::starts_with(s, "\xE2\x80\x93") || text::starts_with(s, "\xE2\x80\x94")) {
      s.remove_prefix(3);  // en/em dash
    } else {
      break;
    }
    s = text::trim(s);
  }
  return s;
}

// First whitespace-delimited token and the remainder.
std::pair<std::string_view, std::string_view> first_token(std::string_view s) {
  s = text::trim(s);
  const auto sp = s.find(' ');
  if (sp == std::string_view::npos) return {s, {}};
  return {s.substr(0, sp), text::trim(s.substr(sp + 1))};
}

}  // namespace

HeadingClassifier::HeadingClassifier(const HeadingPatternConfig& config)
    : config_(config),
      part_(compile(config.part, "part")),
      chapter_(compile(config.chapter, "chapter")),
      section_(compile(config.section, "section")),
      subsection_(compile(config.subsection, "subsection")),
      end_part_(compile(config.end_part, "end-part")),
      last_part_(compile(config.last_part, "last-part")) {}

HeadingEntry HeadingClassifier::classify(const ingest::RawHeadingLine& line,
                                         Diagnostics* diagnostics) const {
  HeadingEntry h;
  h.source_line = line.line_no;
  std::string body = text::collapse_whitespace(line.text);
  h.references = take_references(body);

  if (std::regex_search(body, part_)) {
    h.kind = HeadingKind::Part;
    auto [word, rest] = first_token(body);
    auto [number, title] = first_token(rest);
    h.number = std::string(number);
    h.title = std::string(strip_separators(title));
  } else if (std::regex_search(body, end_part_)) {
    h.kind = HeadingKind::EndPart;
    h.title = body;
  } else if (std::regex_search(body, last_part_)) {
    h.kind = HeadingKind::LastPart;
    h.title = body;
  } else {
    const std::pair<const std::regex*, HeadingKind> numbered[] = {
        {&chapter_, HeadingKind::Chapter},
        {&section_, HeadingKind::Section},
        {&subsection_, HeadingKind::Subsection},
    };
    bool matched = false;
    for (const auto& [re, kind] : numbered) {
      if (!std::regex_search(body, *re)) continue;
      h.kind = kind;
      auto [number, title] = first_token(body);
      while (!number.empty() && number.back() == '.') number.remove_suffix(1);
      h.number = std::string(number);
      h.title = std::string(strip_separators(title));
      matched = true;
      break;
    }
    if (!matched) {
      h.kind = HeadingKind::Keyword;
      h.title = body;
      const auto& vocab = config_.keywords;
      if (diagnostics && std::find(vocab.begin(), vocab.end(), body) == vocab.end()) {
        diagnostics->note(line.line_no, "heading '" + body + "' matches no pattern; classified as Keyword");
      }
    }
  }
  return h;
}

HeadingEntry classify_heading(const ingest::RawHeadingLine& line, const HeadingClassifier& classifier,
                              Diagnostics* diagnostics) {
  return classifier.classify(line, diagnostics);
}

// ---------------------------------------------------------------------------
// blocks

namespace {

class BlockAssembler {
public:
  std::vector<Block> blocks;

  void feed(const ingest::FlatEvent& e) {
    using ingest::EventKind;
    switch (e.kind) {
      case EventKind::ParaStart:
      case EventKind::ParaEnd:
        flush_text();
        break;
      case EventKind::Text:
        if (figure_ && in_caption_) {
          append(figure_->caption, e.text);
        } else if (!figure_ && !table_ && lists_.empty()) {
          append(pending_, e.text);
        }
        break;
      case EventKind::FigureStart:
        flush_text();
        figure_.emplace();
        has_image_ = false;
        break;
      case EventKind::ImageData:
        if (figure_) {
          if (has_image_) {
            // Extra images of one figure become caption-less figures of their own.
            blocks.emplace_back(Figure{std::string(e.attr("src")), ""});
          } else {
            figure_->src = std::string(e.attr("src"));
            has_image_ = true;
          }
        } else {
          flush_text();
          blocks.emplace_back(Figure{std::string(e.attr("src")), ""});
        }
        break;
      case EventKind::CaptionStart: in_caption_ = true; break;
      case EventKind::CaptionEnd: in_caption_ = false; break;
      case EventKind::FigureEnd:
        if (figure_) {
          if (has_image_) blocks.emplace_back(std::move(*figure_));
          figure_.reset();
        }
        in_caption_ = false;
        break;
      case EventKind::TableStart:
        flush_text();
        table_.emplace();
        break;
      case EventKind::TableCaption:
        if (table_) append(table_->caption, e.text);
        break;
      case EventKind::RowStart:
        row_.clear();
        row_all_header_ = true;
        break;
      case EventKind::HeaderCell:
      case EventKind::DataCell:
        row_.push_back(e.text);
        if (e.kind == EventKind::DataCell) row_all_header_ = false;
        break;
      case EventKind::RowEnd:
        if (table_) {
          auto& rows = (row_all_header_ && !row_.empty()) ? table_->header_rows : table_->data_rows;
          rows.push_back(std::move(row_));
        }
        row_.clear();
        break;
      case EventKind::TableEnd:
        if (table_) blocks.emplace_back(std::move(*table_));
        table_.reset();
        break;
      case EventKind::ListStart:
        if (lists_.empty()) flush_text();
        lists_.emplace_back();
        break;
      case EventKind::ItemStart:
        if (!lists_.empty()) lists_.back().open.emplace();
        break;
      case EventKind::ItemLabel:
        if (!lists_.empty()) append(current_item().label, e.text);
        break;
      case EventKind::ItemTitle:
        if (!lists_.empty()) append(current_item().title, e.text);
        break;
      case EventKind::ItemEnd:
        if (!lists_.empty() && lists_.back().open) {
          lists_.back().list.items.push_back(std::move(*lists_.back().open));
          lists_.back().open.reset();
        }
        break;
      case EventKind::ListEnd: close_list(); break;
    }
  }

  void finish() {
    flush_text();
    while (!lists_.empty()) close_list();
    if (table_) blocks.emplace_back(std::move(*table_));
    table_.reset();
    if (figure_ && has_image_) blocks.emplace_back(std::move(*figure_));
    figure_.reset();
  }

private:
  struct ListFrame {
    List list;
    std::optional<ListItem> open;
  };

  static void append(std::string& dst, const std::string& s) {
    if (s.empty()) return;
    if (!dst.empty()) dst.push_back(' ');
    dst += s;
  }

  void flush_text() {
    if (!pending_.empty()) blocks.emplace_back(Paragraph{std::move(pending_)});
    pending_.clear();
  }

  ListItem& current_item() {
    auto& frame = lists_.back();
    if (!frame.open) frame.open.emplace();
    return *frame.open;
  }

  void close_list() {
    if (lists_.empty()) return;
    ListFrame done = std::move(lists_.back());
    lists_.pop_back();
    if (done.open) done.list.items.push_back(std::move(*done.open));
    if (lists_.empty()) {
      blocks.emplace_back(std::move(done.list));
      return;
    }
    // Nested list: attach to the open item, else to the last finished one.
    auto& parent = lists_.back();
    ListItem* host = nullptr;
    if (parent.open) {
      host = &*parent.open;
    } else if (!parent.list.items.empty()) {
      host = &parent.list.items.back();
    } else {
      parent.list.items.emplace_back();
      host = &parent.list.items.back();
    }
    if (host->sublist) {
      for (auto& item : done.list.items) host->sublist->items.push_back(std::move(item));
    } else {
      host->sublist = std::move(done.list);
    }
  }

  std::string pending_;
  std::optional<Figure> figure_;
  bool has_image_ = false;
  bool in_caption_ = false;
  std::optional<Table> table_;
  std::vector<std::string> row_;
  bool row_all_header_ = true;
  std::vector<ListFrame> lists_;
};

// Non-contiguous numbering among numbered siblings, e.g. 7.3 followed by 7.5.
void check_numbering(const DocNode& node, Diagnostics& diagnostics) {
  const HeadingEntry* prev = nullptr;
  for (const auto& child : node.children) {
    const auto& h = child.heading;
    if (h.kind == HeadingKind::Chapter || h.kind == HeadingKind::Section ||
        h.kind == HeadingKind::Subsection) {
      if (prev && prev->kind == h.kind) {
        auto last = [](const std::string& n) -> std::optional<long> {
          const auto dot = n.rfind('.');
          const std::string_view tail = dot == std::string::npos ? std::string_view(n)
                                                                 : std::string_view(n).substr(dot + 1);
          long v = 0;
          auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), v);
          if (ec != std::errc{} || p != tail.data() + tail.size()) return std::nullopt;
          return v;
        };
        const auto dot_a = prev->number.rfind('.');
        const auto dot_b = h.number.rfind('.');
        const bool same_stem = prev->number.substr(0, dot_a == std::string::npos ? 0 : dot_a) ==
                               h.number.substr(0, dot_b == std::string::npos ? 0 : dot_b);
        const auto a = last(prev->number);
        const auto b = last(h.number);
        if (same_stem && a && b && *b != *a + 1) {
          diagnostics.warn(h.source_line, "non-contiguous numbering: " + prev->number + " followed by " +
                                              h.number);
        }
      }
      prev = &h;
    }
    check_numbering(child, diagnostics);
  }
}

}  // namespace

std::vector<Block> assemble_blocks(std::span<const ingest::FlatEvent> events) {
  BlockAssembler assembler;
  for (const auto& e : events) assembler.feed(e);
  assembler.finish();
  return std::move(assembler.blocks);
}

// ---------------------------------------------------------------------------
// the stack algorithm

namespace {

BuildResult run_stack(std::span<const HeadingEntry* const> entries, std::vector<std::vector<Block>>& bodies,
                      std::vector<Block> root_blocks) {
  BuildResult result;
  result.tree.root.blocks = std::move(root_blocks);
  result.trace.reserve(entries.size() * 2);

  // Ancestor chain of the node being filled. Only the top's children vector
  // grows, and none of its elements are on the stack, so the pointers stay valid.
  std::vector<DocNode*> stack{&result.tree.root};
  std::vector<std::size_t> indices{0};

  auto close_top = [&] {
    result.trace.push_back({StackEvent::Op::Close, indices.back()});
    ++result.closed;
    stack.pop_back();
    indices.pop_back();
  };

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const int t = rank(entries[i]->kind);
    while (stack.size() > 1 && t <= rank(stack.back()->heading.kind)) close_top();
    DocNode* parent = stack.back();
    parent->children.push_back(DocNode{*entries[i], std::move(bodies[i]), {}});
    stack.push_back(&parent->children.back());
    indices.push_back(i);
    result.trace.push_back({StackEvent::Op::Open, i});
    ++result.opened;
  }
  while (stack.size() > 1) close_top();
  return result;
}

}  // namespace

BuildResult build_tree(std::span<const QueuedHeading> queue, std::span<const ingest::FlatEvent> events,
                       Diagnostics* diagnostics) {
  std::vector<const HeadingEntry*> entries;
  entries.reserve(queue.size());
  std::vector<std::vector<Block>> bodies(queue.size());

  std::size_t cursor = 0;
  std::vector<Block> root_blocks;
  std::optional<std::size_t> owner;  // last heading whose span was accepted
  auto attach = [&](std::vector<Block>&& blocks) {
    auto& dst = owner ? bodies[*owner] : root_blocks;
    for (auto& b : blocks) dst.push_back(std::move(b));
  };
  for (std::size_t i = 0; i < queue.size(); ++i) {
    entries.push_back(&queue[i].entry);
    const auto& q = queue[i];
    if (q.begin < cursor || q.end < q.begin || q.end >= events.size()) {
      if (diagnostics) {
        diagnostics->error(q.entry.source_line,
                           "heading '" + q.entry.title + "' has no valid position in the event stream");
      }
      continue;
    }
    attach(assemble_blocks(events.subspan(cursor, q.begin - cursor)));
    owner = i;
    cursor = q.end + 1;
  }
  if (cursor < events.size()) attach(assemble_blocks(events.subspan(cursor)));

  auto result = run_stack(entries, bodies, std::move(root_blocks));
  if (diagnostics) check_numbering(result.tree.root, *diagnostics);
  return result;
}

BuildResult build_tree(std::span<const HeadingEntry> queue, Diagnostics* diagnostics) {
  std::vector<const HeadingEntry*> entries;
  entries.reserve(queue.size());
  for (const auto& e : queue) entries.push_back(&e);
  std::vector<std::vector<Block>> bodies(queue.size());
  auto result = run_stack(entries, bodies, {});
  if (diagnostics) check_numbering(result.tree.root, *diagnostics);
  return result;
}

// ---------------------------------------------------------------------------
// validation

std::size_t ValidationReport::count(Violation::Kind kind) const {
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                [&](const Violation& v) { return v.kind == kind; }));
}

std::string ValidationReport::format() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << "line";
    if (v.lines.size() > 1) out << 's';
    out << ' ';
    for (std::size_t i = 0; i < v.lines.size(); ++i) out << (i ? "," : "") << v.lines[i];
    out << ": " << v.message << '\n';
  }
  return out.str();
}

namespace {

bool dotted_number(std::string_view n, std::size_t min_parts) {
  if (n.empty() || n.front() == '.' || n.back() == '.') return false;
  if (n.find("..") != std::string_view::npos) return false;
  return static_cast<std::size_t>(std::count(n.begin(), n.end(), '.')) + 1 >= min_parts;
}

struct Validator {
  ValidationReport report;
  std::map<std::string, std::vector<std::size_t>> numbers;
  std::map<std::string, std::vector<std::size_t>> keys;
  std::vector<std::string> number_order;
  std::vector<std::string> key_order;

  void add(Violation::Kind kind, std::string message, std::vector<std::size_t> lines) {
    report.violations.push_back({kind, std::move(message), std::move(lines)});
  }

  void visit(const DocNode& node, const DocNode& parent) {
    const auto& h = node.heading;
    const auto& p = parent.heading;
    const std::string label = std::string(kind_name(h.kind)) + " '" +
                              (h.number.empty() ? h.title : h.number + " " + h.title) + "'";
    if (rank(h.kind) <= rank(p.kind)) {
      add(Violation::Kind::RankOrder,
          label + " (rank " + std::to_string(rank(h.kind)) + ") is nested under " +
              std::string(kind_name(p.kind)) + " (rank " + std::to_string(rank(p.kind)) + ")",
          {h.source_line});
    }
    if (is_numbered(h.kind)) {
      const bool shape_ok = h.kind == HeadingKind::Section      ? dotted_number(h.number, 2)
                            : h.kind == HeadingKind::Subsection ? dotted_number(h.number, 3)
                                                                : !h.number.empty();
      if (!shape_ok) add(Violation::Kind::NumberShape, label + " has a malformed number", {h.source_line});
    } else if (!h.number.empty()) {
      add(Violation::Kind::NumberShape, label + " must not carry a number", {h.source_line});
    }
    if (!is_numbered(h.kind) && h.title.empty()) {
      add(Violation::Kind::EmptyTitle, std::string(kind_name(h.kind)) + " heading has an empty title",
          {h.source_line});
    }
    if ((h.kind == HeadingKind::Section || h.kind == HeadingKind::Subsection) &&
        (p.kind == HeadingKind::Chapter || p.kind == HeadingKind::Section ||
         p.kind == HeadingKind::Subsection) &&
        !p.number.empty() && !text::starts_with(h.number, p.number + ".")) {
      add(Violation::Kind::NumberPrefix,
          label + " does not extend the number of its parent " + p.number, {h.source_line});
    }
    if (!h.number.empty()) {
      auto& lines = numbers[h.number];
      if (lines.empty()) number_order.push_back(h.number);
      lines.push_back(h.source_line);
    }
    if (h.kind == HeadingKind::EndPart || h.kind == HeadingKind::LastPart) {
      const std::string k = page_key(h);
      auto& lines = keys[k];
      if (lines.empty()) key_order.push_back(k);
      lines.push_back(h.source_line);
    }
    for (const auto& c : node.children) visit(c, node);
  }
};

}  // namespace

ValidationReport validate_tree(const DocTree& tree) {
  Validator v;
  for (const auto& c : tree.root.children) v.visit(c, tree.root);
  for (const auto& n : v.number_order) {
    const auto& lines = v.numbers[n];
    if (lines.size() > 1) {
      v.add(Violation::Kind::DuplicateNumber,
            "number " + n + " appears " + std::to_string(lines.size()) + " times", lines);
    }
  }
  for (const auto& k : v.key_order) {
    const auto& lines = v.keys[k];
    if (lines.size() > 1) {
      v.add(Violation::Kind::DuplicatePageKey, "page name " + k + " is used by several headings", lines);
    }
  }
  return std::move(v.report);
}

}  // namespace specweb::structure
