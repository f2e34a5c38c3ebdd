#pragma once

#include "specweb/diagnostics.hpp"
#include "specweb/ingest.hpp"

#include <cstddef>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace specweb::structure {

/// Heading type ranks. The integer value is the rank that drives the
/// stack pop rule; Root (0) is the synthetic document node.
enum class HeadingKind : int {
  Root = 0,
  Part = 1,
  Chapter = 2,
  Section = 3,
  Subsection = 4,
  Keyword = 5,
  EndPart = 6,
  LastPart = 7,
};

constexpr int rank(HeadingKind kind) noexcept { return static_cast<int>(kind); }
std::string_view kind_name(HeadingKind kind);
std::optional<HeadingKind> kind_from_name(std::string_view name);
bool is_numbered(HeadingKind kind) noexcept;

struct HeadingEntry {
  HeadingKind kind = HeadingKind::Keyword;
  std::string number;
  std::string title;
  std::vector<std::string> references;
  std::size_t source_line = 0;

  bool operator==(const HeadingEntry&) const = default;
};

// ---------------------------------------------------------------------------
// blocks

struct Paragraph {
  std::string text;
  bool operator==(const Paragraph&) const = default;
};

struct Figure {
  std::string src;
  std::string caption;
  bool operator==(const Figure&) const = default;
};

/// Rows may be ragged; the rendered width is the widest row.
struct Table {
  std::string caption;
  std::vector<std::vector<std::string>> header_rows;
  std::vector<std::vector<std::string>> data_rows;

  std::size_t width() const;
  bool operator==(const Table&) const = default;
};

struct ListItem;

struct List {
  std::vector<ListItem> items;
  bool operator==(const List& other) const;
};

struct ListItem {
  std::string label;
  std::string title;
  std::optional<List> sublist;
  bool operator==(const ListItem&) const = default;
};

std::size_t list_depth(const List& list);

using Block = std::variant<Paragraph, Figure, Table, List>;

// ---------------------------------------------------------------------------
// tree

struct DocNode {
  HeadingEntry heading;
  std::vector<Block> blocks;
  std::vector<DocNode> children;

  bool operator==(const DocNode&) const = default;
};

struct DocTree {
  DocNode root{HeadingEntry{HeadingKind::Root, "", "", {}, 0}, {}, {}};

  bool operator==(const DocTree&) const = default;
};

/// Pre-order visit of every heading node (root excluded).
template <typename Fn>
void for_each_node(const DocNode& node, Fn&& fn, std::size_t depth = 0) {
  for (const auto& child : node.children) {
    fn(child, depth);
    for_each_node(child, fn, depth + 1);
  }
}

std::size_t count_nodes(const DocTree& tree);

/// Subsections numbered four levels deep or more (e.g. 7.3.1.2). They keep
/// rank Subsection but are rendered inside the enclosing subsection page.
bool is_deep_subsection(const HeadingEntry& heading);

/// Stable identifier of the page a heading would own: the number for
/// numbered kinds, a title-derived key for EndPart/LastPart.
std::string page_key(const HeadingEntry& heading);

// ---------------------------------------------------------------------------
// classification

/// Regular expressions (ECMAScript) selecting each heading kind. Tried in the
/// order Part, EndPart, LastPart, Chapter, Section, Subsection; anything else
/// is a Keyword.
struct HeadingPatternConfig {
  std::string part = R"(^Part\s+[IVXLC]+)";
  std::string chapter = R"(^\d+\s+\S)";
  std::string section = R"(^\d+\.\d+\s)";
  std::string subsection = R"(^\d+(\.\d+){2,}\s)";
  std::string end_part = R"(^Annex)";
  std::string last_part = R"(^Index$)";
  std::vector<std::string> keywords = default_keywords();

  static std::vector<std::string> default_keywords();
};

class HeadingClassifier {
public:
  explicit HeadingClassifier(const HeadingPatternConfig& config = {});

  HeadingEntry classify(const ingest::RawHeadingLine& line, Diagnostics* diagnostics = nullptr) const;
  const HeadingPatternConfig& config() const noexcept { return config_; }

private:
  HeadingPatternConfig config_;
  std::regex part_, chapter_, section_, subsection_, end_part_, last_part_;
};

HeadingEntry classify_heading(const ingest::RawHeadingLine& line,
                              const HeadingClassifier& classifier = HeadingClassifier{},
                              Diagnostics* diagnostics = nullptr);

// ---------------------------------------------------------------------------
// tree construction

struct QueuedHeading {
  HeadingEntry entry;
  std::size_t begin = 0;  // event span of the heading paragraph
  std::size_t end = 0;
};

struct StackEvent {
  enum class Op { Open, Close };
  Op op;
  std::size_t index;  // position in the input queue
  bool operator==(const StackEvent&) const = default;
};

struct BuildResult {
  DocTree tree;
  std::size_t opened = 0;
  std::size_t closed = 0;
  std::vector<StackEvent> trace;
};

/// Rebuilds the logical tree from the heading queue with the stack rule:
/// while the incoming rank is <= the rank on top of the stack, pop (close);
/// then push (open). Content events between heading i and heading i+1 become
/// blocks of node i; content before the first heading belongs to the root.
BuildResult build_tree(std::span<const QueuedHeading> queue,
                       std::span<const ingest::FlatEvent> events,
                       Diagnostics* diagnostics = nullptr);

BuildResult build_tree(std::span<const HeadingEntry> queue, Diagnostics* diagnostics = nullptr);

/// Converts content events to blocks (paragraph text is flushed at every
/// paragraph boundary).
std::vector<Block> assemble_blocks(std::span<const ingest::FlatEvent> events);

// ---------------------------------------------------------------------------
// validation

struct Violation {
  enum class Kind { RankOrder, NumberPrefix, DuplicateNumber, DuplicatePageKey, NumberShape, EmptyTitle };
  Kind kind;
  std::string message;
  std::vector<std::size_t> lines;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(Violation::Kind kind) const;
  std::string format() const;
};

ValidationReport validate_tree(const DocTree& tree);

}  // namespace specweb::structure
