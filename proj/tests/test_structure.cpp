#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specweb/error.hpp"
#include "specweb/structure.hpp"

using namespace specweb;
using namespace specweb::structure;

namespace {

HeadingEntry classify(const std::string& text, Diagnostics* diag = nullptr) {
  ingest::RawHeadingLine line;
  line.text = text;
  line.line_no = 1;
  return classify_heading(line, HeadingClassifier{}, diag);
}

HeadingEntry entry(HeadingKind k, std::string number, std::string title, std::size_t line) {
  return {k, std::move(number), std::move(title), {}, line};
}

}  // namespace

TEST_CASE("ranks follow the heading table") {
  CHECK(rank(HeadingKind::Part) == 1);
  CHECK(rank(HeadingKind::Chapter) == 2);
  CHECK(rank(HeadingKind::Section) == 3);
  CHECK(rank(HeadingKind::Subsection) == 4);
  CHECK(rank(HeadingKind::Keyword) == 5);
  CHECK(rank(HeadingKind::EndPart) == 6);
  CHECK(rank(HeadingKind::LastPart) == 7);
  CHECK(kind_from_name("Subsection") == HeadingKind::Subsection);
  CHECK_FALSE(kind_from_name("Sect").has_value());
}

TEST_CASE("classify part") {
  const auto h = classify("Part I - Structure");
  CHECK(h.kind == HeadingKind::Part);
  CHECK(h.number == "I");
  CHECK(h.title == "Structure");
}

TEST_CASE("classify subsection") {
  const auto h = classify("7.3.1 Abstraction");
  CHECK(h.kind == HeadingKind::Subsection);
  CHECK(h.number == "7.3.1");
  CHECK(h.title == "Abstraction");
}

TEST_CASE("classify keyword") {
  const auto h = classify("Generalization");
  CHECK(h.kind == HeadingKind::Keyword);
  CHECK(h.number.empty());
  CHECK(h.title == "Generalization");
}

TEST_CASE("classify strips the from clause into references") {
  const auto h = classify("9.3.1 Class (from StructuredClasses)");
  CHECK(h.kind == HeadingKind::Subsection);
  CHECK(h.number == "9.3.1");
  CHECK(h.title == "Class");
  CHECK(h.references == std::vector<std::string>{"StructuredClasses"});
  CHECK(classify("7.3.4 Comment (from Kernel, Basic)").references == std::vector<std::string>{"Kernel", "Basic"});
}

TEST_CASE("classify chapter, section, annex and index") {
  CHECK(classify("7 Classes").kind == HeadingKind::Chapter);
  CHECK(classify("7.3 Class Descriptions").kind == HeadingKind::Section);
  CHECK(classify("7.3 Class Descriptions").number == "7.3");
  const auto annex = classify("Annex A - Glossary");
  CHECK(annex.kind == HeadingKind::EndPart);
  CHECK(annex.number.empty());
  CHECK(annex.title == "Annex A - Glossary");
  CHECK(classify("Index").kind == HeadingKind::LastPart);
  CHECK(classify("Index of terms").kind == HeadingKind::Keyword);
}

TEST_CASE("unknown keywords are flagged") {
  Diagnostics d;
  classify("Notation", &d);
  CHECK(d.empty());
  classify("Something Unusual", &d);
  CHECK(d.count(Severity::Note) == 1);
}

TEST_CASE("bad configured pattern is a config error") {
  HeadingPatternConfig cfg;
  cfg.chapter = "([";
  CHECK_THROWS_AS(HeadingClassifier{cfg}, DocError);
}

TEST_CASE("mis-nesting case: 7.4 closes 7.3") {
  const std::vector<HeadingEntry> q = {entry(HeadingKind::Section, "7.3", "Class Descriptions", 1),
                                       entry(HeadingKind::Subsection, "7.3.1", "Abstraction", 2),
                                       entry(HeadingKind::Subsection, "7.3.2", "Association", 3),
                                       entry(HeadingKind::Section, "7.4", "Diagrams", 4)};
  const auto r = build_tree(q);
  REQUIRE(r.tree.root.children.size() == 2);
  CHECK(r.tree.root.children[0].heading.number == "7.3");
  CHECK(r.tree.root.children[0].children.size() == 2);
  CHECK(r.tree.root.children[1].heading.number == "7.4");
  CHECK(r.opened == 4);
  CHECK(r.closed == 4);
  // 7.3 closes before 7.4 opens
  using Op = StackEvent::Op;
  const std::vector<StackEvent> expected = {{Op::Open, 0},  {Op::Open, 1},  {Op::Close, 1}, {Op::Open, 2},
                                            {Op::Close, 2}, {Op::Close, 0}, {Op::Open, 3},  {Op::Close, 3}};
  CHECK(r.trace == expected);
}

TEST_CASE("empty queue keeps all content at the root") {
  const auto events = ingest::parse_flat_stream("<P>one</P><P>two</P>");
  const auto r = build_tree(std::span<const QueuedHeading>{}, events);
  CHECK(r.tree.root.children.empty());
  REQUIRE(r.tree.root.blocks.size() == 2);
  CHECK(std::get<Paragraph>(r.tree.root.blocks[0]).text == "one");
}

TEST_CASE("keyword under a section is popped by the next section") {
  // hand-executed stack: Part I / Ch 7 / 7.1 / Notation(5) / 7.2(3): 3 <= 5 pops Notation, 3 <= 3 pops 7.1
  const std::vector<HeadingEntry> q = {entry(HeadingKind::Part, "I", "Structure", 1),
                                       entry(HeadingKind::Chapter, "7", "Classes", 2),
                                       entry(HeadingKind::Section, "7.1", "Overview", 3),
                                       entry(HeadingKind::Keyword, "", "Notation", 4),
                                       entry(HeadingKind::Section, "7.2", "Abstract Syntax", 5)};
  const auto r = build_tree(q);
  const auto& ch = r.tree.root.children.at(0).children.at(0);
  REQUIRE(ch.children.size() == 2);
  CHECK(ch.children[0].heading.number == "7.1");
  REQUIRE(ch.children[0].children.size() == 1);
  CHECK(ch.children[0].children[0].heading.title == "Notation");
  CHECK(ch.children[1].heading.number == "7.2");
  CHECK(ch.children[1].children.empty());
}

TEST_CASE("content between headings becomes blocks of the preceding heading") {
  const auto events = ingest::parse_flat_stream(
      "<P>preamble</P>\n<P id=\"LinkTarget_1\">7 Classes</P>\n<P>body</P>\n"
      "<Figure><ImageData src=\"images/f.png\"/><Caption><P>Figure 7.1</P></Caption></Figure>\n"
      "<P id=\"LinkTarget_2\">7.1 Overview</P>\n<Table><TR><TD>a</TD></TR></Table>\n");
  const auto lines = ingest::collect_heading_queue(events);
  std::vector<QueuedHeading> q;
  for (const auto& l : lines) q.push_back({classify_heading(l), l.begin, l.end});
  const auto r = build_tree(q, events);
  REQUIRE(r.tree.root.blocks.size() == 1);
  const auto& ch = r.tree.root.children.at(0);
  CHECK(ch.heading.source_line == 2);
  REQUIRE(ch.blocks.size() == 2);
  CHECK(std::get<Paragraph>(ch.blocks[0]).text == "body");
  CHECK(std::get<Figure>(ch.blocks[1]) == Figure{"images/f.png", "Figure 7.1"});
  REQUIRE(ch.children.at(0).blocks.size() == 1);
  CHECK(std::holds_alternative<Table>(ch.children[0].blocks[0]));
}

TEST_CASE("non-contiguous numbering is diagnosed") {
  Diagnostics d;
  const std::vector<HeadingEntry> q = {entry(HeadingKind::Chapter, "7", "C", 1),
                                       entry(HeadingKind::Section, "7.3", "A", 2),
                                       entry(HeadingKind::Section, "7.5", "B", 3)};
  build_tree(q, &d);
  CHECK(d.count(Severity::Warning) >= 1);
}

TEST_CASE("block assembly: tables and nested lists") {
  const auto events = ingest::parse_flat_stream(
      "<Table><Caption>Table 2.1 Compliance statement</Caption><TR><TH>Compliance Summary</TH></TR>"
      "<TR><TD>Level 1</TD><TD>YES</TD><TD>YES</TD><TD>NO</TD></TR></Table>"
      "<L><LI><LI_Label>1.</LI_Label><LI_Title>a</LI_Title><L><LI><LI_Title>b</LI_Title><L><LI><LI_Title>c</LI_Title></LI></L></LI></L></LI></L>");
  const auto blocks = assemble_blocks(events);
  REQUIRE(blocks.size() == 2);
  const auto& t = std::get<Table>(blocks[0]);
  CHECK(t.caption == "Table 2.1 Compliance statement");
  CHECK(t.header_rows == std::vector<std::vector<std::string>>{{"Compliance Summary"}});
  CHECK(t.data_rows == std::vector<std::vector<std::string>>{{"Level 1", "YES", "YES", "NO"}});
  CHECK(t.width() == 4);
  const auto& l = std::get<List>(blocks[1]);
  CHECK(list_depth(l) == 3);
  CHECK(l.items.at(0).label == "1.");
}

TEST_CASE("validation: rank order, prefixes and duplicates") {
  DocTree t;
  DocNode sec{entry(HeadingKind::Section, "7.3", "A", 10), {}, {}};
  sec.children.push_back({entry(HeadingKind::Chapter, "8", "B", 11), {}, {}});  // rank 2 under rank 3
  t.root.children.push_back(sec);
  auto report = validate_tree(t);
  CHECK(report.count(Violation::Kind::RankOrder) == 1);

  DocTree d;
  DocNode ch{entry(HeadingKind::Chapter, "7", "C", 1), {}, {}};
  ch.children.push_back({entry(HeadingKind::Section, "7.3", "A", 2), {}, {}});
  ch.children.push_back({entry(HeadingKind::Section, "7.3", "B", 5), {}, {}});
  ch.children.push_back({entry(HeadingKind::Section, "8.1", "D", 6), {}, {}});
  d.root.children.push_back(ch);
  report = validate_tree(d);
  REQUIRE(report.count(Violation::Kind::DuplicateNumber) == 1);
  CHECK(report.count(Violation::Kind::NumberPrefix) == 1);
  for (const auto& v : report.violations) {
    if (v.kind == Violation::Kind::DuplicateNumber) CHECK(v.lines == std::vector<std::size_t>{2, 5});
  }
  CHECK(report.format().find("lines 2,5") != std::string::npos);
}

TEST_CASE("validation: number shapes") {
  DocTree t;
  t.root.children.push_back({entry(HeadingKind::Section, "7", "bad", 1), {}, {}});
  t.root.children.push_back({entry(HeadingKind::Keyword, "3", "numbered keyword", 2), {}, {}});
  t.root.children.push_back({entry(HeadingKind::Keyword, "", "", 3), {}, {}});
  const auto report = validate_tree(t);
  CHECK(report.count(Violation::Kind::NumberShape) == 2);
  CHECK(report.count(Violation::Kind::EmptyTitle) == 1);
}

TEST_CASE("page keys and deep subsections") {
  CHECK(page_key(entry(HeadingKind::Section, "7.3", "x", 0)) == "7.3");
  CHECK(page_key(entry(HeadingKind::EndPart, "", "Annex A - Glossary", 0)) == "end-Annex-A-Glossary");
  CHECK(page_key(entry(HeadingKind::LastPart, "", "Index", 0)) == "last-Index");
  CHECK(is_deep_subsection(entry(HeadingKind::Subsection, "7.3.1.2", "x", 0)));
  CHECK_FALSE(is_deep_subsection(entry(HeadingKind::Subsection, "7.3.1", "x", 0)));
}
