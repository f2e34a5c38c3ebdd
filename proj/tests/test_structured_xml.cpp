#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specweb/error.hpp"
#include "specweb/structured_xml.hpp"

#include <set>

using namespace specweb;
using namespace specweb::structure;

namespace {

const std::string kDecl = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

}  // namespace

TEST_CASE("single chapter serialization") {
  DocTree t;
  t.root.children.push_back({HeadingEntry{HeadingKind::Chapter, "7", "Classes", {}, 0}, {}, {}});
  CHECK(serialize_structured_xml(t) ==
        kDecl + "<Book>\n  <Chapter Number=\"7\">\n    <Name>Classes</Name>\n  </Chapter>\n</Book>\n");
}

TEST_CASE("empty tree is an empty Book") {
  CHECK(serialize_structured_xml(DocTree{}) == kDecl + "<Book/>\n");
  CHECK(parse_structured_xml(kDecl + "<Book/>\n") == DocTree{});
}

TEST_CASE("parse inverts the single chapter example") {
  DocTree t;
  t.root.children.push_back({HeadingEntry{HeadingKind::Chapter, "7", "Classes", {}, 0}, {}, {}});
  CHECK(parse_structured_xml(serialize_structured_xml(t)) == t);
}

TEST_CASE("keyword element names") {
  CHECK(keyword_element_name("Generalizations") == "Generalizations");
  CHECK(keyword_element_name("Changes from previous UML") == "ChangesFromPreviousUML");
  CHECK(keyword_element_name("2nd edition") == "K2ndEdition");
  CHECK(keyword_element_name("Name") == "NameKeyword");
  CHECK(keyword_element_name("") == "Keyword");
}

TEST_CASE("keyword element naming is injective on the default vocabulary") {
  std::set<std::string> names;
  const auto vocab = HeadingPatternConfig::default_keywords();
  for (const auto& k : vocab) names.insert(keyword_element_name(k));
  CHECK(names.size() == vocab.size());
}

TEST_CASE("full node with references, keyword and blocks") {
  DocTree t;
  DocNode sub{HeadingEntry{HeadingKind::Subsection, "7.3.1", "Abstraction", {"Dependencies"}, 25}, {}, {}};
  sub.blocks.push_back(Paragraph{"a < b & c"});
  sub.blocks.push_back(Figure{"images/a.png", ""});
  Table tab;
  tab.caption = "T";
  tab.header_rows = {{"h"}};
  tab.data_rows = {{"1", "", "3"}, {"x"}};
  sub.blocks.push_back(tab);
  List l;
  l.items.push_back({"", "item", List{{ListItem{"-", "nested", std::nullopt}}}});
  sub.blocks.push_back(l);
  sub.children.push_back({HeadingEntry{HeadingKind::Keyword, "", "Notation", {}, 27}, {Paragraph{"shown"}}, {}});
  DocNode sec{HeadingEntry{HeadingKind::Section, "7.3", "Class Descriptions", {}, 23}, {}, {sub}};
  t.root.children.push_back(sec);
  const auto xml = serialize_structured_xml(t);
  CHECK(xml.find("<Subsection Number=\"7.3.1\" Line=\"25\">") != std::string::npos);
  CHECK(xml.find("<Reference>Dependencies</Reference>") != std::string::npos);
  CHECK(xml.find("<Notation Line=\"27\">") != std::string::npos);
  CHECK(xml.find("a &lt; b &amp; c") != std::string::npos);
  CHECK(parse_structured_xml(xml) == t);
}

TEST_CASE("invalid trees are refused") {
  DocTree t;
  t.root.children.push_back({HeadingEntry{HeadingKind::Section, "7.3", "A", {}, 1}, {}, {}});
  t.root.children.push_back({HeadingEntry{HeadingKind::Section, "7.3", "B", {}, 2}, {}, {}});
  try {
    serialize_structured_xml(t);
    FAIL("expected InvalidTree");
  } catch (const DocError& e) {
    CHECK(e.kind() == ErrorKind::InvalidTree);
  }
}

TEST_CASE("schema violations") {
  auto expect_violation = [](const std::string& xml) {
    try {
      parse_structured_xml(xml);
      FAIL("expected SchemaViolation for " << xml);
    } catch (const DocError& e) {
      CHECK(e.kind() == ErrorKind::SchemaViolation);
    }
  };
  expect_violation("<Book><Bogus/></Book>");
  expect_violation("<Root/>");
  expect_violation("<Book><Chapter><Name>x</Name></Chapter></Book>");           // no Number
  expect_violation("<Book><Chapter Number=\"7\"></Chapter></Book>");            // no Name
  expect_violation("<Book><Chapter Number=\"7\"><Name>x</Name><TR/></Chapter></Book>");
  expect_violation("<Book><P>x</P><P><Q/></P></Book>");
  try {
    parse_structured_xml("<Book>\n\n<Bogus/></Book>");
  } catch (const DocError& e) {
    CHECK(e.line() == 3);
  }
}
