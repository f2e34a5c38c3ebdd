#include "specweb/xml.hpp"

#include "specweb/error.hpp"
#include "specweb/text.hpp"

#include <cstdint>

namespace specweb::xml {

bool is_name_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

const std::string* Node::attr(std::string_view key) const {
  for (const auto& [k, v] : attrs) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string Node::text_content() const {
  if (is_text()) return text;
  std::string out;
  for (const auto& c : children) out += c.text_content();
  return out;
}

bool Node::has_element_children() const {
  for (const auto& c : children) {
    if (c.is_element()) return true;
  }
  return false;
}

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Parser {
public:
  explicit Parser(std::string_view in) : in_(in) {}

  std::vector<Node> parse_all() {
    std::vector<Node> top;
    parse_content(top, nullptr);
    return top;
  }

private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DocError(ErrorKind::MalformedInput, why, line_);
  }

  bool eof() const { return pos_ >= in_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < in_.size() ? in_[pos_ + ahead] : '\0';
  }
  bool looking_at(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }
  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < in_.size(); ++i) {
      if (in_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }
  void skip_until(std::string_view terminator, const char* what) {
    while (!eof() && !looking_at(terminator)) advance();
    if (eof()) fail(std::string("unterminated ") + what);
    advance(terminator.size());
  }
  void skip_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) advance();
  }

  std::string parse_name() {
    if (eof() || !is_name_start(static_cast<unsigned char>(peek()))) fail("expected a name");
    const std::size_t b = pos_;
    while (!eof() && is_name_char(static_cast<unsigned char>(peek()))) advance();
    return std::string(in_.substr(b, pos_ - b));
  }

  // Decodes one reference starting at '&'.
  void parse_reference(std::string& out) {
    const std::size_t semi = in_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) fail("bare '&' in character data");
    const std::string_view ent = in_.substr(pos_ + 1, semi - pos_ - 1);
    if (ent == "amp") out.push_back('&');
    else if (ent == "lt") out.push_back('<');
    else if (ent == "gt") out.push_back('>');
    else if (ent == "quot") out.push_back('"');
    else if (ent == "apos") out.push_back('\'');
    else if (ent.size() > 1 && ent[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = ent[1] == 'x' || ent[1] == 'X';
      const std::string_view digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) fail("empty character reference");
      for (char c : digits) {
        std::uint32_t d;
        if (c >= '0' && c <= '9') d = static_cast<std::uint32_t>(c - '0');
        else if (hex && c >= 'a' && c <= 'f') d = static_cast<std::uint32_t>(c - 'a' + 10);
        else if (hex && c >= 'A' && c <= 'F') d = static_cast<std::uint32_t>(c - 'A' + 10);
        else fail("bad character reference");
        cp = cp * (hex ? 16 : 10) + d;
        if (cp > 0x10FFFF) fail("character reference out of range");
      }
      if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid character reference");
      append_utf8(out, cp);
    } else {
      fail("unknown entity '&" + std::string(ent) + ";'");
    }
    advance(semi - pos_ + 1);
  }

  void parse_attributes(Node& node) {
    while (true) {
      const std::size_t before = pos_;
      skip_space();
      if (eof()) fail("unterminated start tag <" + node.name + ">");
      if (peek() == '>' || peek() == '/') return;
      if (pos_ == before) fail("expected whitespace before attribute");
      std::string key = parse_name();
      skip_space();
      if (peek() != '=') fail("expected '=' after attribute " + key);
      advance();
      skip_space();
      const char q = peek();
      if (q != '"' && q != '\'') fail("attribute value must be quoted");
      advance();
      std::string value;
      while (!eof() && peek() != q) {
        if (peek() == '<') fail("'<' inside attribute value");
        if (peek() == '&') {
          parse_reference(value);
        } else {
          value.push_back(peek());
          advance();
        }
      }
      if (eof()) fail("unterminated attribute value");
      advance();
      if (node.attr(key)) fail("duplicate attribute " + key);
      node.attrs.emplace_back(std::move(key), std::move(value));
    }
  }

  static void push_text(std::vector<Node>& out, std::string&& s, std::size_t line) {
    if (s.empty()) return;
    if (!out.empty() && out.back().is_text()) {
      out.back().text += s;
      return;
    }
    Node t;
    t.kind = Node::Kind::Text;
    t.text = std::move(s);
    t.line = line;
    out.push_back(std::move(t));
  }

  // Parses content until the matching end tag of `open` (or EOF when null).
  void parse_content(std::vector<Node>& out, const Node* open) {
    std::string pending;
    std::size_t pending_line = line_;
    auto flush = [&] {
      push_text(out, std::move(pending), pending_line);
      pending.clear();
    };
    while (!eof()) {
      const char c = peek();
      if (c != '<') {
        if (pending.empty()) pending_line = line_;
        if (c == '&') {
          parse_reference(pending);
        } else {
          pending.push_back(c);
          advance();
        }
        continue;
      }
      if (looking_at("<!--")) {
        advance(4);
        skip_until("-->", "comment");
        continue;
      }
      if (looking_at("<![CDATA[")) {
        advance(9);
        if (pending.empty()) pending_line = line_;
        const std::size_t b = pos_;
        skip_until("]]>", "CDATA section");
        pending.append(in_.substr(b, pos_ - b - 3));
        continue;
      }
      if (looking_at("<?")) {
        advance(2);
        skip_until("?>", "processing instruction");
        continue;
      }
      if (looking_at("<!DOCTYPE") || looking_at("<!doctype")) {
        advance(9);
        skip_until(">", "DOCTYPE");
        continue;
      }
      if (looking_at("</")) {
        flush();
        const std::size_t close_line = line_;
        advance(2);
        const std::string name = parse_name();
        skip_space();
        if (peek() != '>') fail("malformed end tag </" + name + ">");
        advance();
        if (!open) {
          line_ = close_line;
          fail("end tag </" + name + "> without matching start tag");
        }
        if (name != open->name) {
          line_ = close_line;
          fail("end tag </" + name + "> does not match <" + open->name + "> opened at line " +
               std::to_string(open->line));
        }
        return;
      }
      flush();
      Node el;
      el.line = line_;
      advance();
      el.name = parse_name();
      parse_attributes(el);
      if (peek() == '/') {
        advance();
        if (peek() != '>') fail("expected '>' after '/'");
        advance();
        out.push_back(std::move(el));
        continue;
      }
      advance();  // '>'
      parse_content(el.children, &el);
      out.push_back(std::move(el));
    }
    flush();
    if (open) {
      line_ = open->line;
      fail("element <" + open->name + "> is never closed");
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

std::vector<Node> parse_fragment(std::string_view input) {
  if (auto bad = text::find_invalid_utf8(input)) {
    throw DocError(ErrorKind::InvalidEncoding, "input is not valid UTF-8",
                   text::line_at(input, *bad));
  }
  if (text::starts_with(input, "\xEF\xBB\xBF")) input.remove_prefix(3);
  return Parser(input).parse_all();
}

Node parse_document(std::string_view input) {
  auto nodes = parse_fragment(input);
  Node* root = nullptr;
  for (auto& n : nodes) {
    if (n.is_text()) {
      if (!text::trim(n.text).empty()) {
        throw DocError(ErrorKind::MalformedInput, "character data outside the root element", n.line);
      }
      continue;
    }
    if (root) throw DocError(ErrorKind::MalformedInput, "more than one root element", n.line);
    root = &n;
  }
  if (!root) throw DocError(ErrorKind::MalformedInput, "document has no root element", 1);
  return std::move(*root);
}

}  // namespace specweb::xml
