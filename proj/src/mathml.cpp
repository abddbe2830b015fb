// SPDX-License-Identifier: Apache-2.0
#include "mathqa/mathml.hpp"

#include <algorithm>
#include <charconv>

#include "mathqa/errors.hpp"
#include "mathqa/formula_text.hpp"
#include "mathqa/utf8.hpp"

namespace mathqa {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
         c == '_' || c == ':' || c == '.';
}

std::size_t line_of(std::string_view s, std::size_t pos) {
  return 1 + static_cast<std::size_t>(std::count(s.begin(), s.begin() + std::min(pos, s.size()), '\n'));
}

class XmlParser {
 public:
  explicit XmlParser(std::string_view s) : s_(s) {}

  XmlNode parse() {
    skip_misc();
    if (pos_ >= s_.size() || s_[pos_] != '<') fail("expected root element");
    XmlNode root = element();
    skip_misc();
    if (pos_ != s_.size()) fail("trailing content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("malformed markup: " + what, line_of(s_, pos_));
  }

  void skip_space() {
    while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
  }

  void skip_misc() {
    for (;;) {
      skip_space();
      if (s_.substr(pos_, 4) == "<!--") {
        skip_comment();
      } else {
        return;
      }
    }
  }

  void skip_comment() {
    const std::size_t end = s_.find("-->", pos_ + 4);
    if (end == std::string_view::npos) fail("unterminated comment");
    pos_ = end + 3;
  }

  std::string name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  XmlNode element() {
    ++pos_;  // '<'
    XmlNode node;
    node.name = name();
    for (;;) {
      skip_space();
      if (pos_ >= s_.size()) fail("unterminated start tag <" + node.name + ">");
      if (s_[pos_] == '/') {
        if (s_.substr(pos_, 2) != "/>") fail("stray '/' in tag");
        pos_ += 2;
        return node;
      }
      if (s_[pos_] == '>') {
        ++pos_;
        break;
      }
      std::string key = name();
      skip_space();
      if (pos_ >= s_.size() || s_[pos_] != '=') fail("attribute without value");
      ++pos_;
      skip_space();
      if (pos_ >= s_.size() || (s_[pos_] != '"' && s_[pos_] != '\'')) fail("unquoted attribute");
      const char quote = s_[pos_++];
      const std::size_t end = s_.find(quote, pos_);
      if (end == std::string_view::npos) fail("unterminated attribute value");
      node.attributes[key] = decode_entities(s_.substr(pos_, end - pos_));
      pos_ = end + 1;
    }
    for (;;) {
      if (pos_ >= s_.size()) fail("missing </" + node.name + ">");
      if (s_.substr(pos_, 4) == "<!--") {
        skip_comment();
      } else if (s_.substr(pos_, 2) == "</") {
        pos_ += 2;
        const std::string closing = name();
        skip_space();
        if (closing != node.name) fail("</" + closing + "> closes <" + node.name + ">");
        if (pos_ >= s_.size() || s_[pos_] != '>') fail("unterminated end tag");
        ++pos_;
        return node;
      } else if (s_[pos_] == '<') {
        node.children.push_back(element());
      } else {
        const std::size_t end = std::min(s_.find('<', pos_), s_.size());
        XmlNode text;
        text.text = decode_entities(s_.substr(pos_, end - pos_));
        node.children.push_back(std::move(text));
        pos_ = end;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string trimmed_text(const XmlNode& n) {
  std::string out;
  for (char c : n.inner_text()) {
    if (!is_space(c)) out.push_back(c);
  }
  return out;
}

bool is_accent(const XmlNode& n) {
  if (n.name != "mo") return false;
  const std::string t = trimmed_text(n);
  return t == "→" || t == "^" || t == "ˆ" || t == "¯" || t == "~" || t == "˙" || t == "¨" || t == "⃗";
}

void collect_identifiers(const XmlNode& n, std::vector<std::string>& out) {
  if (n.is_text()) return;
  const auto kids = n.elements();
  if (n.name == "mi") {
    const std::string sym = trimmed_text(n);
    if (sym.empty() || sym == "π" || is_function_name(sym)) return;
    if (std::find(out.begin(), out.end(), sym) == out.end()) out.push_back(sym);
    return;
  }
  if (n.name == "mtext" || n.name == "annotation" || n.name == "annotation-xml") return;
  if (n.name == "msub" || n.name == "munder") {
    if (!kids.empty()) collect_identifiers(*kids[0], out);
    return;
  }
  if (n.name == "msubsup" || n.name == "munderover") {
    if (!kids.empty()) collect_identifiers(*kids[0], out);
    if (kids.size() > 2) collect_identifiers(*kids[2], out);
    return;
  }
  if (n.name == "mover") {
    if (!kids.empty()) collect_identifiers(*kids[0], out);
    if (kids.size() > 1 && !is_accent(*kids[1])) collect_identifiers(*kids[1], out);
    return;
  }
  if (n.name == "semantics") {
    if (!kids.empty()) collect_identifiers(*kids[0], out);
    return;
  }
  for (const XmlNode* k : kids) collect_identifiers(*k, out);
}

void linearize(const XmlNode& n, std::string& out);

void linearize_children(const XmlNode& n, std::string& out) {
  for (const XmlNode* k : n.elements()) linearize(*k, out);
}

void linearize_group(const XmlNode* n, std::string& out) {
  out += '{';
  if (n != nullptr) linearize(*n, out);
  out += '}';
}

// Script bases only need braces when they span several tokens.
void linearize_base(const XmlNode* n, std::string& out) {
  if (n != nullptr && (n->name != "mrow" || n->elements().size() == 1)) {
    linearize(*n, out);
  } else {
    linearize_group(n, out);
  }
}

void emit(std::string& out, std::string_view token) {
  if (!out.empty() && out.back() != ' ') out += ' ';
  out += token;
  out += ' ';
}

void linearize(const XmlNode& n, std::string& out) {
  if (n.is_text()) return;
  const auto kids = n.elements();
  const auto child = [&](std::size_t i) -> const XmlNode* { return i < kids.size() ? kids[i] : nullptr; };
  if (n.name == "mi") {
    const std::string t = trimmed_text(n);
    if (t.empty()) return;
    if (is_function_name(t)) {
      emit(out, "\\" + t);
    } else if (utf8::length(t) > 1) {
      emit(out, "\\mathrm{" + t + "}");
    } else if (auto cmd = greek_command(t)) {
      emit(out, "\\" + *cmd);
    } else {
      emit(out, t);
    }
  } else if (n.name == "mn") {
    emit(out, trimmed_text(n));
  } else if (n.name == "mo") {
    const std::string t = trimmed_text(n);
    if (t == "⋅" || t == "·" || t == "*") {
      emit(out, "\\cdot");
    } else if (t == "×") {
      emit(out, "\\times");
    } else if (t == "−") {
      emit(out, "-");
    } else if (t == "∑") {
      emit(out, "\\sum");
    } else if (t == "⁢" || t == "⁡" || t == "⁣" || t.empty()) {
      // invisible operators
    } else if (t == "{" || t == "}") {
      emit(out, "\\" + t);
    } else {
      emit(out, t);
    }
  } else if (n.name == "mtext") {
    emit(out, "\\text{" + n.inner_text() + "}");
  } else if (n.name == "msup") {
    linearize_base(child(0), out);
    out += '^';
    linearize_group(child(1), out);
  } else if (n.name == "msub" || n.name == "munder") {
    linearize_base(child(0), out);
    out += '_';
    linearize_group(child(1), out);
  } else if (n.name == "msubsup" || n.name == "munderover") {
    linearize_base(child(0), out);
    out += '_';
    linearize_group(child(1), out);
    out += '^';
    linearize_group(child(2), out);
  } else if (n.name == "mfrac") {
    emit(out, "\\frac");
    linearize_group(child(0), out);
    linearize_group(child(1), out);
  } else if (n.name == "msqrt") {
    emit(out, "\\sqrt");
    out += '{';
    linearize_children(n, out);
    out += '}';
  } else if (n.name == "mroot") {
    emit(out, "\\sqrt");
    out += '[';
    if (child(1) != nullptr) linearize(*child(1), out);
    out += ']';
    linearize_group(child(0), out);
  } else if (n.name == "mover") {
    if (child(1) != nullptr && is_accent(*child(1))) {
      const std::string accent = trimmed_text(*child(1));
      if (accent == "^" || accent == "ˆ") {
        emit(out, "\\hat");
        linearize_group(child(0), out);
      } else if (child(0) != nullptr) {
        linearize(*child(0), out);
      }
    } else {
      linearize_base(child(0), out);
      out += '^';
      linearize_group(child(1), out);
    }
  } else if (n.name == "semantics") {
    if (child(0) != nullptr) linearize(*child(0), out);
  } else if (n.name == "annotation" || n.name == "annotation-xml") {
    // alternative encodings are not part of the presentation tree
  } else {
    linearize_children(n, out);
  }
}

}  // namespace

std::string XmlNode::inner_text() const {
  if (is_text()) return text;
  std::string out;
  for (const auto& c : children) out += c.inner_text();
  return out;
}

std::vector<const XmlNode*> XmlNode::elements() const {
  std::vector<const XmlNode*> out;
  for (const auto& c : children) {
    if (!c.is_text()) out.push_back(&c);
  }
  return out;
}

std::string decode_entities(std::string_view s) {
  static const std::map<std::string_view, std::string_view> named = {
      {"lt", "<"},         {"gt", ">"},       {"amp", "&"},       {"quot", "\""},
      {"apos", "'"},       {"nbsp", " "}, {"minus", "−"},     {"times", "×"},
      {"sdot", "⋅"},       {"middot", "·"},   {"pi", "π"},        {"InvisibleTimes", "⁢"},
      {"it", "⁢"},    {"af", "⁡"},  {"ApplyFunction", "⁡"},
  };
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    const std::size_t semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 32) {
      out.push_back(s[i++]);
      continue;
    }
    const std::string_view ref = s.substr(i + 1, semi - i - 1);
    if (!ref.empty() && ref[0] == '#') {
      unsigned long cp = 0;
      const bool hex = ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X');
      const std::string_view digits = ref.substr(hex ? 2 : 1);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
      if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty() && cp <= 0x10FFFF) {
        utf8::append(out, static_cast<char32_t>(cp));
        i = semi + 1;
        continue;
      }
    } else if (auto it = named.find(ref); it != named.end()) {
      out += it->second;
      i = semi + 1;
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

XmlNode parse_xml_fragment(std::string_view xml) { return XmlParser(xml).parse(); }

std::vector<std::string> mathml_identifiers(const XmlNode& math) {
  std::vector<std::string> out;
  collect_identifiers(math, out);
  return out;
}

std::string mathml_to_latex(const XmlNode& math) {
  std::string out;
  linearize(math, out);
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace mathqa
