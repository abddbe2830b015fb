// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mathqa {

/// Element or text node of a parsed Presentation-MathML fragment.
struct XmlNode {
  std::string name;  // empty for text nodes
  std::string text;  // decoded character data of a text node
  std::map<std::string, std::string> attributes;
  std::vector<XmlNode> children;

  bool is_text() const { return name.empty(); }
  /// Concatenated character data of all descendant text nodes.
  std::string inner_text() const;
  /// Element children only, skipping whitespace-only text.
  std::vector<const XmlNode*> elements() const;
};

/// Parses one XML fragment with a single root element. Handles attributes,
/// self-closing tags, comments and character references; throws ParseError
/// on unbalanced or malformed markup.
XmlNode parse_xml_fragment(std::string_view xml);

/// Replaces character and the common named entity references.
std::string decode_entities(std::string_view s);

/// Distinct identifier symbols of a <math> tree in document order.
/// Subscript indices, function names, <mtext> and pi are skipped.
std::vector<std::string> mathml_identifiers(const XmlNode& math);

/// Linearizes a <math> tree to the LaTeX subset understood by normalize_formula.
std::string mathml_to_latex(const XmlNode& math);

}  // namespace mathqa
