// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "mathqa/errors.hpp"
#include "mathqa/formula_text.hpp"
#include "mathqa/mathml.hpp"
#include "mathqa/utf8.hpp"

using namespace mathqa;

TEST(Utf8, DecodesMultibyteSequences) {
  const std::string s = "aω€😀";
  std::size_t pos = 0;
  EXPECT_EQ(utf8::decode(s, pos), U'a');
  EXPECT_EQ(utf8::decode(s, pos), U'ω');
  EXPECT_EQ(utf8::decode(s, pos), U'€');
  EXPECT_EQ(utf8::decode(s, pos), U'😀');
  EXPECT_EQ(pos, s.size());
  EXPECT_EQ(utf8::length(s), 4u);
}

TEST(Utf8, MalformedInputYieldsReplacement) {
  const std::string s = "\xC3(";
  std::size_t pos = 0;
  EXPECT_EQ(utf8::decode(s, pos), utf8::kReplacement);
  EXPECT_EQ(pos, 1u);
  EXPECT_FALSE(utf8::valid(s));
  EXPECT_TRUE(utf8::valid("Ωmega"));
}

TEST(Utf8, EncodeRoundTrips) {
  for (char32_t cp : {U'x', U'λ', U'Ж', U'∑', U'😀'}) {
    const std::string e = utf8::encode(cp);
    std::size_t pos = 0;
    EXPECT_EQ(utf8::decode(e, pos), cp);
  }
}

TEST(Utf8, LettersAndCase) {
  EXPECT_TRUE(utf8::is_letter(U'a'));
  EXPECT_TRUE(utf8::is_letter(U'Ω'));
  EXPECT_TRUE(utf8::is_letter(U'Ж'));
  EXPECT_FALSE(utf8::is_letter(U'1'));
  EXPECT_FALSE(utf8::is_letter(U'-'));
  EXPECT_EQ(utf8::to_lower("Speed OF Light"), "speed of light");
  EXPECT_EQ(utf8::to_lower("ΩΜΕΓΑ"), "ωμεγα");
  EXPECT_EQ(utf8::trim("  x y\t\n"), "x y");
}

TEST(Latex, TokenizerKinds) {
  const auto t = tokenize_latex("\\frac{a}{b}\\,x");
  ASSERT_GE(t.size(), 8u);
  EXPECT_TRUE(t[0].is_word("frac"));
  EXPECT_EQ(t[1].kind, LatexToken::Kind::BeginGroup);
  EXPECT_TRUE(t[2].is_char("a"));
  EXPECT_EQ(t[3].kind, LatexToken::Kind::EndGroup);
  EXPECT_EQ(t[7].kind, LatexToken::Kind::ControlSymbol);
}

TEST(Latex, GreekMapping) {
  EXPECT_EQ(greek_letter("omega"), "ω");
  EXPECT_EQ(greek_letter("Delta"), "Δ");
  EXPECT_FALSE(greek_letter("frac").has_value());
  EXPECT_EQ(greek_command("ω"), "omega");
  EXPECT_TRUE(is_function_name("sin"));
  EXPECT_FALSE(is_function_name("x"));
}

TEST(Latex, NormalizationIsCanonical) {
  EXPECT_EQ(normalize_formula("E = m c^{2}"), normalize_formula("E=mc^2"));
  EXPECT_EQ(normalize_formula("$\\mathbf{F} = m \\cdot \\mathbf{a}$"), normalize_formula("F=m*a"));
  EXPECT_EQ(normalize_formula("\\omega = 2\\pi f"), normalize_formula("ω=2πf"));
  EXPECT_EQ(normalize_formula("\\left( a \\right)"), "(a)");
  EXPECT_NE(normalize_formula("E=mc^2"), normalize_formula("E=mc^3"));
}

TEST(Latex, IdentifiersSkipIndicesAndFunctions) {
  EXPECT_EQ(latex_identifiers("E = mc^2"), (std::vector<std::string>{"E", "m", "c"}));
  EXPECT_EQ(latex_identifiers("x_i = \\sin(\\theta) + \\pi"), (std::vector<std::string>{"x", "θ"}));
  EXPECT_EQ(latex_identifiers("v = \\frac{s}{t}"), (std::vector<std::string>{"v", "s", "t"}));
  EXPECT_EQ(latex_identifiers("F = m a^{n}"), (std::vector<std::string>{"F", "m", "a", "n"}));
}

TEST(MathMl, ParsesFragmentWithEntities) {
  const XmlNode n = parse_xml_fragment("<math><mi>E</mi><mo>=</mo><mi>m</mi><msup><mi>c</mi><mn>2</mn></msup></math>");
  EXPECT_EQ(n.name, "math");
  EXPECT_EQ(n.elements().size(), 4u);
  EXPECT_EQ(mathml_identifiers(n), (std::vector<std::string>{"E", "m", "c"}));
  EXPECT_EQ(normalize_formula(mathml_to_latex(n)), normalize_formula("E=mc^2"));
  EXPECT_EQ(decode_entities("a &lt; b &amp;&#969;"), "a < b &ω");
}

TEST(MathMl, SubscriptIndexIsNotAnIdentifier) {
  const XmlNode n = parse_xml_fragment("<math><msub><mi>x</mi><mi>i</mi></msub><mo>=</mo><mi>y</mi></math>");
  EXPECT_EQ(mathml_identifiers(n), (std::vector<std::string>{"x", "y"}));
}

TEST(MathMl, MalformedMarkupThrows) {
  EXPECT_THROW(parse_xml_fragment("<math><mi>x</math>"), ParseError);
  EXPECT_THROW(parse_xml_fragment("<math>"), ParseError);
}
