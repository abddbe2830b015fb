// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>

#include "mathqa/corpus.hpp"
#include "mathqa/question.hpp"
#include "cases.hpp"

using namespace mathqa;

namespace {

const std::filesystem::path kData = MATHQA_DATA_DIR;

}  // namespace

TEST(Question, TemplateFixtureSetIsClassifiedCorrectly) {
  const auto all = cases::question_templates(load_gold_benchmark(kData / "benchmark" / "gold.tsv"));
  ASSERT_GE(all.size(), 520u);
  const auto start = std::chrono::steady_clock::now();
  std::size_t correct = 0;
  for (const auto& c : all) {
    try {
      const std::string mismatch = cases::intent_mismatch(parse_question(c.question), c.expected);
      EXPECT_EQ(mismatch, "") << c.question;
      if (mismatch.empty()) ++correct;
    } catch (const UnrecognizedQuestion& e) {
      ADD_FAILURE() << c.question << ": " << e.what();
    }
  }
  EXPECT_EQ(correct, all.size());
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(5));
}

TEST(Question, WorkedExamples) {
  const auto rel = parse_question("What is the relationship between energy and mass?");
  EXPECT_EQ(rel.kind, IntentKind::RelationshipNames);
  EXPECT_EQ(rel.operands, (std::vector<std::string>{"energy", "mass"}));

  const auto speed = parse_question("what is the formula for speed?");
  EXPECT_EQ(speed.kind, IntentKind::FormulaName);
  EXPECT_EQ(speed.concept_name, "speed");
  ASSERT_TRUE(speed.triple.has_value());
  EXPECT_EQ(speed.triple->subject, "speed");
  EXPECT_EQ(speed.triple->predicate, "formula");

  const auto area = parse_question("What is the area of a circle?");
  EXPECT_EQ(area.kind, IntentKind::Geometry);
  EXPECT_EQ(area.property, "area");
  EXPECT_EQ(area.object, "circle");
}

TEST(Question, SymbolOperandsKeepCase) {
  const auto q = parse_question("what is the relationship between E and m");
  EXPECT_EQ(q.kind, IntentKind::RelationshipSymbols);
  EXPECT_EQ(q.operands, (std::vector<std::string>{"E", "m"}));
  const auto sub = parse_question("what is the relationship between a_c and v");
  EXPECT_EQ(sub.operands, (std::vector<std::string>{"a_c", "v"}));
  const auto article = parse_question("what is the relationship between F, m and a");
  EXPECT_EQ(article.operands, (std::vector<std::string>{"F", "m", "a"}));
}

TEST(Question, ConceptIsCaseInsensitive) {
  EXPECT_EQ(parse_question("WHAT IS THE FORMULA FOR KINETIC ENERGY").concept_name, "kinetic energy");
  EXPECT_EQ(parse_question("what   is the formula for kinetic energy ??").concept_name, "kinetic energy");
}

TEST(Question, UnrecognizedCarriesPartialTriple) {
  try {
    parse_question("what is speed");
    FAIL() << "expected UnrecognizedQuestion";
  } catch (const UnrecognizedQuestion& e) {
    ASSERT_TRUE(e.partial().has_value());
    EXPECT_EQ(e.partial()->predicate, "speed");
  }
  EXPECT_THROW(parse_question(""), UnrecognizedQuestion);
  EXPECT_THROW(parse_question("the quick brown fox"), UnrecognizedQuestion);
  EXPECT_THROW(parse_question("what is the relationship between energy"), UnrecognizedQuestion);
}

TEST(Question, NormalizeQuestion) {
  EXPECT_EQ(normalize_question("  What\tis  X ?!"), "What is X");
}

TEST(Question, GeometryListParsing) {
  const auto list = GeometryPropertyList::parse("# header\nArea\n\nvolume\n");
  EXPECT_TRUE(list.contains("area"));
  EXPECT_TRUE(list.contains("volume"));
  EXPECT_FALSE(list.contains("mass"));
  EXPECT_THROW(GeometryPropertyList::parse("# only a comment\n"), ValidationError);
  const auto shipped = GeometryPropertyList::load(kData / "geometry_properties.txt");
  EXPECT_EQ(shipped.properties(), GeometryPropertyList::standard().properties());
}
