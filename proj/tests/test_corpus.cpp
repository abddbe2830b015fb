// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>

#include "mathqa/corpus.hpp"
#include "mathqa/errors.hpp"

using namespace mathqa;
namespace fs = std::filesystem;

namespace {

const fs::path kData = MATHQA_DATA_DIR;

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mathqa_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Corpus, LoadsShippedCorpusSorted) {
  const auto docs = load_corpus(kData / "corpus" / "arxiv", Source::Arxiv);
  ASSERT_EQ(docs.size(), 20u);
  for (std::size_t i = 1; i < docs.size(); ++i) EXPECT_LT(docs[i - 1].doc_id, docs[i].doc_id);
  for (const auto& d : docs) EXPECT_EQ(d.source, Source::Arxiv);
}

TEST(Corpus, MissingRootThrows) {
  EXPECT_THROW(load_corpus("/nonexistent/mathqa", Source::Arxiv), IoError);
}

TEST(Corpus, InvalidUtf8IsSkippedWithWarning) {
  const fs::path dir = temp_dir("corpus_utf8");
  write_file(dir / "good.html", "<p>fine</p>");
  write_file(dir / "bad.html", std::string("<p>\xff\xfe</p>"));
  std::vector<std::string> warnings;
  const auto docs = load_corpus(dir, Source::Wikipedia, &warnings);
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_FALSE(warnings.empty());
  fs::remove_all(dir);
}

TEST(Corpus, MathRegionsAndUnclosedWarning) {
  const std::string body = "a <math><mi>x</mi></math> b <math><mi>y</mi> c <math><mi>z</mi></math>";
  std::vector<std::string> warnings;
  const auto regions = math_regions(body, &warnings);
  ASSERT_EQ(regions.size(), 2u);
  EXPECT_EQ(body.substr(regions[0].start, 4), "<mat");
  EXPECT_EQ(body.substr(regions[0].end - 7, 7), "</math>");
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Corpus, ExtractsOccurrencesWithIdentifiers) {
  Document d;
  d.doc_id = "x";
  d.body = "Energy <math><mi>E</mi><mo>=</mo><mi>m</mi><msup><mi>c</mi><mn>2</mn></msup></math> and "
           "<math><mn>3</mn></math>";
  const auto occ = extract_formula_occurrences(d);
  ASSERT_EQ(occ.size(), 1u);
  EXPECT_EQ(occ[0].identifiers, (std::vector<std::string>{"E", "m", "c"}));
}

TEST(Gold, ShippedBenchmarkHas65ValidRecords) {
  const auto gold = load_gold_benchmark(kData / "benchmark" / "gold.tsv");
  ASSERT_EQ(gold.size(), 65u);
  EXPECT_EQ(gold.front().gold_id, 310);
  for (const auto& r : gold) EXPECT_NO_THROW(validate_gold_record(r));
}

TEST(Gold, FormatParseRoundTrip) {
  const auto gold = load_gold_benchmark(kData / "benchmark" / "gold.tsv");
  EXPECT_EQ(parse_gold_benchmark(format_gold_benchmark(gold)), gold);
}

TEST(Gold, SynonymsAreLookedUpPerSlot) {
  const auto gold = load_gold_benchmark(kData / "benchmark" / "gold.tsv");
  const auto& accel = gold.front();
  EXPECT_EQ(accel.synonyms_for("duration").count("time"), 1u);
  EXPECT_TRUE(accel.synonyms_for("nothing").empty());
}

TEST(Gold, ValidationNamesTheRecord) {
  GoldRecord r;
  r.gold_id = 999;
  r.qid = "not-a-qid";
  r.concept_name = "x";
  r.formula = "x = y";
  try {
    validate_gold_record(r);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("999"), std::string::npos);
  }
}

TEST(Source, ParseIsCaseInsensitive) {
  EXPECT_EQ(parse_source("ArXiv"), Source::Arxiv);
  EXPECT_EQ(parse_source("wikipedia"), Source::Wikipedia);
  EXPECT_EQ(to_string(Source::Wikidata), "wikidata");
  EXPECT_THROW(parse_source("bogus"), Error);
}
