// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <random>

#include "mathqa/catalog.hpp"
#include "mathqa/errors.hpp"
#include "cases.hpp"
#include "oracles.hpp"

using namespace mathqa;
namespace fs = std::filesystem;

namespace {

const fs::path kData = MATHQA_DATA_DIR;

}  // namespace

TEST(Catalog, MatchesBruteForceCounterOnShippedCorpus) {
  const auto start = std::chrono::steady_clock::now();
  const auto docs = load_corpus(kData / "corpus" / "arxiv", Source::Arxiv);
  ASSERT_EQ(docs.size(), 20u);
  const auto stop_words = oracle::read_stopwords((kData / "stopwords_en.txt").string());
  const Stopwords stop(std::vector<std::string>(stop_words.begin(), stop_words.end()));
  BuildOptions opts;
  opts.stopwords = &stop;

  const Index index = build_index(docs, Source::Arxiv, opts);
  const auto expected = oracle::count_catalogs(docs, opts.radius, stop_words);

  EXPECT_EQ(index.symbol_to_name,
            Catalog::from_counts(CatalogKind::SymbolToName, Source::Arxiv, docs.size(), expected.symbol_to_name));
  EXPECT_EQ(index.name_to_symbol,
            Catalog::from_counts(CatalogKind::NameToSymbol, Source::Arxiv, docs.size(), expected.name_to_symbol));
  EXPECT_EQ(index.term_to_formula,
            Catalog::from_counts(CatalogKind::TermToFormula, Source::Arxiv, docs.size(), expected.term_to_formula));
  EXPECT_GT(index.symbol_to_name.pair_count(), 0u);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(10));
}

TEST(Catalog, ShippedStopwordListMatchesEmbeddedOne) {
  const auto words = oracle::read_stopwords((kData / "stopwords_en.txt").string());
  EXPECT_EQ(words.size(), Stopwords::english().size());
  for (const auto& w : words) EXPECT_TRUE(Stopwords::english().contains(w)) << w;
}

TEST(Catalog, InversionPreservesMass) {
  std::mt19937 rng(20240611);
  for (int i = 0; i < 100; ++i) {
    const Catalog c = cases::random_symbol_catalog(rng);
    const Catalog inv = invert_catalog(c);
    EXPECT_EQ(inv.kind(), CatalogKind::NameToSymbol);
    EXPECT_EQ(inv.total_frequency(), c.total_frequency());
    EXPECT_EQ(inv.pair_count(), c.pair_count());

    const Catalog round = cases::reinvert(inv);
    EXPECT_EQ(cases::frequencies(round), cases::frequencies(c));
    EXPECT_EQ(round, c);
  }
}

TEST(Catalog, InvertRejectsOtherKinds) {
  const Catalog c(CatalogKind::TermToFormula, Source::Fixture, 0);
  EXPECT_THROW(invert_catalog(c), ContractError);
}

TEST(Catalog, CandidatesSortedByFrequencyThenValue) {
  const Catalog c = Catalog::from_counts(CatalogKind::NameToSymbol, Source::Fixture, 1,
                                         {{"Speed", {{"v", 3}, {"s", 3}, {"c", 7}}}});
  const auto* list = c.find("SPEED");
  ASSERT_NE(list, nullptr);
  ASSERT_EQ(list->size(), 3u);
  EXPECT_EQ((*list)[0], (Candidate{"c", 7}));
  EXPECT_EQ((*list)[1], (Candidate{"s", 3}));
  EXPECT_EQ((*list)[2], (Candidate{"v", 3}));
}

TEST(Catalog, SymbolKeysAreCaseSensitive) {
  const Catalog c = Catalog::from_counts(CatalogKind::SymbolToName, Source::Fixture, 1,
                                         {{"E", {{"energy", 2}}}, {"e", {{"charge", 1}}}});
  ASSERT_NE(c.find("E"), nullptr);
  EXPECT_EQ(c.find("E")->front().value, "energy");
  EXPECT_EQ(c.find("e")->front().value, "charge");
}

TEST(Catalog, TextRoundTrip) {
  std::mt19937 rng(7);
  const Catalog c = cases::random_symbol_catalog(rng);
  EXPECT_EQ(parse_catalog(format_catalog(c)), c);
}

TEST(Catalog, IndexSaveLoadRoundTrip) {
  const auto docs = load_corpus(kData / "corpus" / "wikipedia", Source::Wikipedia);
  const Index index = build_index(docs, Source::Wikipedia);
  const fs::path dir = fs::temp_directory_path() / "mathqa_test_index";
  fs::remove_all(dir);
  save_index(index, dir);
  const Index loaded = load_index(dir);
  EXPECT_EQ(loaded.symbol_to_name, index.symbol_to_name);
  EXPECT_EQ(loaded.name_to_symbol, index.name_to_symbol);
  EXPECT_EQ(loaded.term_to_formula, index.term_to_formula);
  EXPECT_EQ(loaded.formulas, index.formulas);
  EXPECT_EQ(loaded.source(), Source::Wikipedia);
  fs::remove_all(dir);
}

TEST(Catalog, WindowExcludesMathAndMarkup) {
  Document d;
  d.doc_id = "w";
  d.body = "<p>The energy &amp; mass</p><math><mi>E</mi></math><b>of</b> light";
  const auto span = math_regions(d.body).at(0);
  const TokenWindow w = tokenize_window(d, span, 500);
  EXPECT_EQ(w.tokens, (std::vector<std::string>{"energy", "mass", "light"}));
}

TEST(Catalog, SubjectFilterRestrictsDocuments) {
  const auto docs = load_corpus(kData / "corpus" / "arxiv", Source::Arxiv);
  BuildOptions all;
  BuildOptions none;
  none.subject_filter = std::vector<std::string>{"no-such-class"};
  EXPECT_GT(build_identifier_catalog(docs, all).pair_count(), 0u);
  EXPECT_EQ(build_identifier_catalog(docs, none).pair_count(), 0u);
}
