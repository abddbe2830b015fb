// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "mathqa/eval.hpp"
#include "mathqa/graph_endpoint.hpp"

using namespace mathqa;
namespace fs = std::filesystem;

namespace {

const fs::path kData = MATHQA_DATA_DIR;

double reference_dcg(std::initializer_list<std::pair<int, int>> pairs) {
  double sum = 0;
  for (const auto& [score, rank] : pairs) sum += score / (std::log(rank + 1.0) / std::log(2.0));
  return sum;
}

std::vector<RankedJudgment> judged(std::initializer_list<std::pair<int, int>> pairs) {
  std::vector<RankedJudgment> out;
  for (const auto& [s, r] : pairs) out.push_back({s, static_cast<std::size_t>(r)});
  return out;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(Dcg, ReferenceExamples) {
  EXPECT_NEAR(dcg(judged({{2, 2}, {1, 5}, {1, 10}})), 1.94, 0.005);
  EXPECT_NEAR(dcg(judged({{2, 1}, {1, 2}, {1, 4}, {1, 5}})), 3.45, 0.005);
  EXPECT_NEAR(dcg(judged({{1, 3}})), 0.5, 0.005);
  EXPECT_NEAR(dcg(judged({{1, 1}, {1, 8}, {1, 9}})), 1.62, 0.005);
  EXPECT_NEAR(dcg(judged({{1, 1}})), 1.0, 0.005);
}

TEST(Dcg, MatchesClosedForm) {
  for (auto pairs : {judged({{2, 1}, {1, 4}}), judged({{2, 2}, {1, 4}}), judged({{1, 7}, {2, 3}})}) {
    double want = 0;
    for (const auto& j : pairs) want += j.score / std::log2(j.rank + 1.0);
    EXPECT_DOUBLE_EQ(dcg(pairs), want);
  }
  EXPECT_NEAR(dcg(judged({{2, 1}, {1, 4}})), reference_dcg({{2, 1}, {1, 4}}), 1e-12);
  EXPECT_NEAR(dcg(judged({{2, 1}, {1, 4}})), 2.4307, 1e-4);
  EXPECT_NEAR(dcg(judged({{2, 2}, {1, 4}})), 1.69, 0.005);
}

TEST(Dcg, IdealSumOfTwoGradesOverTenRanks) {
  std::vector<RankedJudgment> all;
  for (int r = 1; r <= 10; ++r) all.push_back({2, static_cast<std::size_t>(r)});
  EXPECT_NEAR(dcg(all), 9.09, 0.01);
}

TEST(Dcg, RejectsBadRanks) {
  EXPECT_THROW(dcg(judged({{1, 2}, {2, 2}})), ValidationError);
  EXPECT_THROW(dcg(judged({{1, 0}})), ContractError);
  EXPECT_THROW(dcg(judged({{1, 11}})), ContractError);
  EXPECT_DOUBLE_EQ(dcg({}), 0.0);
}

TEST(Scoring, GoldAndSynonymsOnly) {
  RankedList list;
  list.results = {{"time", 9, 1, {}}, {"Duration", 8, 2, {}}, {"mass", 7, 3, {}}};
  const auto j = score_results(list, "duration", {"time"}, MatchKind::Name);
  EXPECT_EQ(j, (std::vector<RankedJudgment>{{1, 1}, {2, 2}}));

  RankedList formulas;
  formulas.results = {{"E=mc^{2}", 1, 1, {}}, {"E = h\\nu", 1, 2, {}}};
  EXPECT_EQ(score_results(formulas, "E = m c^2", {}), (std::vector<RankedJudgment>{{2, 1}}));
}

TEST(Scoring, TopOneAccuracy) {
  EXPECT_DOUBLE_EQ(top1_accuracy({2, 1, 0, 0}), 0.5);
  EXPECT_THROW(top1_accuracy({}), ContractError);
}

TEST(Modes, IdsLabelsAndLists) {
  EXPECT_EQ(EvalMode::from_id(1).label(), "names to symbols, arXiv");
  EXPECT_EQ(EvalMode::from_id(15).source, Source::Wikidata);
  EXPECT_EQ(EvalMode::from_id(13).kind, QueryKind::ConceptName);
  EXPECT_THROW(EvalMode::from_id(16), Error);
  EXPECT_EQ(parse_mode_list("1-3,9"), (std::vector<int>{1, 2, 3, 9}));
  EXPECT_EQ(parse_mode_list("1-15").size(), 15u);
  EXPECT_THROW(parse_mode_list("x"), Error);
}

TEST(Modes, MissingSourceIsConfigError) {
  EXPECT_THROW(check_sources({EvalMode::from_id(1)}, EvalSources{}), ConfigError);
}

TEST(Modes, WikidataModesOverGraph) {
  const auto gold = load_gold_benchmark(kData / "benchmark" / "gold.tsv");
  GraphEndpoint g = GraphEndpoint::load(kData / "kg" / "graph.json");
  const KgClient kg(g);
  EvalSources sources;
  sources.wikidata = &kg;
  const auto r15 = run_mode(EvalMode::from_id(15), gold, sources);
  EXPECT_EQ(r15.per_query.size(), gold.size());
  EXPECT_GT(r15.top1_accuracy, 0.9);
  EXPECT_LE(r15.mean_dcg, 2.0 + 1e-9);
  EXPECT_THROW(run_mode(EvalMode::from_id(15), {}, sources), ValidationError);
}

TEST(Report, FifteenRowSummaryIsDeterministic) {
  const auto gold = load_gold_benchmark(kData / "benchmark" / "gold.tsv");
  const Index arxiv = build_index(load_corpus(kData / "corpus" / "arxiv", Source::Arxiv), Source::Arxiv);
  const Index wiki =
      build_index(load_corpus(kData / "corpus" / "wikipedia", Source::Wikipedia), Source::Wikipedia);
  FixtureEndpoint fixtures(kData / "kg" / "fixtures");
  const KgClient kg(fixtures);
  const EvalSources sources{&arxiv, &wiki, &kg, kDcgCutoff};
  const auto modes = parse_mode_list("1-15");
  const auto a = run_modes(modes, gold, sources);
  const auto b = run_modes(modes, gold, sources);
  const std::string summary = format_summary(a);
  EXPECT_EQ(summary, format_summary(b));
  EXPECT_EQ(format_detail(a), format_detail(b));
  EXPECT_EQ(count_lines(summary), 16u);
  EXPECT_EQ(summary.substr(0, summary.find('\n')), "Mode\tQuery\tTop1 Acc.\tmean(DCG)");

  const fs::path dir = fs::temp_directory_path() / "mathqa_test_report";
  fs::remove_all(dir);
  emit_report(a, dir);
  EXPECT_EQ(read_file(dir / "summary.tsv"), summary);
  EXPECT_TRUE(fs::exists(dir / "detail.tsv"));
  fs::remove_all(dir);
}
