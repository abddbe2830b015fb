// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "mathqa/catalog.hpp"
#include "mathqa/corpus.hpp"
#include "mathqa/kg.hpp"
#include "mathqa/retrieval.hpp"

namespace mathqa {

inline constexpr std::size_t kDcgCutoff = 10;

struct RankedJudgment {
  int score = 0;  // 0, 1 or 2
  std::size_t rank = 1;

  friend bool operator==(const RankedJudgment&, const RankedJudgment&) = default;
};

enum class QueryKind { NamesToSymbols, SymbolsToNames, RelNames, RelSymbols, ConceptName };

std::string_view to_string(QueryKind k);

struct EvalMode {
  int mode_id = 1;
  QueryKind kind = QueryKind::NamesToSymbols;
  Source source = Source::Arxiv;

  /// Modes 1..15: three sources (arXiv, Wikipedia, Wikidata) per query kind.
  static EvalMode from_id(int mode_id);
  /// e.g. "names to symbols, arXiv".
  std::string label() const;
};

/// Parses "1-15", "3,6,9" or mixtures of both.
std::vector<int> parse_mode_list(std::string_view spec);

/// How result values are compared with the benchmark before scoring.
enum class MatchKind { Symbol, Name, Formula };

struct QueryEvaluation {
  int gold_id = 0;
  std::string query;
  std::string benchmark;
  std::vector<std::string> matches;  // values of the positively judged results, by rank
  std::vector<RankedJudgment> judgments;
  double dcg = 0;
};

struct ModeResult {
  EvalMode mode;
  std::vector<QueryEvaluation> per_query;
  double top1_accuracy = 0;
  double mean_dcg = 0;
};

/// Sum of score / log2(rank + 1). Throws ValidationError on a repeated rank
/// and ContractError on a rank outside 1..p.
double dcg(const std::vector<RankedJudgment>& judgments, std::size_t p = kDcgCutoff);

/// 2 for the benchmark value, 1 for a synonym; zero scores are left out.
std::vector<RankedJudgment> score_results(const RankedList& ranked, const std::string& gold_value,
                                          const std::set<std::string>& synonyms,
                                          MatchKind kind = MatchKind::Formula);

/// Fraction of scores that are 1 or 2. Throws ContractError on an empty list.
double top1_accuracy(const std::vector<int>& top_scores);

struct EvalSources {
  const Index* arxiv = nullptr;
  const Index* wikipedia = nullptr;
  const KgClient* wikidata = nullptr;
  std::size_t k = kDcgCutoff;
};

/// Throws ConfigError when a mode's source is not available.
void check_sources(const std::vector<EvalMode>& modes, const EvalSources& sources);

/// Throws ValidationError on an empty gold list.
ModeResult run_mode(const EvalMode& mode, const std::vector<GoldRecord>& gold, const EvalSources& sources);
std::vector<ModeResult> run_modes(const std::vector<int>& mode_ids, const std::vector<GoldRecord>& gold,
                                  const EvalSources& sources);

/// Mode, Query, Top1 Acc., mean(DCG).
std::string format_summary(const std::vector<ModeResult>& results);
/// Mode, GoldID, Query, Benchmark, Matches, (Score,Rank), DCG.
std::string format_detail(const std::vector<ModeResult>& results);
/// Writes summary.tsv and detail.tsv into `dir`.
void emit_report(const std::vector<ModeResult>& results, const std::filesystem::path& dir);

}  // namespace mathqa
