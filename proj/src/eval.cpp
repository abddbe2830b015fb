// SPDX-License-Identifier: Apache-2.0
#include "mathqa/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mathqa/formula_text.hpp"
#include "mathqa/utf8.hpp"

namespace mathqa {
namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string normalize_value(std::string_view v, MatchKind kind) {
  const std::string_view t = utf8::trim(v);
  if (kind == MatchKind::Name) {
    std::string out;
    bool space = false;
    for (char c : utf8::to_lower(t)) {
      if (c == ' ' || c == '\t') {
        space = true;
        continue;
      }
      if (space && !out.empty()) out += ' ';
      space = false;
      out += c;
    }
    return out;
  }
  return normalize_formula(t);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

std::string cell(std::string s) {
  std::replace(s.begin(), s.end(), '\t', ' ');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

RankedList from_hits(std::string query, const std::vector<KgHit>& hits, std::size_t k) {
  RankedList out{std::move(query), {}};
  for (const auto& h : hits) {
    if (out.results.size() == k) break;
    out.results.push_back({h.formula, static_cast<double>(h.identifier_count), out.results.size() + 1, {h.qid}});
  }
  return out;
}

template <class F>
std::vector<std::string> distinct(const GoldRecord& r, F field) {
  std::vector<std::string> out;
  for (const auto& a : r.annotations) {
    const std::string v = field(a);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

const Index* index_for(Source s, const EvalSources& sources) {
  return s == Source::Arxiv ? sources.arxiv : (s == Source::Wikipedia ? sources.wikipedia : nullptr);
}

}  // namespace

std::string_view to_string(QueryKind k) {
  switch (k) {
    case QueryKind::NamesToSymbols:
      return "names to symbols";
    case QueryKind::SymbolsToNames:
      return "symbols to names";
    case QueryKind::RelNames:
      return "identifier names";
    case QueryKind::RelSymbols:
      return "identifier symbols";
    case QueryKind::ConceptName:
      return "formula names";
  }
  return "names to symbols";
}

EvalMode EvalMode::from_id(int mode_id) {
  if (mode_id < 1 || mode_id > 15) throw ValidationError("mode must be in 1..15, got " + std::to_string(mode_id));
  static constexpr QueryKind kinds[] = {QueryKind::NamesToSymbols, QueryKind::SymbolsToNames, QueryKind::RelNames,
                                        QueryKind::RelSymbols, QueryKind::ConceptName};
  static constexpr Source sources[] = {Source::Arxiv, Source::Wikipedia, Source::Wikidata};
  return {mode_id, kinds[(mode_id - 1) / 3], sources[(mode_id - 1) % 3]};
}

std::string EvalMode::label() const {
  std::string source_name = source == Source::Arxiv ? "arXiv" : (source == Source::Wikipedia ? "Wikipedia" : "Wikidata");
  return std::string(to_string(kind)) + ", " + source_name;
}

std::vector<int> parse_mode_list(std::string_view spec) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', pos), spec.size());
    const std::string part(utf8::trim(spec.substr(pos, comma - pos)));
    pos = comma + 1;
    if (part.empty()) throw ValidationError("empty entry in mode list '" + std::string(spec) + "'");
    const auto dash = part.find('-');
    try {
      std::size_t used = 0;
      const int lo = std::stoi(part.substr(0, dash), &used);
      if (used != (dash == std::string::npos ? part.size() : dash)) throw std::invalid_argument(part);
      int hi = lo;
      if (dash != std::string::npos) {
        const std::string rest = part.substr(dash + 1);
        hi = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(part);
      }
      if (hi < lo) throw ValidationError("descending mode range '" + part + "'");
      for (int m = lo; m <= hi; ++m) {
        EvalMode::from_id(m);
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
      }
    } catch (const std::logic_error&) {
      throw ValidationError("malformed mode list entry '" + part + "'");
    }
  }
  return out;
}

double dcg(const std::vector<RankedJudgment>& judgments, std::size_t p) {
  std::set<std::size_t> seen;
  double sum = 0;
  for (const auto& j : judgments) {
    if (j.rank < 1 || j.rank > p) {
      throw ContractError("rank " + std::to_string(j.rank) + " outside 1.." + std::to_string(p));
    }
    if (!seen.insert(j.rank).second) throw ValidationError("rank " + std::to_string(j.rank) + " judged twice");
    sum += j.score / std::log2(static_cast<double>(j.rank) + 1.0);
  }
  return sum;
}

std::vector<RankedJudgment> score_results(const RankedList& ranked, const std::string& gold_value,
                                          const std::set<std::string>& synonyms, MatchKind kind) {
  const std::string gold = normalize_value(gold_value, kind);
  std::set<std::string> syn;
  for (const auto& s : synonyms) syn.insert(normalize_value(s, kind));
  if (syn.count(gold) != 0) throw ContractError("benchmark value '" + gold_value + "' is listed as its own synonym");
  std::vector<RankedJudgment> out;
  for (const auto& r : ranked.results) {
    const std::string v = normalize_value(r.value, kind);
    const int score = v == gold ? 2 : (syn.count(v) != 0 ? 1 : 0);
    if (score > 0) out.push_back({score, r.rank});
  }
  return out;
}

double top1_accuracy(const std::vector<int>& top_scores) {
  if (top_scores.empty()) throw ContractError("top-1 accuracy of no evaluations");
  const auto hits = std::count_if(top_scores.begin(), top_scores.end(), [](int s) { return s >= 1; });
  return static_cast<double>(hits) / static_cast<double>(top_scores.size());
}

void check_sources(const std::vector<EvalMode>& modes, const EvalSources& sources) {
  for (const auto& m : modes) {
    const bool ok = m.source == Source::Wikidata ? sources.wikidata != nullptr : index_for(m.source, sources) != nullptr;
    if (!ok) {
      throw ConfigError("mode " + std::to_string(m.mode_id) + " (" + m.label() + ") needs a " +
                        std::string(to_string(m.source)) + " source");
    }
  }
  if (sources.k == 0) throw ConfigError("k must be at least 1");
}

ModeResult run_mode(const EvalMode& mode, const std::vector<GoldRecord>& gold, const EvalSources& sources) {
  if (gold.empty()) throw ValidationError("the gold benchmark is empty");
  check_sources({mode}, sources);
  const Index* index = index_for(mode.source, sources);
  const KgClient* kg = sources.wikidata;
  const std::size_t k = sources.k;

  std::optional<Catalog> kg_symbols, kg_names;
  if (mode.source == Source::Wikidata &&
      (mode.kind == QueryKind::NamesToSymbols || mode.kind == QueryKind::SymbolsToNames)) {
    kg_symbols = kg->symbol_catalog();
    kg_names = invert_catalog(*kg_symbols);
  }

  ModeResult result;
  result.mode = mode;
  std::vector<int> top_scores;
  const auto record = [&](int gold_id, const RankedList& ranked, const std::string& benchmark,
                          const std::set<std::string>& synonyms, MatchKind kind) {
    QueryEvaluation q;
    q.gold_id = gold_id;
    q.query = ranked.query;
    q.benchmark = benchmark;
    q.judgments = score_results(ranked, benchmark, synonyms, kind);
    for (const auto& j : q.judgments) q.matches.push_back(ranked.results[j.rank - 1].value);
    q.dcg = dcg(q.judgments, std::max(k, kDcgCutoff));
    top_scores.push_back(!q.judgments.empty() && q.judgments.front().rank == 1 ? q.judgments.front().score : 0);
    result.per_query.push_back(std::move(q));
  };

  for (const auto& r : gold) {
    switch (mode.kind) {
      case QueryKind::NamesToSymbols:
        for (const auto& a : r.annotations) {
          const RankedList ranked = index ? names_to_symbols(a.name, index->name_to_symbol, k)
                                          : names_to_symbols(a.name, *kg_names, k);
          record(r.gold_id, ranked, a.symbol, r.synonyms_for(a.symbol), MatchKind::Symbol);
        }
        break;
      case QueryKind::SymbolsToNames:
        for (const auto& a : r.annotations) {
          const RankedList ranked = index ? symbols_to_names(a.symbol, index->symbol_to_name, k)
                                          : symbols_to_names(a.symbol, *kg_symbols, k);
          record(r.gold_id, ranked, a.name, r.synonyms_for(a.name), MatchKind::Name);
        }
        break;
      case QueryKind::RelNames:
      case QueryKind::RelSymbols: {
        const bool names = mode.kind == QueryKind::RelNames;
        const auto operands = names ? distinct(r, [](const IdentifierAnnotation& a) { return a.name; })
                                    : distinct(r, [](const IdentifierAnnotation& a) { return a.symbol; });
        if (operands.size() < 2) break;
        RankedList ranked;
        if (index) {
          ranked = formulas_by_identifiers(operands, names ? OperandMode::Names : OperandMode::Symbols, *index, k);
        } else {
          ranked = from_hits(join(operands, ", "),
                             names ? kg->relationship_by_names(operands) : kg->relationship_by_symbols(operands), k);
        }
        record(r.gold_id, ranked, r.formula, r.synonyms_for("formula"), MatchKind::Formula);
        break;
      }
      case QueryKind::ConceptName: {
        RankedList ranked;
        if (index) {
          ranked = formulas_by_concept(r.concept_name, index->term_to_formula, k, &index->formulas);
        } else {
          const ConceptLookup found = kg->concept_formula(r.concept_name);
          std::vector<KgHit> hits;
          if (found.outcome == LookupOutcome::Found) {
            hits.push_back({found.item->qid, found.item->label, found.item->defining_formula.value_or(""), 0, "P2534"});
          } else {
            for (const auto& c : found.candidates) {
              if (c.formula) hits.push_back({c.qid, c.label, *c.formula, 0, "P2534"});
            }
          }
          ranked = from_hits(r.concept_name, hits, k);
        }
        record(r.gold_id, ranked, r.formula, r.synonyms_for("formula"), MatchKind::Formula);
        break;
      }
    }
  }

  if (!top_scores.empty()) {
    result.top1_accuracy = top1_accuracy(top_scores);
    double sum = 0;
    for (const auto& q : result.per_query) sum += q.dcg;
    result.mean_dcg = sum / static_cast<double>(result.per_query.size());
  }
  return result;
}

std::vector<ModeResult> run_modes(const std::vector<int>& mode_ids, const std::vector<GoldRecord>& gold,
                                  const EvalSources& sources) {
  if (gold.empty()) throw ValidationError("the gold benchmark is empty");
  std::vector<EvalMode> modes;
  for (int id : mode_ids) modes.push_back(EvalMode::from_id(id));
  check_sources(modes, sources);
  std::vector<ModeResult> out;
  for (const auto& m : modes) out.push_back(run_mode(m, gold, sources));
  return out;
}

std::string format_summary(const std::vector<ModeResult>& results) {
  std::string out = "Mode\tQuery\tTop1 Acc.\tmean(DCG)\n";
  for (const auto& r : results) {
    out += std::to_string(r.mode.mode_id) + "\t" + r.mode.label() + "\t" + fixed2(r.top1_accuracy) + "\t" +
           fixed2(r.mean_dcg) + "\n";
  }
  return out;
}

std::string format_detail(const std::vector<ModeResult>& results) {
  std::string out = "Mode\tGoldID\tQuery\tBenchmark\tMatches\t(Score,Rank)\tDCG\n";
  for (const auto& r : results) {
    for (const auto& q : r.per_query) {
      std::vector<std::string> pairs;
      for (const auto& j : q.judgments) pairs.push_back("(" + std::to_string(j.score) + "," + std::to_string(j.rank) + ")");
      out += std::to_string(r.mode.mode_id) + "\t" + std::to_string(q.gold_id) + "\t" + cell(q.query) + "\t" +
             cell(q.benchmark) + "\t" + cell(join(q.matches, ", ")) + "\t" + join(pairs, ", ") + "\t" + fixed2(q.dcg) +
             "\n";
    }
  }
  return out;
}

void emit_report(const std::vector<ModeResult>& results, const std::filesystem::path& dir) {
  write_file(dir / "summary.tsv", format_summary(results));
  write_file(dir / "detail.tsv", format_detail(results));
}

}  // namespace mathqa
