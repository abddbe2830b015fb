// SPDX-License-Identifier: Apache-2.0
#include "mathqa/retrieval.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mathqa/errors.hpp"
#include "mathqa/utf8.hpp"

namespace mathqa {
namespace {

void require_kind(const Catalog& c, CatalogKind kind) {
  if (c.kind() != kind) {
    throw ContractError("expected a " + std::string(to_string(kind)) + " catalog, got " +
                        std::string(to_string(c.kind())));
  }
}

void require_k(std::size_t k) {
  if (k == 0) throw ContractError("k must be at least 1");
}

RankedList lookup(std::string_view key, const Catalog& c, std::size_t k) {
  require_k(k);
  std::vector<RankedResult> results;
  if (const auto* list = c.find(key)) {
    for (const auto& cand : *list) results.push_back({cand.value, static_cast<double>(cand.frequency), 0, {}});
  }
  return rank_results(std::string(key), std::move(results), k);
}

std::vector<std::string> provenance_of(const FormulaInventory* inventory, const std::string& formula) {
  if (inventory == nullptr) return {};
  const auto it = inventory->formulas.find(formula);
  if (it == inventory->formulas.end()) return {};
  return {it->second.doc_ids.begin(), it->second.doc_ids.end()};
}

std::string join_operands(const std::vector<std::string>& ops) {
  std::string out;
  for (const auto& o : ops) {
    if (!out.empty()) out += ", ";
    out += o;
  }
  return out;
}

}  // namespace

RankedList rank_results(std::string query, std::vector<RankedResult> results, std::size_t k) {
  std::sort(results.begin(), results.end(), [](const RankedResult& a, const RankedResult& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.value < b.value;
  });
  if (results.size() > k) results.resize(k);
  for (std::size_t i = 0; i < results.size(); ++i) results[i].rank = i + 1;
  return {std::move(query), std::move(results)};
}

RankedList names_to_symbols(std::string_view name, const Catalog& name_to_symbol, std::size_t k) {
  require_kind(name_to_symbol, CatalogKind::NameToSymbol);
  return lookup(utf8::to_lower(utf8::trim(name)), name_to_symbol, k);
}

RankedList symbols_to_names(std::string_view symbol, const Catalog& symbol_to_name, std::size_t k) {
  require_kind(symbol_to_name, CatalogKind::SymbolToName);
  return lookup(utf8::trim(symbol), symbol_to_name, k);
}

RankedList formulas_by_identifiers(const std::vector<std::string>& operands, OperandMode mode, const Index& index,
                                   std::size_t k) {
  require_k(k);
  if (operands.size() < 2) throw ContractError("relationship search needs at least two operands");
  RankedList empty{join_operands(operands), {}};
  std::set<std::string> symbols;
  for (const auto& op : operands) {
    if (mode == OperandMode::Symbols) {
      symbols.insert(std::string(utf8::trim(op)));
      continue;
    }
    const auto* list = index.name_to_symbol.find(utf8::trim(op));
    if (list == nullptr || list->empty()) return empty;
    symbols.insert(list->front().value);
  }
  std::vector<RankedResult> results;
  for (const auto& [formula, stats] : index.formulas.formulas) {
    const bool contains_all = std::all_of(symbols.begin(), symbols.end(), [&](const std::string& s) {
      return std::find(stats.identifiers.begin(), stats.identifiers.end(), s) != stats.identifiers.end();
    });
    if (!contains_all) continue;
    const double score = static_cast<double>(symbols.size() * stats.count);
    results.push_back({formula, score, 0, {stats.doc_ids.begin(), stats.doc_ids.end()}});
  }
  return rank_results(empty.query, std::move(results), k);
}

std::vector<std::string> concept_words(std::string_view phrase) {
  std::vector<std::string> words;
  std::string word;
  const auto flush = [&] {
    if (!word.empty()) {
      std::string lower = utf8::to_lower(word);
      if (std::find(words.begin(), words.end(), lower) == words.end()) words.push_back(std::move(lower));
      word.clear();
    }
  };
  std::size_t pos = 0;
  while (pos < phrase.size()) {
    const std::size_t at = pos;
    const char32_t cp = utf8::decode(phrase, pos);
    if (utf8::is_letter(cp)) {
      word.append(phrase.substr(at, pos - at));
    } else {
      flush();
    }
  }
  flush();
  return words;
}

RankedList formulas_by_concept(std::string_view concept_name, const Catalog& term_to_formula, std::size_t k,
                               const FormulaInventory* inventory) {
  require_kind(term_to_formula, CatalogKind::TermToFormula);
  require_k(k);
  if (utf8::trim(concept_name).empty()) throw ContractError("concept must not be empty");
  std::map<std::string, double> union_scores;
  for (const auto& word : concept_words(concept_name)) {
    if (const auto* list = term_to_formula.find(word)) {
      for (const auto& cand : *list) union_scores[cand.value] += static_cast<double>(cand.frequency);
    }
  }
  std::vector<RankedResult> results;
  for (const auto& [formula, score] : union_scores) {
    results.push_back({formula, score, 0, provenance_of(inventory, formula)});
  }
  return rank_results(std::string(concept_name), std::move(results), k);
}

}  // namespace mathqa
