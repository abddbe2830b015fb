// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mathqa/catalog.hpp"

namespace mathqa {

inline constexpr std::size_t kDefaultTopK = 10;

struct RankedResult {
  std::string value;
  double score = 0;
  std::size_t rank = 0;  // 1-based
  std::vector<std::string> provenance;

  friend bool operator==(const RankedResult&, const RankedResult&) = default;
};

struct RankedList {
  std::string query;
  std::vector<RankedResult> results;

  bool empty() const { return results.empty(); }
  friend bool operator==(const RankedList&, const RankedList&) = default;
};

enum class OperandMode { Names, Symbols };

/// Sorts (value, score) pairs by score descending then value, assigns ranks
/// from 1 and truncates to k.
RankedList rank_results(std::string query, std::vector<RankedResult> results, std::size_t k);

RankedList names_to_symbols(std::string_view name, const Catalog& name_to_symbol, std::size_t k = kDefaultTopK);
RankedList symbols_to_names(std::string_view symbol, const Catalog& symbol_to_name, std::size_t k = kDefaultTopK);

/// Formulas whose identifier set contains every operand. Names are first
/// translated to their top-1 symbol; an untranslatable name yields an empty
/// list. A formula scores its operand count times its duplicate count.
RankedList formulas_by_identifiers(const std::vector<std::string>& operands, OperandMode mode, const Index& index,
                                   std::size_t k = kDefaultTopK);

/// Union of the per-word postings of a concept phrase, scored by summed frequency.
RankedList formulas_by_concept(std::string_view concept_name, const Catalog& term_to_formula,
                               std::size_t k = kDefaultTopK, const FormulaInventory* inventory = nullptr);

/// Lowercase letter runs of a phrase, the same way corpus windows are split.
std::vector<std::string> concept_words(std::string_view phrase);

}  // namespace mathqa
