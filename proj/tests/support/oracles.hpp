// SPDX-License-Identifier: Apache-2.0
// Reference implementations used only by the tests. They share no code with
// the catalog builder or the formula parser.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mathqa/corpus.hpp"

namespace oracle {

using Counts = std::map<std::string, std::map<std::string, std::uint64_t>>;

struct CatalogCounts {
  Counts symbol_to_name;
  Counts name_to_symbol;
  Counts term_to_formula;
};

/// Counts (identifier, word) and (word, formula) pairs by scanning each
/// document code point by code point around every formula occurrence.
CatalogCounts count_catalogs(const std::vector<mathqa::Document>& corpus, std::size_t radius,
                             const std::set<std::string>& stopwords);

std::set<std::string> read_stopwords(const std::string& path);

/// Evaluates the right-hand side of "lhs = rhs" with a small recursive
/// descent reader over the LaTeX text.
double evaluate_rhs(const std::string& formula, const std::map<std::string, double>& values);
/// The identifiers the reader saw, in first-occurrence order, lhs included.
std::vector<std::string> identifiers(const std::string& formula);

/// Gold ids of the benchmark formulas that are outside the algebraic subset,
/// classified by hand.
const std::set<int>& non_algebraic_gold_ids();

}  // namespace oracle
