// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mathqa/errors.hpp"

namespace mathqa {

enum class QueryPurpose {
  Relationship,     // arguments: property, qid...
  SymbolLookup,     // no arguments
  ConceptFormula,   // arguments: label, language
  Geometry,         // arguments: object label, property label
  ItemIdentifiers,  // arguments: qid
  FormulaSymbols,   // arguments: symbol...
  Ask,              // arguments: qid
};

std::string_view to_string(QueryPurpose p);
QueryPurpose parse_query_purpose(std::string_view s);

struct SparqlQuery {
  std::string text;
  QueryPurpose purpose = QueryPurpose::Ask;
  std::vector<std::string> expected_columns;
  std::vector<std::string> arguments;
};

/// A SELECT result (columns and rows of optional cells) or an ASK result,
/// which has the single column "boolean" and one row.
struct SparqlResult {
  std::vector<std::string> columns;
  std::vector<std::map<std::string, std::string>> rows;

  std::optional<std::string> cell(std::size_t row, const std::string& column) const;
  friend bool operator==(const SparqlResult&, const SparqlResult&) = default;
};

/// "http://www.wikidata.org/entity/Q42" and "Q42" both yield "Q42".
std::string entity_id(std::string_view uri_or_id);
bool is_qid(std::string_view s);
std::uint64_t qid_number(std::string_view qid);

/// One `?item wdt:<property> wd:<qid>.` clause per part item.
/// `property` is P527 (has part) or P4934 (calculated from).
SparqlQuery build_relationship_query(const std::vector<std::string>& part_qids, std::string_view property = "P527");
/// Both the has-part query and its calculated-from sibling.
std::vector<SparqlQuery> build_relationship_queries(const std::vector<std::string>& part_qids);
/// UNION of quantity symbol (string), quantity symbol (LaTeX) and in defining formula.
SparqlQuery build_symbol_lookup_query();
/// Items labelled `concept` with their defining formula when present.
SparqlQuery build_concept_formula_query(std::string_view concept_name, std::string_view lang = "en");
/// Direct area/volume properties and has-quality links of a geometric object.
SparqlQuery build_geometry_query(std::string_view object, std::string_view property, std::string_view lang = "en");
/// Identifier annotations of an item in both data-model schemes, with numeric values of linked items.
SparqlQuery build_item_identifiers_query(std::string_view qid, std::string_view lang = "en");
/// Items whose defining formula mentions every symbol.
SparqlQuery build_formula_symbols_query(const std::vector<std::string>& symbols, std::string_view lang = "en");
SparqlQuery build_ask_formula_query(std::string_view qid);

/// Collapses whitespace runs and trims, so layout changes keep the hash.
std::string normalize_query_text(std::string_view text);
/// 16 lowercase hex digits of the 64-bit FNV-1a hash of the normalized text.
std::string query_hash(std::string_view text);
inline std::string query_hash(const SparqlQuery& q) { return query_hash(q.text); }

/// Standard SPARQL 1.1 JSON results format.
SparqlResult parse_sparql_json(std::string_view body);
std::string format_sparql_json(const SparqlResult& result);

/// True when braces, brackets and parentheses outside string literals are balanced.
bool balanced(std::string_view query_text);

}  // namespace mathqa
