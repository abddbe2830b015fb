// SPDX-License-Identifier: Apache-2.0
#include "mathqa/sparql.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "mathqa/formula_text.hpp"

namespace mathqa {
namespace {

using nlohmann::json;

constexpr std::string_view kEntityPrefix = "http://www.wikidata.org/entity/";
constexpr std::string_view kLabelService =
    "SERVICE wikibase:label {\n"
    "    bd:serviceParam wikibase:language \"";

std::string label_service(std::string_view lang) {
  return std::string(kLabelService) + std::string(lang) + "\".}";
}

std::string literal(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

void require_qid(std::string_view qid) {
  if (!is_qid(qid)) throw ValidationError("malformed item id '" + std::string(qid) + "'");
}

void require_lang(std::string_view lang) {
  const bool ok = !lang.empty() && std::all_of(lang.begin(), lang.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-';
  });
  if (!ok) throw ValidationError("malformed language tag '" + std::string(lang) + "'");
}

std::string trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// A symbol as it appears inside a LaTeX formula string.
std::string latex_spelling(const std::string& symbol) {
  if (auto cmd = greek_command(symbol)) return "\\" + *cmd;
  return symbol;
}

}  // namespace

std::string_view to_string(QueryPurpose p) {
  switch (p) {
    case QueryPurpose::Relationship:
      return "relationship";
    case QueryPurpose::SymbolLookup:
      return "symbol_lookup";
    case QueryPurpose::ConceptFormula:
      return "concept_formula";
    case QueryPurpose::Geometry:
      return "geometry";
    case QueryPurpose::ItemIdentifiers:
      return "item_identifiers";
    case QueryPurpose::FormulaSymbols:
      return "formula_symbols";
    case QueryPurpose::Ask:
      return "ask";
  }
  return "ask";
}

QueryPurpose parse_query_purpose(std::string_view s) {
  for (QueryPurpose p : {QueryPurpose::Relationship, QueryPurpose::SymbolLookup, QueryPurpose::ConceptFormula,
                         QueryPurpose::Geometry, QueryPurpose::ItemIdentifiers, QueryPurpose::FormulaSymbols,
                         QueryPurpose::Ask}) {
    if (to_string(p) == s) return p;
  }
  throw ValidationError("unknown query purpose '" + std::string(s) + "'");
}

std::optional<std::string> SparqlResult::cell(std::size_t row, const std::string& column) const {
  if (row >= rows.size()) return std::nullopt;
  const auto it = rows[row].find(column);
  if (it == rows[row].end()) return std::nullopt;
  return it->second;
}

std::string entity_id(std::string_view s) {
  if (s.substr(0, kEntityPrefix.size()) == kEntityPrefix) s.remove_prefix(kEntityPrefix.size());
  return std::string(s);
}

bool is_qid(std::string_view s) {
  return s.size() >= 2 && s.size() <= 19 && s[0] == 'Q' &&
         std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::uint64_t qid_number(std::string_view qid) {
  require_qid(qid);
  return std::stoull(std::string(qid.substr(1)));
}

SparqlQuery build_relationship_query(const std::vector<std::string>& part_qids, std::string_view property) {
  if (part_qids.size() < 2) throw ContractError("a relationship query needs at least two part items");
  if (property != "P527" && property != "P4934") {
    throw ValidationError("relationship property must be P527 or P4934, got '" + std::string(property) + "'");
  }
  for (const auto& q : part_qids) require_qid(q);
  const std::string p(property);
  SparqlQuery q;
  q.purpose = QueryPurpose::Relationship;
  q.expected_columns = {"item", "itemLabel", "formula", "parts", "partsLabel"};
  q.arguments.push_back(p);
  q.text = "SELECT ?item ?itemLabel ?formula ?parts ?partsLabel\nWHERE {\n";
  for (const auto& qid : part_qids) {
    q.text += "    ?item wdt:" + p + " wd:" + qid + ".\n";
    q.arguments.push_back(qid);
  }
  q.text += "    ?item wdt:P2534 ?formula.\n";
  q.text += "    ?item wdt:" + p + " ?parts\n";
  q.text += label_service("en") + "}\n";
  return q;
}

std::vector<SparqlQuery> build_relationship_queries(const std::vector<std::string>& part_qids) {
  return {build_relationship_query(part_qids, "P527"), build_relationship_query(part_qids, "P4934")};
}

SparqlQuery build_symbol_lookup_query() {
  SparqlQuery q;
  q.purpose = QueryPurpose::SymbolLookup;
  q.expected_columns = {"item", "itemLabel", "symbol", "property"};
  q.text =
      "SELECT ?item ?itemLabel ?symbol ?property\n"
      "WHERE {\n"
      "  { ?item wdt:P416 ?symbol. BIND(\"P416\" AS ?property) }\n"
      "  UNION\n"
      "  { ?item wdt:P7973 ?symbol. BIND(\"P7973\" AS ?property) }\n"
      "  UNION\n"
      "  { ?formulaItem p:P7235 ?statement. ?statement ps:P7235 ?symbol; pq:P9758 ?item.\n"
      "    BIND(\"P7235\" AS ?property) }\n" +
      label_service("en") + "\n}\n";
  return q;
}

SparqlQuery build_concept_formula_query(std::string_view concept_name, std::string_view lang) {
  const std::string label = trimmed(concept_name);
  if (label.empty()) throw ValidationError("concept must not be empty");
  require_lang(lang);
  SparqlQuery q;
  q.purpose = QueryPurpose::ConceptFormula;
  q.expected_columns = {"item", "itemLabel", "formula"};
  q.arguments = {label, std::string(lang)};
  q.text = "SELECT ?item ?itemLabel ?formula\nWHERE {\n    ?item rdfs:label " + literal(label) + "@" +
           std::string(lang) + ".\n    OPTIONAL { ?item wdt:P2534 ?formula. }\n" + label_service(lang) + "}\n";
  return q;
}

SparqlQuery build_geometry_query(std::string_view object, std::string_view property, std::string_view lang) {
  const std::string obj = trimmed(object);
  const std::string prop = trimmed(property);
  if (obj.empty() || prop.empty()) throw ValidationError("geometry query needs an object and a property");
  require_lang(lang);
  SparqlQuery q;
  q.purpose = QueryPurpose::Geometry;
  q.expected_columns = {"item", "itemLabel", "formula", "via"};
  q.arguments = {obj, prop};
  const std::string l(lang);
  q.text = "SELECT ?item ?itemLabel ?formula ?via\nWHERE {\n    ?item rdfs:label " + literal(obj) + "@" + l + ".\n";
  std::string direct;
  if (prop == "area") direct = "P2046";
  if (prop == "volume") direct = "P478";
  if (!direct.empty()) {
    q.text += "    {\n      ?item p:" + direct + " ?statement.\n      ?statement pq:P2534 ?formula.\n      BIND(\"" +
              direct + "\" AS ?via)\n    }\n    UNION\n";
  }
  q.text += "    {\n      ?item p:P1552 ?statement.\n      ?statement ps:P1552 ?quality.\n      ?quality rdfs:label " +
            literal(prop) + "@" + l +
            ".\n      ?statement pq:P2534 ?formula.\n      BIND(\"P1552\" AS ?via)\n    }\n" + label_service(lang) +
            "}\n";
  return q;
}

SparqlQuery build_item_identifiers_query(std::string_view qid, std::string_view lang) {
  require_qid(qid);
  require_lang(lang);
  SparqlQuery q;
  q.purpose = QueryPurpose::ItemIdentifiers;
  q.expected_columns = {"statement", "property",  "value", "valueLabel", "qualifier", "qualifierValue",
                        "qualifierValueLabel", "numericValue"};
  q.arguments = {std::string(qid)};
  q.text =
      "SELECT ?statement ?property ?value ?valueLabel ?qualifier ?qualifierValue ?qualifierValueLabel "
      "?numericValue\nWHERE {\n"
      "    VALUES (?property ?claim ?statementValue) {\n"
      "      (\"P527\" p:P527 ps:P527) (\"P4934\" p:P4934 ps:P4934) (\"P7235\" p:P7235 ps:P7235)\n"
      "    }\n"
      "    wd:" +
      std::string(qid) +
      " ?claim ?statement.\n"
      "    ?statement ?statementValue ?value.\n"
      "    OPTIONAL {\n"
      "      VALUES (?qualifier ?qualifierProperty) {\n"
      "        (\"P2534\" pq:P2534) (\"P416\" pq:P416) (\"P7973\" pq:P7973) (\"P9758\" pq:P9758)\n"
      "      }\n"
      "      ?statement ?qualifierProperty ?qualifierValue.\n"
      "    }\n"
      "    OPTIONAL { ?value wdt:P1181 ?valueNumber. }\n"
      "    OPTIONAL { ?qualifierValue wdt:P1181 ?qualifierNumber. }\n"
      "    BIND(COALESCE(?valueNumber, ?qualifierNumber) AS ?numericValue)\n" +
      label_service(lang) + "}\n";
  return q;
}

SparqlQuery build_formula_symbols_query(const std::vector<std::string>& symbols, std::string_view lang) {
  if (symbols.empty()) throw ContractError("a formula symbol query needs at least one symbol");
  require_lang(lang);
  SparqlQuery q;
  q.purpose = QueryPurpose::FormulaSymbols;
  q.expected_columns = {"item", "itemLabel", "formula"};
  q.arguments = symbols;
  q.text = "SELECT ?item ?itemLabel ?formula\nWHERE {\n    ?item wdt:P2534 ?formula.\n";
  for (const auto& s : symbols) {
    if (s.empty()) throw ValidationError("empty symbol");
    q.text += "    FILTER(CONTAINS(STR(?formula), " + literal(latex_spelling(s)) + "))\n";
  }
  q.text += label_service(lang) + "}\n";
  return q;
}

SparqlQuery build_ask_formula_query(std::string_view qid) {
  require_qid(qid);
  SparqlQuery q;
  q.purpose = QueryPurpose::Ask;
  q.expected_columns = {"boolean"};
  q.arguments = {std::string(qid)};
  q.text = "ASK { wd:" + std::string(qid) + " wdt:P2534 ?formula. }\n";
  return q;
}

std::string normalize_query_text(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::string query_hash(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : normalize_query_text(text)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SparqlResult parse_sparql_json(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid SPARQL JSON: ") + e.what(), 1);
  }
  SparqlResult r;
  if (!doc.is_object()) throw ParseError("SPARQL JSON must be an object", 1);
  if (doc.contains("boolean")) {
    if (!doc["boolean"].is_boolean()) throw ParseError("ASK result is not a boolean", 1);
    r.columns = {"boolean"};
    r.rows.push_back({{"boolean", doc["boolean"].get<bool>() ? "true" : "false"}});
    return r;
  }
  try {
    for (const auto& v : doc.at("head").at("vars")) r.columns.push_back(v.get<std::string>());
    for (const auto& b : doc.at("results").at("bindings")) {
      std::map<std::string, std::string> row;
      for (const auto& [name, cell] : b.items()) {
        std::string value = cell.at("value").get<std::string>();
        if (cell.value("type", "") == "uri") value = entity_id(value);
        row.emplace(name, std::move(value));
      }
      r.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed SPARQL JSON results: ") + e.what(), 1);
  }
  return r;
}

std::string format_sparql_json(const SparqlResult& r) {
  json doc;
  if (r.columns.size() == 1 && r.columns[0] == "boolean" && r.rows.size() == 1) {
    doc["head"] = json::object();
    doc["boolean"] = r.rows[0].count("boolean") != 0 && r.rows[0].at("boolean") == "true";
    return doc.dump(2) + "\n";
  }
  doc["head"]["vars"] = r.columns;
  json bindings = json::array();
  for (const auto& row : r.rows) {
    json b = json::object();
    for (const auto& [name, value] : row) {
      json cell;
      if (is_qid(value) && name.find("Label") == std::string::npos) {
        cell["type"] = "uri";
        cell["value"] = std::string(kEntityPrefix) + value;
      } else {
        cell["type"] = "literal";
        cell["value"] = value;
        if (name == "numericValue") cell["datatype"] = "http://www.w3.org/2001/XMLSchema#decimal";
      }
      b[name] = std::move(cell);
    }
    bindings.push_back(std::move(b));
  }
  doc["results"]["bindings"] = std::move(bindings);
  return doc.dump(2, ' ', false) + "\n";
}

bool balanced(std::string_view text) {
  std::vector<char> stack;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{' || c == '(' || c == '[') {
      stack.push_back(c);
    } else if (c == '}' || c == ')' || c == ']') {
      const char open = c == '}' ? '{' : (c == ')' ? '(' : '[');
      if (stack.empty() || stack.back() != open) return false;
      stack.pop_back();
    }
  }
  return stack.empty() && !in_string;
}

}  // namespace mathqa
