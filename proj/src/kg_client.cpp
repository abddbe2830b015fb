// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cstdlib>
#include <set>

#include "mathqa/formula_text.hpp"
#include "mathqa/kg.hpp"
#include "mathqa/utf8.hpp"

namespace mathqa {
namespace {

void note(std::vector<std::string>* diagnostics, std::string text) {
  if (diagnostics != nullptr) diagnostics->push_back(std::move(text));
}

std::string get(const SparqlResult& r, std::size_t row, const std::string& column) {
  return r.cell(row, column).value_or("");
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

bool qid_less(const std::string& a, const std::string& b) {
  if (is_qid(a) && is_qid(b)) return qid_number(a) < qid_number(b);
  return a < b;
}

void sort_hits(std::vector<KgHit>& hits) {
  std::stable_sort(hits.begin(), hits.end(), [](const KgHit& a, const KgHit& b) {
    if (a.identifier_count != b.identifier_count) return a.identifier_count < b.identifier_count;
    return qid_less(a.qid, b.qid);
  });
}

const RawQualifier* find_qualifier(const RawStatement& s, std::initializer_list<std::string_view> properties) {
  for (std::string_view p : properties) {
    for (const auto& q : s.qualifiers) {
      if (q.property == p) return &q;
    }
  }
  return nullptr;
}

std::optional<std::string> non_empty(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

std::string_view to_string(LinkVia v) {
  switch (v) {
    case LinkVia::HasPart:
      return "has_part";
    case LinkVia::CalculatedFrom:
      return "calculated_from";
    case LinkVia::InDefiningFormula:
      return "in_defining_formula";
  }
  return "has_part";
}

std::string_view to_string(SymbolVia v) {
  switch (v) {
    case SymbolVia::P416:
      return "P416";
    case SymbolVia::P7973:
      return "P7973";
    case SymbolVia::P7235:
      return "P7235";
  }
  return "P416";
}

SymbolVia parse_symbol_via(std::string_view s) {
  for (SymbolVia v : {SymbolVia::P416, SymbolVia::P7973, SymbolVia::P7235}) {
    if (to_string(v) == s) return v;
  }
  throw SchemaDriftDetected("unknown symbol property '" + std::string(s) + "'");
}

std::vector<RawStatement> group_statements(const SparqlResult& rows) {
  std::vector<RawStatement> out;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < rows.rows.size(); ++i) {
    const std::string id = get(rows, i, "statement");
    auto [it, inserted] = index.emplace(id, out.size());
    if (inserted) {
      RawStatement s;
      s.property = get(rows, i, "property");
      s.value = get(rows, i, "value");
      s.value_label = get(rows, i, "valueLabel");
      out.push_back(std::move(s));
    }
    RawStatement& s = out[it->second];
    if (!s.numeric_value) s.numeric_value = parse_number(get(rows, i, "numericValue"));
    const std::string qualifier = get(rows, i, "qualifier");
    if (!qualifier.empty()) {
      s.qualifiers.push_back({qualifier, get(rows, i, "qualifierValue"), get(rows, i, "qualifierValueLabel")});
    }
  }
  return out;
}

std::vector<IdentifierLink> normalize_identifier_links(const std::vector<RawStatement>& statements) {
  std::vector<IdentifierLink> links;
  for (const auto& s : statements) {
    IdentifierLink link;
    link.constant_value = s.numeric_value;
    if (s.property == "P527" || s.property == "P4934") {
      link.via = s.property == "P527" ? LinkVia::HasPart : LinkVia::CalculatedFrom;
      if (!is_qid(entity_id(s.value))) {
        throw SchemaDriftDetected(s.property + " statement points at '" + s.value + "', not an item");
      }
      link.linked_qid = entity_id(s.value);
      link.name = non_empty(s.value_label);
      if (const auto* q = find_qualifier(s, {"P2534", "P7973", "P416"})) link.symbol = non_empty(q->value);
    } else if (s.property == "P7235") {
      link.via = LinkVia::InDefiningFormula;
      link.symbol = non_empty(s.value);
      if (const auto* q = find_qualifier(s, {"P9758"})) {
        link.linked_qid = non_empty(entity_id(q->value));
        link.name = non_empty(q->value_label);
      }
    } else {
      throw SchemaDriftDetected("unrecognized identifier annotation property '" + s.property + "'");
    }
    if (link.name && link.linked_qid && *link.name == *link.linked_qid) link.name.reset();
    links.push_back(std::move(link));
  }
  return links;
}

KgClient::KgClient(Endpoint& endpoint, QueryCache* cache, std::string lang)
    : endpoint_(endpoint), cache_(cache), lang_(std::move(lang)) {}

SparqlResult KgClient::run(const SparqlQuery& query, std::vector<std::string>* diagnostics) const {
  if (cache_ == nullptr) return execute(query, endpoint_);
  CachedResult r = cached_execute(query, endpoint_, *cache_, diagnostics);
  return std::move(r.result);
}

std::vector<KgCandidate> KgClient::items_by_label(std::string_view label, std::vector<std::string>* diagnostics) const {
  const SparqlResult r = run(build_concept_formula_query(label, lang_), diagnostics);
  std::vector<KgCandidate> out;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const std::string qid = entity_id(get(r, i, "item"));
    auto it = std::find_if(out.begin(), out.end(), [&](const KgCandidate& c) { return c.qid == qid; });
    if (it == out.end()) {
      std::string item_label = get(r, i, "itemLabel");
      out.push_back({qid, item_label.empty() ? std::string(label) : item_label, std::nullopt});
      it = out.end() - 1;
    }
    if (!it->formula) it->formula = non_empty(get(r, i, "formula"));
  }
  std::sort(out.begin(), out.end(), [](const KgCandidate& a, const KgCandidate& b) { return qid_less(a.qid, b.qid); });
  return out;
}

ConceptLookup KgClient::concept_formula(std::string_view concept_name, std::vector<std::string>* diagnostics) const {
  ConceptLookup out;
  out.candidates = items_by_label(concept_name, diagnostics);
  std::vector<const KgCandidate*> with_formula;
  for (const auto& c : out.candidates) {
    if (c.formula) with_formula.push_back(&c);
  }
  if (with_formula.size() == 1) {
    out.outcome = LookupOutcome::Found;
    out.item = item(*with_formula.front(), diagnostics);
    return out;
  }
  if (out.candidates.size() > 1) {
    out.outcome = LookupOutcome::Ambiguous;
    note(diagnostics, std::to_string(out.candidates.size()) + " items are labelled '" + std::string(concept_name) +
                          "' and " + std::to_string(with_formula.size()) + " of them have a defining formula");
    return out;
  }
  out.outcome = LookupOutcome::NotFound;
  if (out.candidates.empty()) {
    note(diagnostics, "no item is labelled '" + std::string(concept_name) + "'");
  } else {
    note(diagnostics, out.candidates.front().qid + " has no defining formula");
  }
  return out;
}

KgItem KgClient::item(const KgCandidate& candidate, std::vector<std::string>* diagnostics) const {
  KgItem it;
  it.qid = candidate.qid;
  it.label = candidate.label;
  it.defining_formula = candidate.formula;
  it.identifier_links = identifier_links(candidate.qid, diagnostics);
  return it;
}

std::vector<IdentifierLink> KgClient::identifier_links(const std::string& qid,
                                                       std::vector<std::string>* diagnostics) const {
  return normalize_identifier_links(group_statements(run(build_item_identifiers_query(qid, lang_), diagnostics)));
}

std::vector<KgHit> KgClient::relationship_by_names(const std::vector<std::string>& names,
                                                   std::vector<std::string>* diagnostics) const {
  std::vector<std::string> qids;
  for (const auto& name : names) {
    const auto candidates = items_by_label(utf8::trim(name), diagnostics);
    if (candidates.empty()) {
      note(diagnostics, "no item is labelled '" + name + "'");
      return {};
    }
    const std::string& qid = candidates.front().qid;
    if (std::find(qids.begin(), qids.end(), qid) == qids.end()) qids.push_back(qid);
  }
  if (qids.size() < 2) {
    note(diagnostics, "a relationship needs two distinct quantities");
    return {};
  }
  std::sort(qids.begin(), qids.end(), qid_less);

  std::map<std::string, std::pair<KgHit, std::set<std::string>>> merged;
  for (const auto& q : build_relationship_queries(qids)) {
    const SparqlResult r = run(q, diagnostics);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const std::string qid = entity_id(get(r, i, "item"));
      auto& [hit, parts] = merged[qid];
      if (hit.qid.empty()) {
        hit.qid = qid;
        hit.label = get(r, i, "itemLabel");
        hit.formula = get(r, i, "formula");
        hit.via = q.arguments.front();
      } else if (hit.via != q.arguments.front() && hit.via.find(q.arguments.front()) == std::string::npos) {
        hit.via += "," + q.arguments.front();
      }
      const std::string part = get(r, i, "parts");
      if (!part.empty()) parts.insert(entity_id(part));
    }
  }
  std::vector<KgHit> hits;
  for (auto& [qid, entry] : merged) {
    if (entry.first.formula.empty()) continue;
    entry.first.identifier_count = entry.second.size();
    hits.push_back(std::move(entry.first));
  }
  sort_hits(hits);
  return hits;
}

std::vector<KgHit> KgClient::relationship_by_symbols(const std::vector<std::string>& symbols,
                                                     std::vector<std::string>* diagnostics) const {
  std::vector<std::string> wanted;
  for (const auto& s : symbols) {
    const std::string t(utf8::trim(s));
    if (!t.empty() && std::find(wanted.begin(), wanted.end(), t) == wanted.end()) wanted.push_back(t);
  }
  if (wanted.empty()) return {};
  const SparqlResult r = run(build_formula_symbols_query(wanted, lang_), diagnostics);
  std::vector<KgHit> hits;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const std::string qid = entity_id(get(r, i, "item"));
    const std::string formula = get(r, i, "formula");
    if (!seen.insert(qid).second) continue;
    const auto ids = latex_identifiers(formula);
    const std::set<std::string> id_set(ids.begin(), ids.end());
    const bool all = std::all_of(wanted.begin(), wanted.end(), [&](const std::string& s) { return id_set.count(s); });
    if (!all) continue;
    hits.push_back({qid, get(r, i, "itemLabel"), formula, id_set.size(), "P2534"});
  }
  sort_hits(hits);
  return hits;
}

std::vector<KgHit> KgClient::geometry(std::string_view object, std::string_view property,
                                      std::vector<std::string>* diagnostics) const {
  const SparqlResult r = run(build_geometry_query(object, property, lang_), diagnostics);
  std::vector<KgHit> hits;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const std::string formula = get(r, i, "formula");
    if (formula.empty()) continue;
    const bool dup = std::any_of(hits.begin(), hits.end(), [&](const KgHit& h) { return h.formula == formula; });
    if (dup) continue;
    const auto ids = latex_identifiers(formula);
    hits.push_back({entity_id(get(r, i, "item")), get(r, i, "itemLabel"), formula,
                    std::set<std::string>(ids.begin(), ids.end()).size(), get(r, i, "via")});
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const KgHit& a, const KgHit& b) { return (a.via == "P1552") < (b.via == "P1552"); });
  return hits;
}

std::vector<SymbolRow> KgClient::symbol_rows(std::vector<std::string>* diagnostics) const {
  const SparqlResult r = run(build_symbol_lookup_query(), diagnostics);
  std::vector<SymbolRow> out;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    out.push_back({entity_id(get(r, i, "item")), get(r, i, "itemLabel"), get(r, i, "symbol"),
                   parse_symbol_via(get(r, i, "property"))});
  }
  return out;
}

Catalog KgClient::symbol_catalog(std::vector<std::string>* diagnostics) const {
  Catalog::Counts counts;
  std::set<std::string> items;
  for (const auto& row : symbol_rows(diagnostics)) {
    if (row.symbol.empty() || row.label.empty()) continue;
    ++counts[row.symbol][utf8::to_lower(row.label)];
    items.insert(row.qid);
  }
  return Catalog::from_counts(CatalogKind::SymbolToName, Source::Wikidata, items.size(), counts);
}

bool KgClient::has_formula(const std::string& qid, std::vector<std::string>* diagnostics) const {
  const SparqlResult r = run(build_ask_formula_query(qid), diagnostics);
  return r.cell(0, "boolean").value_or("false") == "true";
}

}  // namespace mathqa
