// SPDX-License-Identifier: Apache-2.0
#include "cases.hpp"

#include <algorithm>
#include <set>

#include "mathqa/utf8.hpp"

namespace cases {
namespace {

using namespace mathqa;

std::string enumerate(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += i + 1 == items.size() ? " and " : ", ";
    out += items[i];
  }
  return out;
}

std::vector<std::string> distinct(const GoldRecord& r, bool names) {
  std::vector<std::string> out;
  for (const auto& a : r.annotations) {
    const std::string& v = names ? a.name : a.symbol;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

// Records with a single annotation borrow operands from the following records.
std::vector<std::string> operands_for(const std::vector<GoldRecord>& gold, std::size_t i, bool names) {
  auto ops = distinct(gold[i], names);
  std::size_t next = i + 1;
  while (ops.size() < 2) {
    for (const auto& v : distinct(gold[next % gold.size()], names)) {
      if (ops.size() < 2 && std::find(ops.begin(), ops.end(), v) == ops.end()) ops.push_back(v);
    }
    ++next;
  }
  return ops;
}

std::vector<std::pair<std::string, std::string>> geometry_fillers(std::size_t n) {
  const std::vector<std::string> objects = {"circle", "sphere", "square", "cube", "cylinder", "cone"};
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& prop : GeometryPropertyList::standard().properties()) {
    for (const auto& obj : objects) out.emplace_back(prop, obj);
  }
  out.resize(std::min(n, out.size()));
  return out;
}

}  // namespace

std::vector<QuestionCase> question_templates(const std::vector<GoldRecord>& gold) {
  std::vector<QuestionCase> out;
  for (const auto& r : gold) {
    QuestionIntent e;
    e.kind = IntentKind::FormulaName;
    e.concept_name = utf8::to_lower(r.concept_name);
    for (const std::string& q : {"What is the formula for " + r.concept_name + "?",
                                 "how do I calculate " + r.concept_name,
                                 "Give me the equation for the " + r.concept_name + "."}) {
      out.push_back({q, e});
    }
  }
  for (const auto& [prop, obj] : geometry_fillers(gold.size())) {
    QuestionIntent e;
    e.kind = IntentKind::Geometry;
    e.property = prop;
    e.object = obj;
    for (const std::string& q : {"what is the " + prop + " of a " + obj + "?",
                                 "How do you calculate the " + prop + " of a " + obj + "?",
                                 "tell me the " + prop + " of the " + obj}) {
      out.push_back({q, e});
    }
  }
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto names = operands_for(gold, i, true);
    QuestionIntent e;
    e.kind = IntentKind::RelationshipNames;
    for (const auto& n : names) e.operands.push_back(utf8::to_lower(n));
    for (const std::string& q : {"What is the relationship between " + enumerate(names) + "?",
                                 "what is the relation between the " + enumerate(names)}) {
      out.push_back({q, e});
    }
  }
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto symbols = operands_for(gold, i, false);
    QuestionIntent e;
    e.kind = IntentKind::RelationshipSymbols;
    e.operands = symbols;
    for (const std::string& q : {"what is the relationship between " + enumerate(symbols) + "?",
                                 "What is the relationship between symbols " + enumerate(symbols) + "?"}) {
      out.push_back({q, e});
    }
  }
  return out;
}

std::string intent_mismatch(const QuestionIntent& got, const QuestionIntent& want) {
  if (got.kind != want.kind) {
    return "kind " + std::string(to_string(got.kind)) + " != " + std::string(to_string(want.kind));
  }
  switch (want.kind) {
    case IntentKind::FormulaName:
      if (got.concept_name != want.concept_name) return "concept '" + got.concept_name + "'";
      break;
    case IntentKind::Geometry:
      if (got.property != want.property || got.object != want.object) {
        return "geometry '" + got.property + "' of '" + got.object + "'";
      }
      break;
    default:
      if (got.operands != want.operands) return "operands '" + enumerate(got.operands) + "'";
  }
  return {};
}

Catalog random_symbol_catalog(std::mt19937& rng) {
  std::uniform_int_distribution<int> key_count(1, 30);
  std::uniform_int_distribution<int> value_count(1, 8);
  std::uniform_int_distribution<int> freq(1, 50);
  const std::vector<std::string> symbols = {"E", "m", "c", "v", "s", "t", "ω", "α", "F", "a", "p", "V"};
  const std::vector<std::string> names = {"energy", "mass", "light", "speed", "distance", "time",
                                          "frequency", "angle", "force", "acceleration", "pressure", "volume"};
  Catalog::Counts counts;
  const int keys = key_count(rng);
  for (int i = 0; i < keys; ++i) {
    const std::string& sym = symbols[rng() % symbols.size()];
    const int values = value_count(rng);
    for (int j = 0; j < values; ++j) counts[sym][names[rng() % names.size()]] += freq(rng);
  }
  return Catalog::from_counts(CatalogKind::SymbolToName, Source::Fixture, 1, counts);
}

Catalog reinvert(const Catalog& name_to_symbol) {
  Catalog::Counts back;
  for (const auto& [name, list] : name_to_symbol.entries()) {
    for (const auto& cand : list) back[cand.value][name] = cand.frequency;
  }
  return Catalog::from_counts(CatalogKind::SymbolToName, name_to_symbol.source(), name_to_symbol.doc_count(), back);
}

std::multiset<std::uint64_t> frequencies(const Catalog& c) {
  std::multiset<std::uint64_t> out;
  for (const auto& [key, list] : c.entries()) {
    for (const auto& cand : list) out.insert(cand.frequency);
  }
  return out;
}

}  // namespace cases
