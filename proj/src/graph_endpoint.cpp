// SPDX-License-Identifier: Apache-2.0
#include "mathqa/graph_endpoint.hpp"

#include <algorithm>
#include <charconv>

#include "json.hpp"
#include "mathqa/corpus.hpp"
#include "mathqa/formula_text.hpp"

namespace mathqa {
namespace {

using nlohmann::json;
using Row = std::map<std::string, std::string>;

std::string number_text(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string latex_spelling(const std::string& symbol) {
  if (auto cmd = greek_command(symbol)) return "\\" + *cmd;
  return symbol;
}

}  // namespace

GraphEndpoint::GraphEndpoint(std::vector<GraphItem> items) : items_(std::move(items)) {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (!is_qid(items_[i].qid)) throw ValidationError("graph item has malformed id '" + items_[i].qid + "'");
    if (!by_qid_.emplace(items_[i].qid, i).second) {
      throw ValidationError("graph item " + items_[i].qid + " appears twice");
    }
  }
}

GraphEndpoint GraphEndpoint::load(const std::filesystem::path& graph_json) { return parse(read_file(graph_json)); }

GraphEndpoint GraphEndpoint::parse(std::string_view graph_json) {
  std::vector<GraphItem> items;
  try {
    const json doc = json::parse(graph_json);
    for (const auto& j : doc.at("items")) {
      GraphItem it;
      it.qid = j.at("qid").get<std::string>();
      it.label = j.at("label").get<std::string>();
      if (j.contains("formula")) it.formula = j["formula"].get<std::string>();
      if (j.contains("numeric_value")) it.numeric_value = j["numeric_value"].get<double>();
      for (const auto& s : j.value("symbols", json::array())) {
        it.symbols.push_back({s.at("value").get<std::string>(), parse_symbol_via(s.at("property").get<std::string>())});
      }
      for (const auto& s : j.value("statements", json::array())) {
        GraphStatement st{s.at("property").get<std::string>(), s.at("value").get<std::string>(), {}};
        for (const auto& q : s.value("qualifiers", json::array())) {
          st.qualifiers.push_back({q.at("property").get<std::string>(), q.at("value").get<std::string>()});
        }
        it.statements.push_back(std::move(st));
      }
      items.push_back(std::move(it));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed graph file: ") + e.what(), 1);
  }
  return GraphEndpoint(std::move(items));
}

const GraphItem* GraphEndpoint::find(const std::string& qid) const {
  const auto it = by_qid_.find(qid);
  return it == by_qid_.end() ? nullptr : &items_[it->second];
}

std::string GraphEndpoint::label_of(const std::string& value) const {
  if (const auto* it = find(value)) return it->label;
  return value;
}

std::optional<double> GraphEndpoint::numeric_of(const std::string& value) const {
  if (const auto* it = find(value)) return it->numeric_value;
  return std::nullopt;
}

SparqlResult GraphEndpoint::run(const SparqlQuery& q) {
  SparqlResult r;
  r.columns = q.expected_columns;
  const auto& args = q.arguments;
  switch (q.purpose) {
    case QueryPurpose::ConceptFormula: {
      if (args.size() != 2 || args[1] != "en") break;
      for (const auto& it : items_) {
        if (it.label != args[0]) continue;
        Row row{{"item", it.qid}, {"itemLabel", it.label}};
        if (it.formula) row["formula"] = *it.formula;
        r.rows.push_back(std::move(row));
      }
      break;
    }
    case QueryPurpose::Relationship: {
      const std::string& property = args.front();
      const std::vector<std::string> parts_wanted(args.begin() + 1, args.end());
      for (const auto& it : items_) {
        if (!it.formula) continue;
        std::vector<std::string> parts;
        for (const auto& s : it.statements) {
          if (s.property == property) parts.push_back(s.value);
        }
        const bool all = std::all_of(parts_wanted.begin(), parts_wanted.end(), [&](const std::string& w) {
          return std::find(parts.begin(), parts.end(), w) != parts.end();
        });
        if (!all) continue;
        for (const auto& p : parts) {
          r.rows.push_back(
              {{"item", it.qid}, {"itemLabel", it.label}, {"formula", *it.formula}, {"parts", p}, {"partsLabel", label_of(p)}});
        }
      }
      break;
    }
    case QueryPurpose::SymbolLookup: {
      for (const auto& it : items_) {
        for (const auto& s : it.symbols) {
          if (s.via == SymbolVia::P7235) continue;
          r.rows.push_back({{"item", it.qid},
                            {"itemLabel", it.label},
                            {"symbol", s.symbol},
                            {"property", std::string(to_string(s.via))}});
        }
      }
      for (const auto& it : items_) {
        for (const auto& s : it.statements) {
          if (s.property != "P7235") continue;
          for (const auto& qual : s.qualifiers) {
            if (qual.property != "P9758") continue;
            r.rows.push_back(
                {{"item", qual.value}, {"itemLabel", label_of(qual.value)}, {"symbol", s.value}, {"property", "P7235"}});
          }
        }
      }
      break;
    }
    case QueryPurpose::Geometry: {
      const std::string& object = args.at(0);
      const std::string& property = args.at(1);
      const std::string direct = property == "area" ? "P2046" : (property == "volume" ? "P478" : "");
      for (const auto& it : items_) {
        if (it.label != object) continue;
        for (const auto& s : it.statements) {
          const bool is_direct = !direct.empty() && s.property == direct;
          const bool is_quality = s.property == "P1552" && label_of(s.value) == property;
          if (!is_direct && !is_quality) continue;
          for (const auto& qual : s.qualifiers) {
            if (qual.property != "P2534") continue;
            r.rows.push_back(
                {{"item", it.qid}, {"itemLabel", it.label}, {"formula", qual.value}, {"via", s.property}});
          }
        }
      }
      break;
    }
    case QueryPurpose::ItemIdentifiers: {
      const GraphItem* it = find(args.at(0));
      if (it == nullptr) break;
      std::size_t n = 0;
      for (const auto& s : it->statements) {
        if (s.property != "P527" && s.property != "P4934" && s.property != "P7235") continue;
        const std::string id = it->qid + "-S" + std::to_string(++n);
        Row base{{"statement", id}, {"property", s.property}, {"value", s.value}, {"valueLabel", label_of(s.value)}};
        std::optional<double> numeric = numeric_of(s.value);
        std::vector<Row> rows;
        for (const auto& qual : s.qualifiers) {
          if (qual.property != "P2534" && qual.property != "P416" && qual.property != "P7973" &&
              qual.property != "P9758") {
            continue;
          }
          Row row = base;
          row["qualifier"] = qual.property;
          row["qualifierValue"] = qual.value;
          row["qualifierValueLabel"] = label_of(qual.value);
          if (!numeric) numeric = numeric_of(qual.value);
          rows.push_back(std::move(row));
        }
        if (rows.empty()) rows.push_back(base);
        for (auto& row : rows) {
          if (numeric) row["numericValue"] = number_text(*numeric);
          r.rows.push_back(std::move(row));
        }
      }
      break;
    }
    case QueryPurpose::FormulaSymbols: {
      for (const auto& it : items_) {
        if (!it.formula) continue;
        const bool all = std::all_of(args.begin(), args.end(), [&](const std::string& s) {
          return it.formula->find(latex_spelling(s)) != std::string::npos;
        });
        if (all) r.rows.push_back({{"item", it.qid}, {"itemLabel", it.label}, {"formula", *it.formula}});
      }
      break;
    }
    case QueryPurpose::Ask: {
      const GraphItem* it = find(args.at(0));
      r.rows.push_back({{"boolean", it != nullptr && it->formula ? "true" : "false"}});
      break;
    }
  }
  return r;
}

}  // namespace mathqa
