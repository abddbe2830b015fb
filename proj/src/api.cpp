// SPDX-License-Identifier: Apache-2.0
#include "mathqa/api.hpp"

#include "json.hpp"

namespace mathqa {
namespace {

using nlohmann::json;

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json intent_json(const QuestionIntent& i) {
  json j;
  j["kind"] = std::string(to_string(i.kind));
  j["concept"] = i.concept_name;
  j["object"] = i.object;
  j["property"] = i.property;
  j["operands"] = i.operands;
  j["lang"] = i.language;
  if (i.triple) {
    j["triple"] = {{"subject", i.triple->subject}, {"predicate", i.triple->predicate}, {"object", opt(i.triple->object)}};
  } else {
    j["triple"] = nullptr;
  }
  return j;
}

json answer_json(const FormulaAnswer& a) {
  json j;
  j["formula"] = a.formula;
  j["concept_name"] = opt(a.concept_name);
  j["qid"] = opt(a.qid);
  j["provenance"] = std::string(to_string(a.provenance));
  j["calculable"] = a.calculable;
  j["lhs"] = opt(a.lhs);
  j["non_algebraic"] = opt(a.non_algebraic);
  j["identifiers"] = json::array();
  for (const auto& id : a.identifiers) {
    j["identifiers"].push_back({{"symbol", id.symbol},
                                {"name", opt(id.name)},
                                {"qid", opt(id.qid)},
                                {"constant_value", opt(id.constant_value)},
                                {"bindable", id.bindable}});
  }
  j["alternatives"] = json::array();
  for (const auto& alt : a.alternatives) {
    j["alternatives"].push_back({{"formula", alt.formula}, {"qid", opt(alt.qid)}, {"score", alt.score}, {"rank", alt.rank}});
  }
  return j;
}

json error_json(std::string_view code, std::string_view message) {
  return {{"error", code}, {"message", message}};
}

}  // namespace

std::string envelope_to_json(const AnswerEnvelope& e) {
  json j;
  j["outcome"] = std::string(to_string(e.outcome));
  j["intent"] = e.intent ? intent_json(*e.intent) : json(nullptr);
  j["answer"] = e.answer ? answer_json(*e.answer) : json(nullptr);
  j["candidates"] = json::array();
  for (const auto& c : e.candidates) {
    j["candidates"].push_back({{"qid", c.qid}, {"label", c.label}, {"formula", opt(c.formula)}});
  }
  j["diagnostics"] = e.diagnostics;
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

std::string calculation_to_json(const CalculationResult& r) {
  json j;
  if (r.ok) {
    j["lhs"] = r.lhs;
    j["value"] = r.value;
  } else {
    j = error_json(to_string(*r.error), r.message);
    if (!r.lhs.empty()) j["lhs"] = r.lhs;
    j["unknowns"] = r.unknowns;
  }
  json bindings = json::object();
  for (const auto& [sym, b] : r.used.entries()) {
    bindings[sym] = {{"value", b.value}, {"source", std::string(to_string(b.source))}};
  }
  j["bindings"] = bindings;
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

std::string health_to_json(const QaService::SourceInventory& inv) {
  json j;
  j["status"] = "ok";
  j["sources"] = {{"arxiv_formulas", opt(inv.arxiv_formulas)},
                  {"wikipedia_formulas", opt(inv.wikipedia_formulas)},
                  {"kg", opt(inv.kg)},
                  {"cached_queries", opt(inv.cached_queries)}};
  return j.dump(2) + "\n";
}

CalculationRequest parse_calculation_request(std::string_view body) {
  CalculationRequest req;
  try {
    const json j = json::parse(body);
    if (!j.is_object()) throw ValidationError("request body must be an object");
    if (!j.contains("formula") || !j["formula"].is_string()) throw ValidationError("'formula' must be a string");
    req.formula = j["formula"].get<std::string>();
    for (const char* field : {"bindings", "constants"}) {
      if (!j.contains(field) || j[field].is_null()) continue;
      if (!j[field].is_object()) throw ValidationError(std::string("'") + field + "' must be an object");
      auto& target = std::string_view(field) == "bindings" ? req.bindings : req.constants;
      for (const auto& [sym, v] : j[field].items()) {
        if (!v.is_number()) throw ValidationError("value of '" + sym + "' must be a number");
        target[sym] = v.get<double>();
      }
    }
    if (j.contains("qid") && j["qid"].is_string()) req.qid = j["qid"].get<std::string>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return req;
}

ApiResponse handle_api(const QaService& service, std::string_view method, std::string_view path, std::string_view body) {
  if (path == "/api/health") {
    if (method != "GET") return {405, error_json("bad_request", "use GET").dump(2) + "\n"};
    return {200, health_to_json(service.inventory())};
  }
  if (path == "/api/question") {
    if (method != "POST") return {405, error_json("bad_request", "use POST").dump(2) + "\n"};
    std::string text, lang = "en";
    try {
      const json j = json::parse(body);
      if (!j.is_object() || !j.contains("text") || !j["text"].is_string()) {
        return {400, error_json("bad_request", "'text' must be a string").dump(2) + "\n"};
      }
      text = j["text"].get<std::string>();
      if (j.contains("lang") && j["lang"].is_string()) lang = j["lang"].get<std::string>();
    } catch (const json::exception& e) {
      return {400, error_json("bad_request", std::string("malformed JSON: ") + e.what()).dump(2) + "\n"};
    }
    return {200, envelope_to_json(service.answer_question(text, lang))};
  }
  if (path == "/api/calculate") {
    if (method != "POST") return {405, error_json("bad_request", "use POST").dump(2) + "\n"};
    CalculationRequest req;
    try {
      req = parse_calculation_request(body);
    } catch (const ValidationError& e) {
      return {400, error_json("bad_request", e.what()).dump(2) + "\n"};
    }
    const CalculationResult r = service.calculate(req);
    int status = 200;
    if (!r.ok) status = *r.error == CalcErrorCode::BadRequest ? 400 : 422;
    return {status, calculation_to_json(r)};
  }
  return {404, error_json("not_found", std::string(path)).dump(2) + "\n"};
}

}  // namespace mathqa
