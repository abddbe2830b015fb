// SPDX-License-Identifier: Apache-2.0
#include "mathqa/service.hpp"

#include <algorithm>
#include <cstdlib>

#include "mathqa/formula_text.hpp"
#include "mathqa/retrieval.hpp"
#include "mathqa/utf8.hpp"

namespace mathqa {
namespace {

constexpr std::size_t kMaxAlternatives = 9;

std::string canonical_symbol(std::string_view symbol) {
  const auto ids = latex_identifiers(symbol);
  if (ids.size() == 1) return ids.front();
  return normalize_formula(symbol);
}

std::string lower(std::string_view s) { return utf8::to_lower(utf8::trim(s)); }

std::vector<std::string> lower_all(const std::vector<std::string>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(lower(s));
  return out;
}

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

bool truthy(const std::string& v) {
  const std::string l = utf8::to_lower(v);
  return l == "1" || l == "true" || l == "yes" || l == "on";
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Answered:
      return "ANSWERED";
    case Outcome::NoResult:
      return "NO_RESULT";
    case Outcome::DisambiguationNeeded:
      return "DISAMBIGUATION_NEEDED";
    case Outcome::Unrecognized:
      return "UNRECOGNIZED";
  }
  return "NO_RESULT";
}

std::string_view to_string(AnswerProvenance p) {
  switch (p) {
    case AnswerProvenance::Kg:
      return "KG";
    case AnswerProvenance::ArxivIndex:
      return "ARXIV_INDEX";
    case AnswerProvenance::WikipediaIndex:
      return "WIKIPEDIA_INDEX";
  }
  return "KG";
}

std::string_view to_string(CalcErrorCode c) {
  switch (c) {
    case CalcErrorCode::NonAlgebraic:
      return "non_algebraic";
    case CalcErrorCode::SyntaxError:
      return "syntax_error";
    case CalcErrorCode::ArithmeticError:
      return "arithmetic_error";
    case CalcErrorCode::UnboundIdentifier:
      return "unbound_identifier";
    case CalcErrorCode::NotCalculable:
      return "not_calculable";
    case CalcErrorCode::BadRequest:
      return "bad_request";
  }
  return "bad_request";
}

ServiceConfig ServiceConfig::from_env(ServiceConfig c) {
  if (auto v = env("MATHQA_ARXIV_INDEX")) c.arxiv_index = *v;
  if (auto v = env("MATHQA_WIKI_INDEX")) c.wiki_index = *v;
  if (auto v = env("MATHQA_KG_FIXTURES")) c.kg_fixtures = *v;
  if (auto v = env("MATHQA_CACHE_DIR")) c.cache_dir = *v;
  if (auto v = env("MATHQA_ENDPOINT")) c.endpoint_url = *v;
  if (auto v = env("MATHQA_OFFLINE")) c.offline = truthy(*v);
  if (auto v = env("MATHQA_STATIC_DIR")) c.static_dir = *v;
  if (auto v = env("MATHQA_HOST")) c.host = *v;
  try {
    if (auto v = env("MATHQA_TIMEOUT_MS")) c.endpoint_timeout = std::chrono::milliseconds(std::stol(*v));
    if (auto v = env("MATHQA_PORT")) c.port = std::stoi(*v);
  } catch (const std::logic_error&) {
    throw ConfigError("MATHQA_TIMEOUT_MS and MATHQA_PORT must be integers");
  }
  return c;
}

FormulaAnswer make_formula_answer(std::string formula, const std::vector<IdentifierLink>& links) {
  FormulaAnswer a;
  a.formula = std::move(formula);
  std::vector<std::string> symbols;
  try {
    const FormulaExpression e = parse_formula(a.formula);
    symbols = formula_symbols(e);
    a.calculable = e.calculable();
    if (a.calculable) a.lhs = e.lhs_symbol();
  } catch (const NonAlgebraic& n) {
    a.non_algebraic = n.construct();
    symbols = latex_identifiers(a.formula);
  } catch (const FormulaSyntaxError&) {
    symbols = latex_identifiers(a.formula);
  }
  for (const auto& s : symbols) {
    AnswerIdentifier id;
    id.symbol = s;
    for (const auto& l : links) {
      if (!l.symbol || canonical_symbol(*l.symbol) != s) continue;
      id.name = l.name;
      id.qid = l.linked_qid;
      id.constant_value = l.constant_value;
      break;
    }
    id.bindable = !id.constant_value && (!a.lhs || *a.lhs != s);
    a.identifiers.push_back(std::move(id));
  }
  return a;
}

QaService::QaService(const ServiceConfig& config) {
  if (config.arxiv_index) arxiv_ = std::make_shared<const Index>(load_index(*config.arxiv_index));
  if (config.wiki_index) wikipedia_ = std::make_shared<const Index>(load_index(*config.wiki_index));
  if (config.endpoint_url && !config.offline) {
    endpoint_ = std::make_shared<HttpEndpoint>(*config.endpoint_url, config.endpoint_timeout);
    cache_ = config.cache_dir ? std::make_shared<QueryCache>(*config.cache_dir) : std::make_shared<QueryCache>();
  } else if (config.kg_fixtures) {
    endpoint_ = std::make_shared<FixtureEndpoint>(*config.kg_fixtures);
    if (config.cache_dir) cache_ = std::make_shared<QueryCache>(*config.cache_dir);
  }
  if (!arxiv_ && !wikipedia_ && !endpoint_) throw ConfigError("no index, knowledge-graph endpoint or fixture directory configured");
  if (endpoint_) kg_ = std::make_unique<KgClient>(*endpoint_, cache_.get());
}

QaService::QaService(std::shared_ptr<const Index> arxiv, std::shared_ptr<const Index> wikipedia,
                     std::shared_ptr<Endpoint> kg_endpoint, std::shared_ptr<QueryCache> cache)
    : arxiv_(std::move(arxiv)), wikipedia_(std::move(wikipedia)), endpoint_(std::move(kg_endpoint)), cache_(std::move(cache)) {
  if (!arxiv_ && !wikipedia_ && !endpoint_) throw ConfigError("no source configured");
  if (endpoint_) kg_ = std::make_unique<KgClient>(*endpoint_, cache_.get());
}

std::optional<FormulaAnswer> QaService::answer_from_kg(const std::string& qid, const std::string& label,
                                                       const std::string& formula, std::vector<std::string>& diag) const {
  std::vector<IdentifierLink> links;
  try {
    links = kg_->identifier_links(qid, &diag);
  } catch (const Error& e) {
    diag.push_back("identifier annotations of " + qid + " unavailable: " + e.what());
  }
  FormulaAnswer a = make_formula_answer(formula, links);
  a.qid = qid;
  if (!label.empty()) a.concept_name = label;
  a.provenance = AnswerProvenance::Kg;
  return a;
}

FormulaAnswer QaService::answer_from_index(const Index& index, const RankedList& ranked) const {
  FormulaAnswer a = make_formula_answer(ranked.results.front().value, {});
  for (auto& id : a.identifiers) {
    if (const auto* names = index.symbol_to_name.find(id.symbol); names != nullptr && !names->empty()) {
      id.name = names->front().value;
    }
  }
  a.provenance = index.source() == Source::Arxiv ? AnswerProvenance::ArxivIndex : AnswerProvenance::WikipediaIndex;
  for (std::size_t i = 1; i < ranked.results.size() && a.alternatives.size() < kMaxAlternatives; ++i) {
    a.alternatives.push_back({ranked.results[i].value, std::nullopt, ranked.results[i].score, ranked.results[i].rank});
  }
  return a;
}

std::optional<AnswerEnvelope> QaService::index_fallback(const QuestionIntent& intent, AnswerEnvelope env) const {
  for (const Index* index : {wikipedia_.get(), arxiv_.get()}) {
    if (index == nullptr) continue;
    RankedList ranked;
    try {
      switch (intent.kind) {
        case IntentKind::FormulaName:
          ranked = formulas_by_concept(intent.concept_name, index->term_to_formula, kDefaultTopK, &index->formulas);
          break;
        case IntentKind::Geometry:
          ranked = formulas_by_concept(intent.property + " " + intent.object, index->term_to_formula, kDefaultTopK,
                                       &index->formulas);
          break;
        case IntentKind::RelationshipNames:
        case IntentKind::RelationshipSymbols:
          if (intent.operands.size() < 2) continue;
          ranked = formulas_by_identifiers(
              intent.operands,
              intent.kind == IntentKind::RelationshipNames ? OperandMode::Names : OperandMode::Symbols, *index);
          break;
      }
    } catch (const Error& e) {
      env.diagnostics.push_back(std::string(to_string(index->source())) + " index failed: " + e.what());
      continue;
    }
    if (ranked.empty()) continue;
    FormulaAnswer a = answer_from_index(*index, ranked);
    if (intent.kind == IntentKind::FormulaName) a.concept_name = intent.concept_name;
    env.diagnostics.push_back("answered from the " + std::string(to_string(index->source())) + " index");
    env.answer = std::move(a);
    env.outcome = Outcome::Answered;
    return env;
  }
  return std::nullopt;
}

AnswerEnvelope QaService::answer_question(std::string_view text, std::string_view lang) const {
  AnswerEnvelope env;
  if (lang != "en") {
    env.outcome = Outcome::Unrecognized;
    env.diagnostics.push_back("language '" + std::string(lang) + "' is not supported, only 'en'");
    return env;
  }
  QuestionIntent intent;
  try {
    intent = parse_question(text);
  } catch (const UnrecognizedQuestion& e) {
    env.outcome = Outcome::Unrecognized;
    env.diagnostics.push_back(e.what());
    if (e.partial()) {
      env.diagnostics.push_back("partial triple: (" + e.partial()->subject + ", " + e.partial()->predicate + ", " +
                                e.partial()->object.value_or("?") + ")");
    }
    return env;
  }
  env.intent = intent;
  auto& diag = env.diagnostics;

  if (kg_) {
    try {
      std::vector<KgHit> hits;
      std::string concept_label;
      switch (intent.kind) {
        case IntentKind::FormulaName: {
          const ConceptLookup found = kg_->concept_formula(lower(intent.concept_name), &diag);
          if (found.outcome == LookupOutcome::Ambiguous) {
            env.outcome = Outcome::DisambiguationNeeded;
            env.candidates = found.candidates;
            return env;
          }
          if (found.outcome == LookupOutcome::Found) {
            FormulaAnswer a = make_formula_answer(*found.item->defining_formula, found.item->identifier_links);
            a.qid = found.item->qid;
            a.concept_name = found.item->label;
            env.answer = std::move(a);
            env.outcome = Outcome::Answered;
            return env;
          }
          break;
        }
        case IntentKind::Geometry:
          hits = kg_->geometry(lower(intent.object), lower(intent.property), &diag);
          concept_label = lower(intent.property) + " of " + lower(intent.object);
          break;
        case IntentKind::RelationshipNames:
          hits = kg_->relationship_by_names(lower_all(intent.operands), &diag);
          break;
        case IntentKind::RelationshipSymbols:
          hits = kg_->relationship_by_symbols(intent.operands, &diag);
          break;
      }
      if (!hits.empty()) {
        const KgHit& top = hits.front();
        std::optional<FormulaAnswer> a =
            intent.kind == IntentKind::Geometry
                ? std::optional<FormulaAnswer>(make_formula_answer(top.formula, {}))
                : answer_from_kg(top.qid, top.label, top.formula, diag);
        a->qid = top.qid;
        a->provenance = AnswerProvenance::Kg;
        if (!concept_label.empty()) a->concept_name = concept_label;
        for (std::size_t i = 1; i < hits.size() && a->alternatives.size() < kMaxAlternatives; ++i) {
          a->alternatives.push_back({hits[i].formula, hits[i].qid, static_cast<double>(hits[i].identifier_count), i + 1});
        }
        env.answer = std::move(a);
        env.outcome = Outcome::Answered;
        return env;
      }
      diag.push_back("knowledge graph returned no formula");
    } catch (const Error& e) {
      diag.push_back(std::string("knowledge graph query failed: ") + e.what());
    }
  }

  if (auto fallback = index_fallback(intent, env)) return *fallback;
  env.outcome = Outcome::NoResult;
  diag.push_back("no source returned a formula");
  return env;
}

CalculationResult QaService::calculate(const CalculationRequest& req) const {
  CalculationResult r;
  const auto fail = [&](CalcErrorCode code, std::string message) {
    r.ok = false;
    r.error = code;
    r.message = std::move(message);
    return r;
  };
  if (utf8::trim(req.formula).empty()) return fail(CalcErrorCode::BadRequest, "formula must not be empty");
  FormulaExpression e;
  try {
    e = parse_formula(req.formula);
  } catch (const NonAlgebraic& n) {
    return fail(CalcErrorCode::NonAlgebraic, n.construct());
  } catch (const FormulaSyntaxError& s) {
    return fail(CalcErrorCode::SyntaxError, s.what());
  }
  if (!e.calculable()) return fail(CalcErrorCode::NotCalculable, "the left-hand side is not a single identifier");
  r.lhs = e.lhs_symbol();
  const auto symbols = formula_symbols(e);

  std::map<std::string, double> constants = req.constants;
  if (constants.empty() && req.qid && kg_) {
    try {
      for (const auto& l : kg_->identifier_links(*req.qid)) {
        if (l.symbol && l.constant_value) constants[canonical_symbol(*l.symbol)] = *l.constant_value;
      }
    } catch (const Error&) {
      // constants stay unknown and are reported as unbound
    }
  }

  Bindings b;
  try {
    for (const auto& [sym, value] : req.bindings) {
      if (sym == r.lhs) return fail(CalcErrorCode::BadRequest, "the left-hand side " + sym + " cannot be bound");
      if (std::find(symbols.begin(), symbols.end(), sym) != symbols.end()) b.set(sym, value, BindingSource::User);
    }
    for (const auto& [sym, value] : constants) {
      if (sym == r.lhs || b.contains(sym)) continue;
      if (std::find(symbols.begin(), symbols.end(), sym) != symbols.end()) b.set(sym, value, BindingSource::Constant);
    }
  } catch (const ValidationError& v) {
    return fail(CalcErrorCode::BadRequest, v.what());
  }
  r.used = b;
  r.unknowns = list_unknowns(e, b);
  if (!r.unknowns.empty()) {
    std::string list;
    for (const auto& u : r.unknowns) list += (list.empty() ? "" : ", ") + u;
    return fail(CalcErrorCode::UnboundIdentifier, "no value for " + list);
  }
  try {
    r.value = evaluate(e, b);
  } catch (const ArithmeticError& a) {
    return fail(CalcErrorCode::ArithmeticError, a.what());
  }
  r.ok = true;
  return r;
}

QaService::SourceInventory QaService::inventory() const {
  SourceInventory inv;
  if (arxiv_) inv.arxiv_formulas = arxiv_->formulas.formulas.size();
  if (wikipedia_) inv.wikipedia_formulas = wikipedia_->formulas.formulas.size();
  if (endpoint_) inv.kg = endpoint_->describe();
  if (cache_) inv.cached_queries = cache_->size();
  return inv;
}

}  // namespace mathqa
