// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mathqa/calculator.hpp"
#include "mathqa/catalog.hpp"
#include "mathqa/kg.hpp"
#include "mathqa/question.hpp"
#include "mathqa/retrieval.hpp"

namespace mathqa {

enum class Outcome { Answered, NoResult, DisambiguationNeeded, Unrecognized };
enum class AnswerProvenance { Kg, ArxivIndex, WikipediaIndex };

std::string_view to_string(Outcome o);
std::string_view to_string(AnswerProvenance p);

struct AnswerIdentifier {
  std::string symbol;
  std::optional<std::string> name;
  std::optional<std::string> qid;
  std::optional<double> constant_value;
  bool bindable = true;
};

struct Alternative {
  std::string formula;
  std::optional<std::string> qid;
  double score = 0;
  std::size_t rank = 0;
};

struct FormulaAnswer {
  std::string formula;
  std::optional<std::string> concept_name;
  std::optional<std::string> qid;
  std::vector<AnswerIdentifier> identifiers;  // formula order, lhs first
  AnswerProvenance provenance = AnswerProvenance::Kg;
  bool calculable = false;
  std::optional<std::string> lhs;
  std::optional<std::string> non_algebraic;  // the construct that blocks calculation
  std::vector<Alternative> alternatives;     // at most 9
};

struct AnswerEnvelope {
  std::optional<QuestionIntent> intent;
  std::optional<FormulaAnswer> answer;
  Outcome outcome = Outcome::NoResult;
  std::vector<KgCandidate> candidates;  // DisambiguationNeeded
  std::vector<std::string> diagnostics;
};

/// Error codes of a failed calculation.
enum class CalcErrorCode { NonAlgebraic, SyntaxError, ArithmeticError, UnboundIdentifier, NotCalculable, BadRequest };

std::string_view to_string(CalcErrorCode c);

struct CalculationRequest {
  std::string formula;
  std::map<std::string, double> bindings;
  /// Constant values carried by an answer; tagged as constants when used.
  std::map<std::string, double> constants;
  /// When set and no constants are given, constants are taken from this item.
  std::optional<std::string> qid;
};

struct CalculationResult {
  bool ok = false;
  std::string lhs;
  double value = 0;
  Bindings used;
  std::optional<CalcErrorCode> error;
  std::string message;
  std::vector<std::string> unknowns;
};

struct ServiceConfig {
  std::optional<std::filesystem::path> arxiv_index;
  std::optional<std::filesystem::path> wiki_index;
  std::optional<std::filesystem::path> kg_fixtures;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::string> endpoint_url;
  bool offline = false;
  std::chrono::milliseconds endpoint_timeout = std::chrono::seconds(30);
  int port = 8080;
  std::string host = "127.0.0.1";
  std::optional<std::filesystem::path> static_dir;

  /// Reads MATHQA_ARXIV_INDEX, MATHQA_WIKI_INDEX, MATHQA_KG_FIXTURES,
  /// MATHQA_CACHE_DIR, MATHQA_ENDPOINT, MATHQA_OFFLINE, MATHQA_TIMEOUT_MS,
  /// MATHQA_PORT, MATHQA_HOST and MATHQA_STATIC_DIR over the given defaults.
  static ServiceConfig from_env(ServiceConfig defaults);
  static ServiceConfig from_env() { return from_env(ServiceConfig()); }
};

class QaService {
 public:
  /// Loads the configured sources. Throws ConfigError when none is configured.
  explicit QaService(const ServiceConfig& config);
  /// Uses already loaded sources; any may be null but not all.
  QaService(std::shared_ptr<const Index> arxiv, std::shared_ptr<const Index> wikipedia,
            std::shared_ptr<Endpoint> kg_endpoint, std::shared_ptr<QueryCache> cache = nullptr);

  AnswerEnvelope answer_question(std::string_view text, std::string_view lang = "en") const;
  CalculationResult calculate(const CalculationRequest& request) const;

  struct SourceInventory {
    std::optional<std::size_t> arxiv_formulas;
    std::optional<std::size_t> wikipedia_formulas;
    std::optional<std::string> kg;
    std::optional<std::size_t> cached_queries;
  };
  SourceInventory inventory() const;

 private:
  std::optional<FormulaAnswer> answer_from_kg(const std::string& qid, const std::string& label,
                                              const std::string& formula, std::vector<std::string>& diag) const;
  FormulaAnswer answer_from_index(const Index& index, const RankedList& ranked) const;
  std::optional<AnswerEnvelope> index_fallback(const QuestionIntent& intent, AnswerEnvelope env) const;

  std::shared_ptr<const Index> arxiv_;
  std::shared_ptr<const Index> wikipedia_;
  std::shared_ptr<Endpoint> endpoint_;
  std::shared_ptr<QueryCache> cache_;
  std::unique_ptr<KgClient> kg_;
};

/// Fills calculability, lhs and bindable flags from the formula and the identifier links.
FormulaAnswer make_formula_answer(std::string formula, const std::vector<IdentifierLink>& links);

}  // namespace mathqa
