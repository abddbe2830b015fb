// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include "json.hpp"

#include "mathqa/api.hpp"
#include "mathqa/service.hpp"

using namespace mathqa;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kData = MATHQA_DATA_DIR;

const QaService& kg_service() {
  static const QaService s(nullptr, nullptr, std::make_shared<FixtureEndpoint>(kData / "kg" / "fixtures"));
  return s;
}

const QaService& full_service() {
  static const QaService s(
      std::make_shared<Index>(build_index(load_corpus(kData / "corpus" / "arxiv", Source::Arxiv), Source::Arxiv)),
      std::make_shared<Index>(
          build_index(load_corpus(kData / "corpus" / "wikipedia", Source::Wikipedia), Source::Wikipedia)),
      std::make_shared<FixtureEndpoint>(kData / "kg" / "fixtures"));
  return s;
}

const AnswerIdentifier* find_id(const FormulaAnswer& a, const std::string& symbol) {
  for (const auto& id : a.identifiers) {
    if (id.symbol == symbol) return &id;
  }
  return nullptr;
}

}  // namespace

TEST(Service, MassEnergyRelationship) {
  const auto start = std::chrono::steady_clock::now();
  const auto env = kg_service().answer_question("What is the relationship between energy and mass?");
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::milliseconds(200));
  ASSERT_EQ(env.outcome, Outcome::Answered);
  ASSERT_TRUE(env.answer.has_value());
  const FormulaAnswer& a = *env.answer;
  EXPECT_EQ(a.formula, "E = mc^2");
  EXPECT_EQ(a.provenance, AnswerProvenance::Kg);
  EXPECT_TRUE(a.calculable);
  EXPECT_EQ(a.lhs, "E");
  const auto* m = find_id(a, "m");
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(m->name, "mass");
  EXPECT_TRUE(m->bindable);
  const auto* c = find_id(a, "c");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->constant_value, 299792458.0);
  EXPECT_FALSE(c->bindable);
  EXPECT_FALSE(find_id(a, "E")->bindable);
}

TEST(Service, SpeedFormula) {
  const auto start = std::chrono::steady_clock::now();
  const auto env = kg_service().answer_question("what is the formula for speed?");
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::milliseconds(200));
  ASSERT_EQ(env.outcome, Outcome::Answered);
  const FormulaAnswer& a = *env.answer;
  EXPECT_EQ(a.formula, "v = s/t");
  ASSERT_NE(find_id(a, "s"), nullptr);
  EXPECT_EQ(find_id(a, "s")->name, "distance");
  ASSERT_NE(find_id(a, "t"), nullptr);
  EXPECT_EQ(find_id(a, "t")->name, "duration");

  CalculationRequest req;
  req.formula = a.formula;
  req.bindings = {{"s", 100}, {"t", 8}};
  const auto r = kg_service().calculate(req);
  ASSERT_TRUE(r.ok) << r.message;
  EXPECT_EQ(r.lhs, "v");
  EXPECT_DOUBLE_EQ(r.value, 12.5);
}

TEST(Service, ConstantsComeFromTheItem) {
  CalculationRequest req;
  req.formula = "E = mc^2";
  req.bindings = {{"m", 2}};
  req.qid = "Q35875";
  const auto r = kg_service().calculate(req);
  ASSERT_TRUE(r.ok) << r.message;
  EXPECT_DOUBLE_EQ(r.value, 2.0 * 299792458.0 * 299792458.0);
  ASSERT_NE(r.used.find("c"), nullptr);
  EXPECT_EQ(r.used.find("c")->source, BindingSource::Constant);
}

TEST(Service, CalculationErrors) {
  CalculationRequest unbound;
  unbound.formula = "E = mc^2";
  unbound.bindings = {{"m", 1}};
  const auto u = kg_service().calculate(unbound);
  EXPECT_EQ(u.error, CalcErrorCode::UnboundIdentifier);
  EXPECT_EQ(u.unknowns, (std::vector<std::string>{"c"}));

  CalculationRequest lhs;
  lhs.formula = "v = s/t";
  lhs.bindings = {{"v", 1}, {"s", 1}, {"t", 1}};
  EXPECT_EQ(kg_service().calculate(lhs).error, CalcErrorCode::BadRequest);

  CalculationRequest na;
  na.formula = "\\mathbf{a} = \\frac{d\\mathbf{v}}{dt}";
  EXPECT_EQ(kg_service().calculate(na).error, CalcErrorCode::NonAlgebraic);

  CalculationRequest zero;
  zero.formula = "v = s/t";
  zero.bindings = {{"s", 1}, {"t", 0}};
  EXPECT_EQ(kg_service().calculate(zero).error, CalcErrorCode::ArithmeticError);

  CalculationRequest syntax;
  syntax.formula = "v = s/";
  EXPECT_EQ(kg_service().calculate(syntax).error, CalcErrorCode::SyntaxError);
}

TEST(Service, WorkNeedsDisambiguation) {
  const auto env = kg_service().answer_question("what is the formula for work?");
  EXPECT_EQ(env.outcome, Outcome::DisambiguationNeeded);
  EXPECT_GE(env.candidates.size(), 2u);
  EXPECT_FALSE(env.answer.has_value());
}

TEST(Service, UnrecognizedQuestions) {
  EXPECT_EQ(kg_service().answer_question("quelle est la formule de la vitesse", "fr").outcome, Outcome::Unrecognized);
  const auto env = kg_service().answer_question("what is speed");
  EXPECT_EQ(env.outcome, Outcome::Unrecognized);
  EXPECT_FALSE(env.diagnostics.empty());
}

TEST(Service, GeometryQuestion) {
  const auto env = kg_service().answer_question("What is the area of a circle?");
  ASSERT_EQ(env.outcome, Outcome::Answered);
  EXPECT_EQ(env.answer->formula, "A = \\pi r^2");
}

TEST(Service, IndexFallbackWithoutKnowledgeGraphHit) {
  const auto env = full_service().answer_question("what is the formula for zzzunknown energy?");
  if (env.outcome == Outcome::Answered) {
    EXPECT_NE(env.answer->provenance, AnswerProvenance::Kg);
  } else {
    EXPECT_EQ(env.outcome, Outcome::NoResult);
  }
}

TEST(Service, AnswersAreDeterministic) {
  for (const char* q : {"what is the relationship between energy and mass?", "what is the formula for speed?",
                        "what is the formula for work?", "what is the relationship between symbols E and m?"}) {
    EXPECT_EQ(envelope_to_json(full_service().answer_question(q)), envelope_to_json(full_service().answer_question(q)))
        << q;
  }
}

TEST(Service, NeedsAtLeastOneSource) {
  EXPECT_THROW(QaService(nullptr, nullptr, nullptr), ConfigError);
  EXPECT_THROW(QaService(ServiceConfig{}), ConfigError);
}

TEST(Api, Routes) {
  const auto& s = kg_service();
  const auto q = handle_api(s, "POST", "/api/question", R"({"text":"what is the formula for speed?"})");
  EXPECT_EQ(q.status, 200);
  const json j = json::parse(q.body);
  EXPECT_EQ(j["outcome"], "ANSWERED");
  EXPECT_EQ(j["answer"]["formula"], "v = s/t");

  EXPECT_EQ(handle_api(s, "POST", "/api/question", "{oops").status, 400);
  EXPECT_EQ(handle_api(s, "POST", "/api/question", R"({"q":1})").status, 400);
  EXPECT_EQ(handle_api(s, "GET", "/api/question", "").status, 405);
  EXPECT_EQ(handle_api(s, "GET", "/api/nothing", "").status, 404);
  EXPECT_EQ(handle_api(s, "GET", "/api/health", "").status, 200);

  const auto calc =
      handle_api(s, "POST", "/api/calculate", R"({"formula":"v = s/t","bindings":{"s":100,"t":8}})");
  EXPECT_EQ(calc.status, 200);
  const json cj = json::parse(calc.body);
  EXPECT_EQ(cj["lhs"], "v");
  EXPECT_DOUBLE_EQ(cj["value"].get<double>(), 12.5);
  EXPECT_EQ(cj["bindings"]["s"]["source"], "user");

  EXPECT_EQ(handle_api(s, "POST", "/api/calculate", R"({"formula":"v = s/t","bindings":{"s":1}})").status, 422);
  EXPECT_EQ(handle_api(s, "POST", "/api/calculate", R"({"formula":3})").status, 400);
  EXPECT_EQ(handle_api(s, "POST", "/api/calculate", R"({"formula":"v = s/t","bindings":{"s":"x"}})").status, 400);
}

TEST(Api, HttpRoundTrip) {
  ApiServer server(kg_service());
  const int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread t([&] { server.serve(); });
  httplib::Client client("127.0.0.1", port);
  const auto res = client.Post("/api/question", R"({"text":"what is the formula for speed?"})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, handle_api(kg_service(), "POST", "/api/question", R"({"text":"what is the formula for speed?"})").body);
  const auto calc =
      client.Post("/api/calculate", R"({"formula":"v = s/t","bindings":{"s":100,"t":8}})", "application/json");
  ASSERT_TRUE(calc);
  EXPECT_EQ(json::parse(calc->body)["value"].get<double>(), 12.5);
  const auto health = client.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  server.stop();
  t.join();
}
