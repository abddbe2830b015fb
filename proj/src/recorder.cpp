// SPDX-License-Identifier: Apache-2.0
#include "mathqa/recorder.hpp"

#include <algorithm>

#include "mathqa/eval.hpp"
#include "mathqa/service.hpp"

namespace mathqa {
namespace {

namespace fs = std::filesystem;

std::string enumerate(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += i + 1 == items.size() ? " and " : ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

std::vector<std::string> standard_questions(const std::vector<GoldRecord>& gold) {
  std::vector<std::string> q = {
      "what is the relationship between energy and mass?",
      "what is the formula for speed?",
      "what is the formula for work?",
      "what is the area of a circle?",
      "what is the volume of a sphere?",
      "what is the surface area of a sphere?",
      "what is the circumference of a circle?",
      "what is the relationship between symbols E and m?",
  };
  for (const auto& r : gold) {
    q.push_back("what is the formula for " + r.concept_name + "?");
    std::vector<std::string> names, symbols;
    for (const auto& a : r.annotations) {
      if (std::find(names.begin(), names.end(), a.name) == names.end()) names.push_back(a.name);
      if (std::find(symbols.begin(), symbols.end(), a.symbol) == symbols.end()) symbols.push_back(a.symbol);
    }
    if (names.size() >= 2) q.push_back("what is the relationship between " + enumerate(names) + "?");
    if (symbols.size() >= 2) q.push_back("what is the relationship between symbols " + enumerate(symbols) + "?");
  }
  return q;
}

std::size_t record_fixtures(Endpoint& source, const std::vector<GoldRecord>& gold, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  for (const auto& e : fs::directory_iterator(out_dir)) {
    if (e.path().extension() == ".json" || e.path().extension() == ".rq") fs::remove(e.path());
  }
  auto recording = std::make_shared<RecordingEndpoint>(source, out_dir);

  const KgClient kg(*recording);
  EvalSources sources;
  sources.wikidata = &kg;
  run_modes({3, 6, 9, 12, 15}, gold, sources);
  for (const auto& r : gold) kg.has_formula(r.qid);

  const QaService service(nullptr, nullptr, recording);
  for (const auto& question : standard_questions(gold)) {
    const AnswerEnvelope env = service.answer_question(question);
    if (env.answer && env.answer->qid) {
      CalculationRequest req;
      req.formula = env.answer->formula;
      req.qid = env.answer->qid;
      service.calculate(req);
    }
  }
  return FixtureEndpoint(out_dir).size();
}

}  // namespace mathqa
