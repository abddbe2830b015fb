// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <random>

#include "mathqa/calculator.hpp"
#include "mathqa/corpus.hpp"
#include "oracles.hpp"

using namespace mathqa;

namespace {

const std::filesystem::path kData = MATHQA_DATA_DIR;

std::vector<GoldRecord> gold() { return load_gold_benchmark(kData / "benchmark" / "gold.tsv"); }

bool close(double a, double b, double rel) {
  if (a == b) return true;
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

// Random expression trees over a fixed alphabet, rendered as LaTeX by hand.
struct RandomFormula {
  std::mt19937& rng;
  int depth_left;

  std::string node(int depth) {
    std::uniform_int_distribution<int> pick(0, depth >= depth_left ? 1 : 8);
    switch (pick(rng)) {
      case 0:
        return std::string(1, "xzwu"[rng() % 4]);
      case 1:
        return std::to_string(1 + rng() % 9);
      case 2:
        return "(" + node(depth + 1) + " + " + node(depth + 1) + ")";
      case 3:
        return "(" + node(depth + 1) + " - " + node(depth + 1) + ")";
      case 4:
        return node(depth + 1) + " \\cdot " + node(depth + 1);
      case 5:
        return "\\frac{" + node(depth + 1) + "}{" + std::string(1, "xzwu"[rng() % 4]) + "}";
      case 6:
        return "\\sqrt{" + std::string(1, "xzwu"[rng() % 4]) + "}";
      case 7:
        return std::string(1, "xzwu"[rng() % 4]) + "^{2}";
      default:
        return "\\sin(" + node(depth + 1) + ")";
    }
  }
};

}  // namespace

TEST(Calculator, AlgebraicGoldFormulasAgreeWithReferenceEvaluator) {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> value(0.1, 10.0);
  std::size_t algebraic = 0;
  for (const auto& r : gold()) {
    if (oracle::non_algebraic_gold_ids().count(r.gold_id)) continue;
    ++algebraic;
    SCOPED_TRACE(std::to_string(r.gold_id) + " " + r.formula);
    FormulaExpression e;
    ASSERT_NO_THROW(e = parse_formula(r.formula));
    const auto ids = oracle::identifiers(r.formula);
    const auto lib_ids = formula_symbols(e);
    EXPECT_EQ(lib_ids, ids);
    int agreed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      std::map<std::string, double> values;
      Bindings b;
      for (std::size_t i = 1; i < ids.size(); ++i) {
        const double v = value(rng);
        values[ids[i]] = v;
        b.set(ids[i], v);
      }
      const double want = oracle::evaluate_rhs(r.formula, values);
      double got = 0;
      try {
        got = evaluate(e, b);
      } catch (const ArithmeticError&) {
        EXPECT_FALSE(std::isfinite(want)) << "trial " << trial;
        continue;
      }
      if (close(got, want, 1e-9)) {
        ++agreed;
      } else {
        ADD_FAILURE() << "trial " << trial << ": " << got << " vs " << want;
        break;
      }
    }
    EXPECT_EQ(agreed, 1000);
  }
  EXPECT_EQ(algebraic, 58u);
}

TEST(Calculator, NonAlgebraicGoldFormulasNameTheirConstruct) {
  for (const auto& r : gold()) {
    if (!oracle::non_algebraic_gold_ids().count(r.gold_id)) continue;
    SCOPED_TRACE(std::to_string(r.gold_id) + " " + r.formula);
    try {
      parse_formula(r.formula);
      ADD_FAILURE() << "parsed a non-algebraic formula";
    } catch (const NonAlgebraic& e) {
      EXPECT_FALSE(e.construct().empty());
    } catch (const std::exception& e) {
      ADD_FAILURE() << "generic error: " << e.what();
    }
  }
}

TEST(Calculator, NamedConstructsForKnownCases) {
  const auto construct = [](const std::string& f) {
    try {
      parse_formula(f);
    } catch (const NonAlgebraic& e) {
      return e.construct();
    }
    return std::string();
  };
  EXPECT_NE(construct("\\mathbf{a} = \\frac{d\\mathbf{v}}{dt}").find("derivative"), std::string::npos);
  EXPECT_NE(construct("\\mathbf{\\tau} = \\mathbf{r} \\times \\mathbf{F}").find("cross"), std::string::npos);
  EXPECT_NE(construct("F = \\sum_i F_i").find("sum"), std::string::npos);
}

TEST(Calculator, RandomFormulasAgreeWithReferenceEvaluator) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> value(0.5, 5.0);
  for (int i = 0; i < 300; ++i) {
    RandomFormula gen{rng, 4};
    const std::string f = "y = " + gen.node(0);
    SCOPED_TRACE(f);
    const FormulaExpression e = parse_formula(f);
    std::map<std::string, double> values;
    Bindings b;
    for (const char* s : {"x", "z", "w", "u"}) {
      const double v = value(rng);
      values[s] = v;
      b.set(s, v);
    }
    values["y"] = 0;
    const double want = oracle::evaluate_rhs(f, values);
    const double got = evaluate(e, b);
    EXPECT_TRUE(close(got, want, 1e-12)) << got << " vs " << want;
  }
}

TEST(Calculator, RenderParsesBackToEqualTree) {
  for (const auto& r : gold()) {
    if (oracle::non_algebraic_gold_ids().count(r.gold_id)) continue;
    const FormulaExpression e = parse_formula(r.formula);
    EXPECT_EQ(parse_formula(render(e)), e) << r.formula << " -> " << render(e);
  }
}

TEST(Calculator, WorkedExamples) {
  const FormulaExpression e = parse_formula("E = mc^2");
  EXPECT_TRUE(e.calculable());
  EXPECT_EQ(e.lhs_symbol(), "E");
  Bindings b;
  b.set("m", 2);
  EXPECT_EQ(list_unknowns(e, b), (std::vector<std::string>{"c"}));
  b.set("c", 299792458, BindingSource::Constant);
  EXPECT_DOUBLE_EQ(evaluate(e, b), 2.0 * 299792458.0 * 299792458.0);

  const FormulaExpression v = parse_formula("v = \\frac{s}{t}");
  Bindings sb;
  sb.set("s", 100);
  sb.set("t", 8);
  EXPECT_DOUBLE_EQ(evaluate(v, sb), 12.5);
  EXPECT_EQ(formula_symbols(v), (std::vector<std::string>{"v", "s", "t"}));
}

TEST(Calculator, ErrorsAreTyped) {
  EXPECT_THROW(parse_formula("E = m +"), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("E = (m"), FormulaSyntaxError);
  const FormulaExpression e = parse_formula("y = \\frac{1}{x}");
  Bindings zero;
  zero.set("x", 0);
  EXPECT_THROW(evaluate(e, zero), ArithmeticError);
  const FormulaExpression r = parse_formula("y = \\sqrt{x}");
  Bindings neg;
  neg.set("x", -1);
  EXPECT_THROW(evaluate(r, neg), ArithmeticError);
  Bindings none;
  EXPECT_THROW(evaluate(e, none), Error);
  Bindings bad;
  EXPECT_THROW(bad.set("x", std::nan("")), ValidationError);
  const FormulaExpression nc = parse_formula("a + b = c");
  EXPECT_FALSE(nc.calculable());
  EXPECT_THROW(nc.lhs_symbol(), ContractError);
}

TEST(Calculator, LogarithmsAndTrig) {
  Bindings b;
  b.set("x", 100);
  EXPECT_NEAR(evaluate(parse_formula("y = \\log x"), b), 2.0, 1e-12);
  EXPECT_NEAR(evaluate(parse_formula("y = \\ln x"), b), std::log(100.0), 1e-12);
  b.set("θ", 0.5);
  EXPECT_NEAR(evaluate(parse_formula("y = \\sin\\theta"), b), std::sin(0.5), 1e-12);
}
