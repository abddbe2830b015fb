// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mathqa/errors.hpp"

namespace mathqa {

/// A construct outside the algebraic subset (derivative, cross product, sum, ...).
class NonAlgebraic : public Error {
 public:
  explicit NonAlgebraic(std::string construct)
      : Error("non-algebraic construct: " + construct), construct_(std::move(construct)) {}

  const std::string& construct() const noexcept { return construct_; }

 private:
  std::string construct_;
};

class FormulaSyntaxError : public Error {
 public:
  FormulaSyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Division by zero or a domain violation; names the failing node.
class ArithmeticError : public Error {
 public:
  ArithmeticError(const std::string& what, std::string node) : Error(what + " in " + node), node_(std::move(node)) {}

  const std::string& node() const noexcept { return node_; }

 private:
  std::string node_;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
/// `log` is the base-10 logarithm, `ln` the natural one.
enum class Function { Sin, Cos, Tan, Log, Ln, Exp };

std::string_view to_string(Function f);

struct Number {
  double value = 0;
};
struct Identifier {
  std::string symbol;  // base symbol, with "_index" appended when subscripted
};
struct Binary {
  BinaryOp op;
  NodePtr left;
  NodePtr right;
};
struct Negate {
  NodePtr child;
};
struct Fraction {
  NodePtr numerator;
  NodePtr denominator;
};
struct SquareRoot {
  NodePtr child;
};
struct Call {
  Function fn;
  NodePtr arg;
};

struct Node {
  std::variant<Number, Identifier, Binary, Negate, Fraction, SquareRoot, Call> value;
};

bool operator==(const Node& a, const Node& b);

NodePtr make_number(double v);
NodePtr make_identifier(std::string symbol);
NodePtr make_binary(BinaryOp op, NodePtr left, NodePtr right);
NodePtr make_negate(NodePtr child);
NodePtr make_fraction(NodePtr numerator, NodePtr denominator);
NodePtr make_sqrt(NodePtr child);
NodePtr make_call(Function fn, NodePtr arg);

struct FormulaExpression {
  NodePtr lhs;
  NodePtr rhs;

  /// True when the left-hand side is a single identifier.
  bool calculable() const;
  /// Throws ContractError when not calculable.
  const std::string& lhs_symbol() const;

  friend bool operator==(const FormulaExpression& a, const FormulaExpression& b);
};

enum class BindingSource { User, Constant };

std::string_view to_string(BindingSource s);

struct Binding {
  double value = 0;
  BindingSource source = BindingSource::User;
};

class Bindings {
 public:
  /// Throws ValidationError for non-finite values.
  void set(const std::string& symbol, double value, BindingSource source = BindingSource::User);
  bool contains(const std::string& symbol) const { return values_.count(symbol) != 0; }
  const Binding* find(const std::string& symbol) const;
  const std::map<std::string, Binding>& entries() const { return values_; }

 private:
  std::map<std::string, Binding> values_;
};

/// Parses "lhs = rhs" in the supported LaTeX subset. Throws NonAlgebraic for
/// recognized but unsupported constructs and FormulaSyntaxError otherwise.
FormulaExpression parse_formula(std::string_view latex);

/// Every identifier of the formula, lhs first, in first-occurrence order; pi excluded.
std::vector<std::string> formula_symbols(const FormulaExpression& e);

/// Right-hand side identifiers without a binding, in first-occurrence order.
std::vector<std::string> list_unknowns(const FormulaExpression& e, const Bindings& b);

double evaluate(const FormulaExpression& e, const Bindings& b);

/// Canonical, fully parenthesized LaTeX that parses back to an equal tree.
std::string render(const Node& n);
std::string render(const FormulaExpression& e);

}  // namespace mathqa
