// SPDX-License-Identifier: Apache-2.0
#include "mathqa/calculator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "mathqa/formula_text.hpp"
#include "mathqa/utf8.hpp"

namespace mathqa {
namespace {

constexpr std::string_view kPi = "π";

struct Parsed {
  NodePtr node;
  bool vector = false;
};

bool is_digit(const LatexToken& t) { return t.kind == LatexToken::Kind::Char && t.text.size() == 1 && t.text[0] >= '0' && t.text[0] <= '9'; }

bool is_letter_token(const LatexToken& t) {
  if (t.kind != LatexToken::Kind::Char) return false;
  std::size_t pos = 0;
  return utf8::is_letter(utf8::decode(t.text, pos)) || t.text == kPi;
}

bool is_wrapper(std::string_view w) {
  return w == "mathbf" || w == "boldsymbol" || w == "vec" || w == "bm" || w == "mathit";
}

std::optional<Function> function_of(std::string_view w) {
  if (w == "sin") return Function::Sin;
  if (w == "cos") return Function::Cos;
  if (w == "tan") return Function::Tan;
  if (w == "log") return Function::Log;
  if (w == "ln") return Function::Ln;
  if (w == "exp") return Function::Exp;
  return std::nullopt;
}

// Commands recognized as mathematics the calculator deliberately does not handle.
std::optional<std::string> non_algebraic_command(std::string_view w) {
  if (w == "sum" || w == "prod") return w == "sum" ? "sum" : "product";
  if (w == "int" || w == "iint" || w == "iiint" || w == "oint") return "integral";
  if (w == "partial" || w == "nabla") return "derivative";
  if (w == "dot" || w == "ddot") return "time derivative";
  if (w == "hat") return "unit vector";
  if (w == "lim") return "limit";
  if (w == "max" || w == "min") return "function " + std::string(w);
  if (w == "cdots" || w == "ldots" || w == "dots") return "ellipsis";
  if (w == "approx" || w == "leq" || w == "geq" || w == "neq" || w == "le" || w == "ge" || w == "propto" ||
      w == "equiv" || w == "sim") {
    return "relation " + std::string(w);
  }
  if (w == "text" || w == "mbox") return "text";
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {
    const std::vector<LatexToken> raw = tokenize_latex(src);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const LatexToken& t = raw[i];
      if (t.kind == LatexToken::Kind::Space || t.is_char("$")) continue;
      if (t.kind == LatexToken::Kind::ControlSymbol &&
          (t.text == "," || t.text == ";" || t.text == "!" || t.text == ":" || t.text == " ")) {
        continue;
      }
      if (t.is_word("left") || t.is_word("right") || t.is_word("displaystyle")) {
        std::size_t j = i + 1;
        while (j < raw.size() && raw[j].kind == LatexToken::Kind::Space) ++j;
        if (j < raw.size() && raw[j].is_char(".")) i = j;
        continue;
      }
      toks_.push_back(t);
    }
  }

  FormulaExpression parse() {
    if (toks_.empty()) fail("empty formula");
    FormulaExpression e;
    e.lhs = expression().node;
    if (at_end()) fail("expected '='");
    if (!peek().is_char("=")) fail("unexpected '" + peek().text + "'");
    ++pos_;
    e.rhs = expression().node;
    if (!at_end()) {
      if (peek().is_char("=")) throw NonAlgebraic("chained equality");
      fail("unexpected '" + peek().text + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    const std::size_t offset = at_end() ? src_.size() : toks_[pos_].offset;
    throw FormulaSyntaxError(what, offset);
  }

  bool at_end() const { return pos_ >= toks_.size(); }
  const LatexToken& peek() const { return toks_[pos_]; }

  void expect_char(std::string_view c) {
    if (at_end() || !peek().is_char(c)) fail("expected '" + std::string(c) + "'");
    ++pos_;
  }

  void expect_end_group() {
    if (at_end() || peek().kind != LatexToken::Kind::EndGroup) fail("expected '}'");
    ++pos_;
  }

  Parsed expression() {
    Parsed left = term();
    while (!at_end() && (peek().is_char("+") || peek().is_char("-") || peek().is_char("−"))) {
      const BinaryOp op = peek().is_char("+") ? BinaryOp::Add : BinaryOp::Sub;
      ++pos_;
      Parsed right = term();
      left = {make_binary(op, left.node, right.node), false};
    }
    return left;
  }

  bool starts_operand() const {
    if (at_end()) return false;
    const LatexToken& t = peek();
    switch (t.kind) {
      case LatexToken::Kind::BeginGroup:
        return true;
      case LatexToken::Kind::ControlWord:
        return t.text != "cdot" && t.text != "times" && t.text != "div";
      case LatexToken::Kind::Char:
        return is_digit(t) || is_letter_token(t) || t.text == "(" || t.text == "[" || t.text == "|";
      default:
        return false;
    }
  }

  Parsed term() {
    Parsed left = unary();
    for (;;) {
      if (at_end()) return left;
      const LatexToken& t = peek();
      if (t.is_char("*") || t.is_char("·") || t.is_char("⋅") || t.is_word("cdot")) {
        ++pos_;
        left = {make_binary(BinaryOp::Mul, left.node, unary().node), false};
      } else if (t.is_word("times") || t.is_char("×")) {
        ++pos_;
        Parsed right = unary();
        if (left.vector && right.vector) throw NonAlgebraic("cross product");
        left = {make_binary(BinaryOp::Mul, left.node, right.node), false};
      } else if (t.is_char("/") || t.is_word("div")) {
        ++pos_;
        left = {make_binary(BinaryOp::Div, left.node, unary().node), false};
      } else if (starts_operand()) {
        left = {make_binary(BinaryOp::Mul, left.node, power().node), false};
      } else {
        return left;
      }
    }
  }

  Parsed unary() {
    if (!at_end() && (peek().is_char("-") || peek().is_char("−"))) {
      ++pos_;
      return {make_negate(unary().node), false};
    }
    if (!at_end() && peek().is_char("+")) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Parsed power() {
    Parsed base = primary();
    bool subscripted = false;
    bool raised = false;
    while (!at_end() && (peek().is_char("^") || peek().is_char("_"))) {
      if (peek().is_char("_")) {
        ++pos_;
        const auto* id = std::get_if<Identifier>(&base.node->value);
        if (id == nullptr || subscripted || raised) throw NonAlgebraic("structural subscript");
        base.node = make_identifier(id->symbol + "_" + subscript_text());
        subscripted = true;
      } else {
        ++pos_;
        if (raised) fail("double superscript");
        base = {make_binary(BinaryOp::Pow, base.node, script()), false};
        raised = true;
      }
    }
    return base;
  }

  // Argument of '^': a braced expression or a single token.
  NodePtr script() {
    if (at_end()) fail("missing exponent");
    if (peek().kind == LatexToken::Kind::BeginGroup) return group().node;
    if (is_digit(peek())) {
      const double v = static_cast<double>(peek().text[0] - '0');
      ++pos_;
      return make_number(v);
    }
    return primary().node;
  }

  std::string subscript_text() {
    if (at_end()) fail("missing subscript");
    std::string out;
    const auto take = [&](const LatexToken& t) {
      if (t.kind == LatexToken::Kind::Char && (is_digit(t) || is_letter_token(t))) {
        out += t.text;
      } else if (t.kind == LatexToken::Kind::ControlWord && greek_letter(t.text)) {
        out += *greek_letter(t.text);
      } else {
        throw NonAlgebraic("structural subscript");
      }
    };
    if (peek().kind != LatexToken::Kind::BeginGroup) {
      take(peek());
      ++pos_;
      return out;
    }
    ++pos_;
    while (!at_end() && peek().kind != LatexToken::Kind::EndGroup) {
      const LatexToken& t = peek();
      if (t.is_word("text") || t.is_word("mathrm") || t.is_word("mbox") || t.is_word("textrm")) {
        ++pos_;
        if (at_end() || peek().kind != LatexToken::Kind::BeginGroup) fail("expected '{'");
        ++pos_;
        while (!at_end() && peek().kind != LatexToken::Kind::EndGroup) {
          take(peek());
          ++pos_;
        }
        expect_end_group();
      } else {
        take(t);
        ++pos_;
      }
    }
    expect_end_group();
    if (out.empty()) fail("empty subscript");
    return out;
  }

  Parsed group() {
    ++pos_;  // '{'
    Parsed inner = expression();
    expect_end_group();
    return inner;
  }

  // True when the tokens from `i` read as "d" followed by an identifier.
  bool differential_at(std::size_t i) const {
    if (i + 1 >= toks_.size() || !toks_[i].is_char("d")) return false;
    const LatexToken& next = toks_[i + 1];
    if (is_letter_token(next)) return true;
    return next.kind == LatexToken::Kind::ControlWord && (greek_letter(next.text) || is_wrapper(next.text));
  }

  bool upright_d_at(std::size_t i) const {
    return i + 3 < toks_.size() && toks_[i].is_word("mathrm") && toks_[i + 1].kind == LatexToken::Kind::BeginGroup &&
           toks_[i + 2].is_char("d") && toks_[i + 3].kind == LatexToken::Kind::EndGroup;
  }

  std::size_t group_end(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < toks_.size(); ++i) {
      if (toks_[i].kind == LatexToken::Kind::BeginGroup) ++depth;
      if (toks_[i].kind == LatexToken::Kind::EndGroup && --depth == 0) return i + 1;
    }
    return toks_.size();
  }

  Parsed fraction() {
    if (at_end() || peek().kind != LatexToken::Kind::BeginGroup) fail("\\frac expects {numerator}");
    const std::size_t num_open = pos_;
    const std::size_t den_open = group_end(num_open);
    if (den_open < toks_.size() && toks_[den_open].kind == LatexToken::Kind::BeginGroup) {
      const bool num_d = differential_at(num_open + 1) || upright_d_at(num_open + 1) ||
                         (num_open + 2 < toks_.size() && toks_[num_open + 1].is_char("d") &&
                          toks_[num_open + 2].kind == LatexToken::Kind::EndGroup);
      const bool den_d = differential_at(den_open + 1) || upright_d_at(den_open + 1);
      if (den_d && num_d) throw NonAlgebraic("derivative");
    }
    NodePtr num = group().node;
    if (at_end() || peek().kind != LatexToken::Kind::BeginGroup) fail("\\frac expects {denominator}");
    NodePtr den = group().node;
    return {make_fraction(num, den), false};
  }

  Parsed primary() {
    if (at_end()) fail("unexpected end of formula");
    const LatexToken t = peek();
    if (is_digit(t) || t.is_char(".")) return {number(), false};
    if (is_letter_token(t)) {
      ++pos_;
      return {make_identifier(t.text), false};
    }
    if (t.is_char("(") || t.is_char("[")) {
      ++pos_;
      Parsed inner = expression();
      expect_char(t.is_char("(") ? ")" : "]");
      return inner;
    }
    if (t.is_char("|")) throw NonAlgebraic("absolute value");
    if (t.kind == LatexToken::Kind::BeginGroup) return group();
    if (t.kind == LatexToken::Kind::ControlWord) return command();
    if (t.kind == LatexToken::Kind::EndGroup) fail("unbalanced '}'");
    if (t.is_char("<") || t.is_char(">")) throw NonAlgebraic("relation " + t.text);
    fail("unexpected '" + (t.kind == LatexToken::Kind::ControlSymbol ? "\\" + t.text : t.text) + "'");
  }

  NodePtr number() {
    std::string digits;
    while (!at_end() && (is_digit(peek()) || peek().is_char("."))) {
      digits += peek().text;
      ++pos_;
    }
    double v = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) fail("malformed number '" + digits + "'");
    return make_number(v);
  }

  Parsed command() {
    const std::string w = peek().text;
    ++pos_;
    if (auto g = greek_letter(w)) return {make_identifier(*g), false};
    if (w == "frac" || w == "dfrac" || w == "tfrac") return fraction();
    if (w == "sqrt") {
      if (!at_end() && peek().is_char("[")) throw NonAlgebraic("nth root");
      if (!at_end() && peek().kind == LatexToken::Kind::BeginGroup) return {make_sqrt(group().node), false};
      return {make_sqrt(primary().node), false};
    }
    if (is_wrapper(w)) {
      Parsed inner = at_end() ? primary() : (peek().kind == LatexToken::Kind::BeginGroup ? group() : primary());
      inner.vector = std::holds_alternative<Identifier>(inner.node->value);
      return inner;
    }
    if (w == "mathrm" || w == "operatorname") {
      if (at_end() || peek().kind != LatexToken::Kind::BeginGroup) fail("\\" + w + " expects a group");
      ++pos_;
      std::string name;
      while (!at_end() && peek().kind != LatexToken::Kind::EndGroup) {
        if (!is_letter_token(peek())) fail("unexpected '" + peek().text + "' in \\" + w);
        name += peek().text;
        ++pos_;
      }
      expect_end_group();
      if (name.empty()) fail("empty \\" + w);
      if (auto fn = function_of(name)) return {call(*fn), false};
      if (name == "d") throw NonAlgebraic("derivative");
      return {make_identifier(name), false};
    }
    if (auto fn = function_of(w)) return {call(*fn), false};
    if (auto construct = non_algebraic_command(w)) throw NonAlgebraic(*construct);
    if (w == "cdot" || w == "times" || w == "div") fail("operator \\" + w + " without a left operand");
    throw NonAlgebraic("unknown command \\" + w);
  }

  NodePtr call(Function fn) {
    NodePtr exponent;
    if (!at_end() && peek().is_char("^")) {
      ++pos_;
      exponent = script();
    }
    if (at_end()) fail("missing function argument");
    NodePtr arg;
    if (peek().is_char("(")) {
      ++pos_;
      arg = expression().node;
      expect_char(")");
    } else if (peek().kind == LatexToken::Kind::BeginGroup) {
      arg = group().node;
    } else {
      arg = power().node;
    }
    NodePtr out = make_call(fn, arg);
    return exponent ? make_binary(BinaryOp::Pow, out, exponent) : out;
  }

  std::string_view src_;
  std::vector<LatexToken> toks_;
  std::size_t pos_ = 0;
};

void collect_symbols(const Node& n, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Identifier>) {
          if (v.symbol != kPi && std::find(out.begin(), out.end(), v.symbol) == out.end()) out.push_back(v.symbol);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_symbols(*v.left, out);
          collect_symbols(*v.right, out);
        } else if constexpr (std::is_same_v<T, Negate> || std::is_same_v<T, SquareRoot>) {
          collect_symbols(*v.child, out);
        } else if constexpr (std::is_same_v<T, Fraction>) {
          collect_symbols(*v.numerator, out);
          collect_symbols(*v.denominator, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          collect_symbols(*v.arg, out);
        }
      },
      n.value);
}

std::string render_number(double v) {
  char buf[512];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  if (ec != std::errc()) return "0";
  return std::string(buf, ptr);
}

std::string render_symbol(const std::string& symbol) {
  if (symbol == kPi) return "\\pi";
  const std::size_t underscore = symbol.find('_');
  const std::string base = symbol.substr(0, underscore);
  std::string out;
  if (auto cmd = greek_command(base)) {
    out = "\\" + *cmd + " ";
  } else if (utf8::length(base) == 1) {
    out = base;
  } else {
    out = "\\mathrm{" + base + "}";
  }
  if (underscore != std::string::npos) out += "_{" + symbol.substr(underscore + 1) + "}";
  return out;
}

double check(double v, const Node& n, const char* what) {
  if (!std::isfinite(v)) throw ArithmeticError(what, render(n));
  return v;
}

double eval(const Node& n, const Bindings& b) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Number>) {
          return v.value;
        } else if constexpr (std::is_same_v<T, Identifier>) {
          if (v.symbol == kPi) return std::numbers::pi;
          const Binding* binding = b.find(v.symbol);
          if (binding == nullptr) throw ContractError("unbound identifier '" + v.symbol + "'");
          return binding->value;
        } else if constexpr (std::is_same_v<T, Binary>) {
          const double l = eval(*v.left, b);
          const double r = eval(*v.right, b);
          switch (v.op) {
            case BinaryOp::Add:
              return check(l + r, n, "overflow");
            case BinaryOp::Sub:
              return check(l - r, n, "overflow");
            case BinaryOp::Mul:
              return check(l * r, n, "overflow");
            case BinaryOp::Div:
              if (r == 0) throw ArithmeticError("division by zero", render(n));
              return check(l / r, n, "overflow");
            case BinaryOp::Pow:
              if (l == 0 && r < 0) throw ArithmeticError("division by zero", render(n));
              if (l < 0 && std::floor(r) != r) throw ArithmeticError("domain error", render(n));
              return check(std::pow(l, r), n, "overflow");
          }
          return 0;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -eval(*v.child, b);
        } else if constexpr (std::is_same_v<T, Fraction>) {
          const double num = eval(*v.numerator, b);
          const double den = eval(*v.denominator, b);
          if (den == 0) throw ArithmeticError("division by zero", render(n));
          return check(num / den, n, "overflow");
        } else if constexpr (std::is_same_v<T, SquareRoot>) {
          const double x = eval(*v.child, b);
          if (x < 0) throw ArithmeticError("square root of a negative number", render(n));
          return std::sqrt(x);
        } else {
          const double x = eval(*v.arg, b);
          switch (v.fn) {
            case Function::Sin:
              return std::sin(x);
            case Function::Cos:
              return std::cos(x);
            case Function::Tan:
              return check(std::tan(x), n, "domain error");
            case Function::Log:
              if (x <= 0) throw ArithmeticError("logarithm of a non-positive number", render(n));
              return std::log10(x);
            case Function::Ln:
              if (x <= 0) throw ArithmeticError("logarithm of a non-positive number", render(n));
              return std::log(x);
            case Function::Exp:
              return check(std::exp(x), n, "overflow");
          }
          return 0;
        }
      },
      n.value);
}

NodePtr wrap(Node n) { return std::make_shared<const Node>(std::move(n)); }

bool same(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

}  // namespace

std::string_view to_string(Function f) {
  switch (f) {
    case Function::Sin:
      return "sin";
    case Function::Cos:
      return "cos";
    case Function::Tan:
      return "tan";
    case Function::Log:
      return "log";
    case Function::Ln:
      return "ln";
    case Function::Exp:
      return "exp";
  }
  return "sin";
}

std::string_view to_string(BindingSource s) { return s == BindingSource::User ? "user" : "constant"; }

bool operator==(const Node& a, const Node& b) {
  if (a.value.index() != b.value.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.value);
        if constexpr (std::is_same_v<T, Number>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Identifier>) {
          return x.symbol == y.symbol;
        } else if constexpr (std::is_same_v<T, Binary>) {
          return x.op == y.op && same(x.left, y.left) && same(x.right, y.right);
        } else if constexpr (std::is_same_v<T, Negate> || std::is_same_v<T, SquareRoot>) {
          return same(x.child, y.child);
        } else if constexpr (std::is_same_v<T, Fraction>) {
          return same(x.numerator, y.numerator) && same(x.denominator, y.denominator);
        } else {
          return x.fn == y.fn && same(x.arg, y.arg);
        }
      },
      a.value);
}

NodePtr make_number(double v) { return wrap({Number{v}}); }
NodePtr make_identifier(std::string symbol) { return wrap({Identifier{std::move(symbol)}}); }
NodePtr make_binary(BinaryOp op, NodePtr left, NodePtr right) {
  return wrap({Binary{op, std::move(left), std::move(right)}});
}
NodePtr make_negate(NodePtr child) { return wrap({Negate{std::move(child)}}); }
NodePtr make_fraction(NodePtr numerator, NodePtr denominator) {
  return wrap({Fraction{std::move(numerator), std::move(denominator)}});
}
NodePtr make_sqrt(NodePtr child) { return wrap({SquareRoot{std::move(child)}}); }
NodePtr make_call(Function fn, NodePtr arg) { return wrap({Call{fn, std::move(arg)}}); }

bool FormulaExpression::calculable() const {
  return lhs && std::holds_alternative<Identifier>(lhs->value) && std::get<Identifier>(lhs->value).symbol != kPi;
}

const std::string& FormulaExpression::lhs_symbol() const {
  if (!calculable()) throw ContractError("left-hand side is not a single identifier");
  return std::get<Identifier>(lhs->value).symbol;
}

bool operator==(const FormulaExpression& a, const FormulaExpression& b) {
  return same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
}

void Bindings::set(const std::string& symbol, double value, BindingSource source) {
  if (!std::isfinite(value)) throw ValidationError("binding for '" + symbol + "' is not finite");
  values_[symbol] = {value, source};
}

const Binding* Bindings::find(const std::string& symbol) const {
  const auto it = values_.find(symbol);
  return it == values_.end() ? nullptr : &it->second;
}

FormulaExpression parse_formula(std::string_view latex) { return Parser(latex).parse(); }

std::vector<std::string> formula_symbols(const FormulaExpression& e) {
  std::vector<std::string> out;
  if (e.lhs) collect_symbols(*e.lhs, out);
  if (e.rhs) collect_symbols(*e.rhs, out);
  return out;
}

std::vector<std::string> list_unknowns(const FormulaExpression& e, const Bindings& b) {
  const std::string& lhs = e.lhs_symbol();
  std::vector<std::string> rhs;
  collect_symbols(*e.rhs, rhs);
  std::vector<std::string> out;
  for (const auto& s : rhs) {
    if (s != lhs && !b.contains(s)) out.push_back(s);
  }
  return out;
}

double evaluate(const FormulaExpression& e, const Bindings& b) {
  const std::string& lhs = e.lhs_symbol();
  if (b.contains(lhs)) throw ContractError("the left-hand side '" + lhs + "' must not be bound");
  const auto unknowns = list_unknowns(e, b);
  if (!unknowns.empty()) throw ContractError("unbound identifier '" + unknowns.front() + "'");
  return eval(*e.rhs, b);
}

std::string render(const Node& n) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Number>) {
          return render_number(v.value);
        } else if constexpr (std::is_same_v<T, Identifier>) {
          return render_symbol(v.symbol);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const std::string l = render(*v.left);
          const std::string r = render(*v.right);
          switch (v.op) {
            case BinaryOp::Add:
              return "(" + l + " + " + r + ")";
            case BinaryOp::Sub:
              return "(" + l + " - " + r + ")";
            case BinaryOp::Mul:
              return "(" + l + " \\cdot " + r + ")";
            case BinaryOp::Div:
              return "(" + l + " / " + r + ")";
            case BinaryOp::Pow:
              return "((" + l + ")^{" + r + "})";
          }
          return {};
        } else if constexpr (std::is_same_v<T, Negate>) {
          return "(-" + render(*v.child) + ")";
        } else if constexpr (std::is_same_v<T, Fraction>) {
          return "\\frac{" + render(*v.numerator) + "}{" + render(*v.denominator) + "}";
        } else if constexpr (std::is_same_v<T, SquareRoot>) {
          return "\\sqrt{" + render(*v.child) + "}";
        } else {
          return "\\" + std::string(to_string(v.fn)) + "(" + render(*v.arg) + ")";
        }
      },
      n.value);
}

std::string render(const FormulaExpression& e) { return render(*e.lhs) + " = " + render(*e.rhs); }

}  // namespace mathqa
