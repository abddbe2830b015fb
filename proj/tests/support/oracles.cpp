// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "mathqa/utf8.hpp"

namespace oracle {
namespace {

struct Cp {
  char32_t cp;
  std::size_t begin;
  std::size_t end;
};

std::vector<Cp> decode_all(const std::string& body) {
  std::vector<Cp> out;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const std::size_t at = pos;
    const char32_t cp = mathqa::utf8::decode(body, pos);
    out.push_back({cp, at, pos});
  }
  return out;
}

std::vector<bool> prose_bytes(const std::string& body) {
  std::vector<bool> prose(body.size(), true);
  for (const auto& r : mathqa::math_regions(body)) {
    for (std::size_t i = r.start; i < r.end; ++i) prose[i] = false;
  }
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == '<') {
      std::size_t j = i;
      while (j < body.size() && body[j] != '>') prose[j++] = false;
      if (j < body.size()) prose[j++] = false;
      i = j;
      continue;
    }
    if (body[i] == '&') {
      std::size_t j = i + 1;
      while (j < body.size() && j - i <= 10 && body[j] != ';') ++j;
      if (j < body.size() && body[j] == ';' && j - i <= 10) {
        for (std::size_t k = i; k <= j; ++k) prose[k] = false;
        i = j + 1;
        continue;
      }
    }
    ++i;
  }
  return prose;
}

void collect_words(const std::string& body, const std::vector<Cp>& cps, const std::vector<bool>& prose,
                   std::size_t lo, std::size_t hi, const std::set<std::string>& stop, std::set<std::string>& out) {
  std::string word;
  auto done = [&] {
    if (word.empty()) return;
    const std::string lower = mathqa::utf8::to_lower(word);
    if (stop.count(lower) == 0) out.insert(lower);
    word.clear();
  };
  for (const auto& c : cps) {
    if (c.begin < lo || c.end > hi) {
      done();
      continue;
    }
    if (prose[c.begin] && mathqa::utf8::is_letter(c.cp)) {
      word += body.substr(c.begin, c.end - c.begin);
    } else {
      done();
    }
  }
  done();
}

// Recursive descent reader for the algebraic LaTeX subset.
class Reader {
 public:
  Reader(const std::string& text, const std::map<std::string, double>* values) : s_(text), values_(values) {}

  double expression() {
    double v = product();
    for (;;) {
      skip();
      if (peek('+')) {
        ++i_;
        v += product();
      } else if (peek('-')) {
        ++i_;
        v -= product();
      } else {
        return v;
      }
    }
  }

  void read_lhs() {
    const auto* values = values_;
    values_ = nullptr;
    skip();
    while (i_ < s_.size() && s_[i_] != '=') {
      factor();
      skip();
    }
    values_ = values;
    if (i_ == s_.size()) throw std::runtime_error("no '='");
    ++i_;
  }

  bool at_end() {
    skip();
    return i_ == s_.size();
  }

  std::vector<std::string> seen;

 private:
  double product() {
    double v = signed_power();
    for (;;) {
      skip();
      if (i_ >= s_.size() || peek('+') || peek('-') || peek(')') || peek('}') || peek('=')) return v;
      if (peek('/')) {
        ++i_;
        v /= signed_power();
      } else if (command_is("cdot") || command_is("times")) {
        i_ += command_is("cdot") ? 5 : 6;
        v *= signed_power();
      } else if (peek('*')) {
        ++i_;
        v *= signed_power();
      } else {
        v *= signed_power();
      }
    }
  }

  double signed_power() {
    skip();
    if (peek('-')) {
      ++i_;
      return -signed_power();
    }
    return power();
  }

  double power() {
    double base = factor();
    skip();
    if (peek('^')) {
      ++i_;
      return std::pow(base, script());
    }
    return base;
  }

  double script() {
    skip();
    if (peek('{')) {
      ++i_;
      const double v = expression();
      expect('}');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[i_]))) return static_cast<double>(s_[i_++] - '0');
    return factor();
  }

  double factor() {
    skip();
    if (i_ >= s_.size()) throw std::runtime_error("unexpected end");
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i_;
      while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '.')) ++j;
      const double v = std::stod(s_.substr(i_, j - i_));
      i_ = j;
      return v;
    }
    if (c == '(') {
      ++i_;
      const double v = expression();
      expect(')');
      return v;
    }
    if (c == '{') {
      ++i_;
      const double v = expression();
      expect('}');
      return v;
    }
    if (c == '\\') {
      const std::string cmd = command();
      if (cmd == "frac") {
        const double n = group();
        const double d = group();
        return n / d;
      }
      if (cmd == "sqrt") return std::sqrt(group());
      if (cmd == "pi") return 3.14159265358979323846;
      if (cmd == "mathbf" || cmd == "boldsymbol" || cmd == "vec" || cmd == "mathit" || cmd == "bm") return group();
      if (cmd == "left" || cmd == "right") return factor();
      if (cmd == "sin") return std::sin(power());
      if (cmd == "cos") return std::cos(power());
      if (cmd == "tan") return std::tan(power());
      if (cmd == "ln") return std::log(power());
      if (cmd == "log") return std::log10(power());
      if (cmd == "exp") return std::exp(power());
      const std::string letter = greek(cmd);
      if (letter.empty()) throw std::runtime_error("unknown command \\" + cmd);
      return variable(letter);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++i_;
      return variable(std::string(1, c));
    }
    const std::size_t before = i_;
    const char32_t cp = mathqa::utf8::decode(s_, i_);
    if (mathqa::utf8::is_letter(cp)) return variable(s_.substr(before, i_ - before));
    throw std::runtime_error(std::string("unexpected character '") + c + "'");
  }

  double group() {
    skip();
    expect('{');
    const double v = expression();
    expect('}');
    return v;
  }

  double variable(std::string name) {
    skip();
    if (peek('_')) {
      ++i_;
      skip();
      std::string sub;
      if (peek('{')) {
        ++i_;
        int depth = 1;
        std::string raw;
        while (i_ < s_.size() && depth > 0) {
          if (s_[i_] == '{') ++depth;
          if (s_[i_] == '}') --depth;
          if (depth > 0) raw += s_[i_];
          ++i_;
        }
        for (const char* wrap : {"\\text", "\\mathrm", "\\rm"}) {
          std::size_t at;
          while ((at = raw.find(wrap)) != std::string::npos) raw.erase(at, std::string(wrap).size());
        }
        for (char ch : raw) {
          if (ch != '{' && ch != '}' && ch != ' ') sub += ch;
        }
      } else {
        sub = s_.substr(i_, 1);
        ++i_;
      }
      name += "_" + sub;
    }
    if (std::find(seen.begin(), seen.end(), name) == seen.end()) seen.push_back(name);
    if (values_ == nullptr) return 1.0;
    const auto it = values_->find(name);
    if (it == values_->end()) throw std::runtime_error("no value for " + name);
    return it->second;
  }

  std::string command() {
    ++i_;
    std::size_t j = i_;
    while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_) {
      // spacing commands such as "\," or "\;"
      ++i_;
      return "left";
    }
    std::string cmd = s_.substr(i_, j - i_);
    i_ = j;
    return cmd;
  }

  static std::string greek(const std::string& cmd) {
    static const std::map<std::string, std::string> table = {
        {"alpha", "α"}, {"beta", "β"},   {"gamma", "γ"},  {"delta", "δ"},       {"epsilon", "ϵ"}, {"varepsilon", "ε"},
        {"eta", "η"},   {"theta", "θ"},  {"lambda", "λ"}, {"mu", "μ"},          {"nu", "ν"},      {"rho", "ρ"},
        {"sigma", "σ"}, {"tau", "τ"},    {"phi", "ϕ"},    {"varphi", "φ"},      {"omega", "ω"},   {"Phi", "Φ"},
        {"Omega", "Ω"}, {"Delta", "Δ"}, {"kappa", "κ"},  {"chi", "χ"},         {"psi", "ψ"},     {"xi", "ξ"},
        {"zeta", "ζ"},  {"Gamma", "Γ"}, {"Sigma", "Σ"},  {"Lambda", "Λ"},      {"Theta", "Θ"},   {"Psi", "Ψ"}};
    const auto it = table.find(cmd);
    return it == table.end() ? "" : it->second;
  }

  bool command_is(const char* name) const {
    const std::string n = std::string("\\") + name;
    if (s_.compare(i_, n.size(), n) != 0) return false;
    const std::size_t after = i_ + n.size();
    return after >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[after]));
  }

  void skip() {
    for (;;) {
      while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
      if (i_ + 1 < s_.size() && s_[i_] == '\\' && (s_[i_ + 1] == ',' || s_[i_ + 1] == ';' || s_[i_ + 1] == '!')) {
        i_ += 2;
        continue;
      }
      return;
    }
  }

  bool peek(char c) const { return i_ < s_.size() && s_[i_] == c; }

  void expect(char c) {
    skip();
    if (!peek(c)) throw std::runtime_error(std::string("expected '") + c + "'");
    ++i_;
  }

  const std::string& s_;
  const std::map<std::string, double>* values_;
  std::size_t i_ = 0;
};

}  // namespace

CatalogCounts count_catalogs(const std::vector<mathqa::Document>& corpus, std::size_t radius,
                             const std::set<std::string>& stopwords) {
  CatalogCounts out;
  for (const auto& doc : corpus) {
    const auto cps = decode_all(doc.body);
    const auto prose = prose_bytes(doc.body);
    for (const auto& occ : mathqa::extract_formula_occurrences(doc)) {
      std::set<std::string> words;
      const auto first = std::find_if(cps.begin(), cps.end(), [&](const Cp& c) { return c.begin == occ.span.start; });
      const auto after = std::find_if(cps.begin(), cps.end(), [&](const Cp& c) { return c.begin >= occ.span.end; });
      const auto before_count = static_cast<std::size_t>(first - cps.begin());
      const auto after_count = static_cast<std::size_t>(cps.end() - after);
      const std::size_t lo = cps[before_count - std::min(radius, before_count)].begin;
      const std::size_t hi =
          after_count <= radius ? doc.body.size() : (after + static_cast<std::ptrdiff_t>(radius))->begin;
      collect_words(doc.body, cps, prose, lo, occ.span.start, stopwords, words);
      collect_words(doc.body, cps, prose, occ.span.end, hi, stopwords, words);
      const std::set<std::string> ids(occ.identifiers.begin(), occ.identifiers.end());
      for (const auto& w : words) {
        for (const auto& id : ids) {
          out.symbol_to_name[id][w] += 1;
          out.name_to_symbol[w][id] += 1;
        }
        out.term_to_formula[w][occ.formula] += 1;
      }
    }
  }
  return out;
}

std::set<std::string> read_stopwords(const std::string& path) {
  std::ifstream in(path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.insert(mathqa::utf8::to_lower(line));
  }
  return out;
}

std::string without_sizing(std::string s) {
  for (const char* cmd : {"\\left", "\\right"}) {
    std::size_t at;
    while ((at = s.find(cmd)) != std::string::npos) s.erase(at, std::string(cmd).size());
  }
  return s;
}

double evaluate_rhs(const std::string& formula, const std::map<std::string, double>& values) {
  const std::string text = without_sizing(formula);
  Reader r(text, &values);
  r.read_lhs();
  const double v = r.expression();
  if (!r.at_end()) throw std::runtime_error("trailing input in " + formula);
  return v;
}

std::vector<std::string> identifiers(const std::string& formula) {
  const std::string text = without_sizing(formula);
  Reader r(text, nullptr);
  r.read_lhs();
  r.expression();
  return r.seen;
}

const std::set<int>& non_algebraic_gold_ids() {
  static const std::set<int> ids = {310, 311, 313, 314, 315, 317, 318};
  return ids;
}

}  // namespace oracle
