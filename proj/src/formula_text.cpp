// SPDX-License-Identifier: Apache-2.0
#include "mathqa/formula_text.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "mathqa/utf8.hpp"

namespace mathqa {
namespace {

const std::map<std::string, std::string, std::less<>>& greek_table() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"alpha", "α"},   {"beta", "β"},     {"gamma", "γ"},  {"delta", "δ"},  {"epsilon", "ϵ"},
      {"varepsilon", "ε"}, {"zeta", "ζ"},  {"eta", "η"},    {"theta", "θ"},  {"vartheta", "ϑ"},
      {"iota", "ι"},    {"kappa", "κ"},    {"lambda", "λ"}, {"mu", "μ"},     {"nu", "ν"},
      {"xi", "ξ"},      {"pi", "π"},       {"rho", "ρ"},    {"varrho", "ϱ"}, {"sigma", "σ"},
      {"tau", "τ"},     {"upsilon", "υ"},  {"phi", "ϕ"},    {"varphi", "φ"}, {"chi", "χ"},
      {"psi", "ψ"},     {"omega", "ω"},    {"Gamma", "Γ"},  {"Delta", "Δ"},  {"Theta", "Θ"},
      {"Lambda", "Λ"},  {"Xi", "Ξ"},       {"Pi", "Π"},     {"Sigma", "Σ"},  {"Upsilon", "Υ"},
      {"Phi", "Φ"},     {"Psi", "Ψ"},      {"Omega", "Ω"},
  };
  return table;
}

bool is_wrapper(std::string_view w) {
  return w == "mathbf" || w == "boldsymbol" || w == "vec" || w == "bm" || w == "mathit";
}

bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::size_t skip_spaces(const std::vector<LatexToken>& t, std::size_t i) {
  while (i < t.size() && t[i].kind == LatexToken::Kind::Space) ++i;
  return i;
}

// Index one past the EndGroup matching the BeginGroup at `open`.
std::size_t group_end(const std::vector<LatexToken>& t, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < t.size(); ++i) {
    if (t[i].kind == LatexToken::Kind::BeginGroup) ++depth;
    if (t[i].kind == LatexToken::Kind::EndGroup && --depth == 0) return i + 1;
  }
  return t.size();
}

// Index one past the argument starting at `i` (a group or a single token).
std::size_t argument_end(const std::vector<LatexToken>& t, std::size_t i) {
  i = skip_spaces(t, i);
  if (i >= t.size()) return i;
  if (t[i].kind == LatexToken::Kind::BeginGroup) return group_end(t, i);
  return i + 1;
}

struct Piece {
  std::string text;
  bool control_word = false;
};

std::string join(const std::vector<Piece>& pieces) {
  std::string out;
  bool prev_word = false;
  for (const auto& p : pieces) {
    if (prev_word && !p.text.empty() && is_ascii_letter(p.text.front())) out.push_back(' ');
    out += p.text;
    prev_word = p.control_word;
  }
  return out;
}

class Normalizer {
 public:
  explicit Normalizer(const std::vector<LatexToken>& tokens) : t_(tokens) {}

  std::vector<Piece> run(std::size_t begin, std::size_t end) {
    std::vector<Piece> out;
    std::size_t i = begin;
    while (i < end) i = step(i, end, out);
    return out;
  }

 private:
  std::size_t step(std::size_t i, std::size_t end, std::vector<Piece>& out) {
    const LatexToken& tok = t_[i];
    switch (tok.kind) {
      case LatexToken::Kind::Space:
        return i + 1;
      case LatexToken::Kind::ControlSymbol: {
        static constexpr std::array<std::string_view, 6> spacing = {",", ";", "!", ":", " ", ">"};
        if (std::find(spacing.begin(), spacing.end(), tok.text) == spacing.end()) {
          out.push_back({"\\" + tok.text, false});
        }
        return i + 1;
      }
      case LatexToken::Kind::ControlWord:
        return control_word(i, end, out);
      case LatexToken::Kind::Char: {
        if (tok.text == "$") return i + 1;
        if (tok.text == "*" || tok.text == "⋅" || tok.text == "·") {
          out.push_back({"·", false});
        } else if (tok.text == "−") {
          out.push_back({"-", false});
        } else if (tok.text == "∗") {
          out.push_back({"·", false});
        } else {
          out.push_back({tok.text, false});
        }
        return i + 1;
      }
      case LatexToken::Kind::BeginGroup: {
        const std::size_t close = std::min(group_end(t_, i), end);
        const bool closed = close > i + 1 && t_[close - 1].kind == LatexToken::Kind::EndGroup;
        std::vector<Piece> inner = run(i + 1, closed ? close - 1 : close);
        const bool after_script = !out.empty() && (out.back().text == "^" || out.back().text == "_");
        if (after_script && inner.size() == 1 && inner.front().text.front() != '{') {
          out.push_back(inner.front());
        } else {
          out.push_back({"{" + join(inner) + (closed ? "}" : ""), false});
        }
        return close;
      }
      case LatexToken::Kind::EndGroup:
        out.push_back({"}", false});
        return i + 1;
    }
    return i + 1;
  }

  std::size_t control_word(std::size_t i, std::size_t end, std::vector<Piece>& out) {
    const std::string& w = t_[i].text;
    if (w == "left" || w == "right" || w == "big" || w == "Big" || w == "bigl" || w == "bigr") {
      std::size_t j = skip_spaces(t_, i + 1);
      if (j < end && t_[j].is_char(".")) return j + 1;
      return i + 1;
    }
    if (w == "displaystyle" || w == "textstyle" || w == "quad" || w == "qquad" || w == "limits" ||
        w == "nolimits") {
      return i + 1;
    }
    if (auto g = greek_letter(w)) {
      out.push_back({*g, false});
      return i + 1;
    }
    if (w == "cdot") {
      out.push_back({"·", false});
      return i + 1;
    }
    if (w == "times") {
      out.push_back({"×", false});
      return i + 1;
    }
    if (w == "sum") {
      out.push_back({"∑", false});
      return i + 1;
    }
    if (is_wrapper(w)) {
      std::size_t j = skip_spaces(t_, i + 1);
      if (j >= end) return j;
      if (t_[j].kind == LatexToken::Kind::BeginGroup) {
        const std::size_t close = std::min(group_end(t_, j), end);
        const bool closed = close > j + 1 && t_[close - 1].kind == LatexToken::Kind::EndGroup;
        std::vector<Piece> inner = run(j + 1, closed ? close - 1 : close);
        out.insert(out.end(), inner.begin(), inner.end());
        return close;
      }
      return step(j, end, out);
    }
    out.push_back({"\\" + w, true});
    return i + 1;
  }

  const std::vector<LatexToken>& t_;
};

void scan_identifiers(const std::vector<LatexToken>& t, std::size_t begin, std::size_t end,
                      std::vector<std::string>& out) {
  const auto add = [&](const std::string& sym) {
    if (sym.empty() || sym == "π") return;
    if (std::find(out.begin(), out.end(), sym) == out.end()) out.push_back(sym);
  };
  std::size_t i = begin;
  while (i < end) {
    const LatexToken& tok = t[i];
    if (tok.kind == LatexToken::Kind::Char) {
      if (tok.text == "_") {
        i = std::min(argument_end(t, i + 1), end);
        continue;
      }
      std::size_t pos = 0;
      const char32_t cp = utf8::decode(tok.text, pos);
      if (utf8::is_letter(cp)) add(tok.text);
      ++i;
      continue;
    }
    if (tok.kind == LatexToken::Kind::ControlWord) {
      const std::string& w = tok.text;
      if (auto g = greek_letter(w)) {
        add(*g);
        ++i;
        continue;
      }
      if (w == "text" || w == "mbox" || w == "textrm" || w == "operatorname") {
        i = std::min(argument_end(t, i + 1), end);
        continue;
      }
      if (w == "mathrm") {
        const std::size_t j = skip_spaces(t, i + 1);
        const std::size_t stop = std::min(argument_end(t, i + 1), end);
        std::string raw;
        for (std::size_t k = j; k < stop; ++k) {
          if (t[k].kind == LatexToken::Kind::Char) raw += t[k].text;
        }
        if (!raw.empty() && !is_function_name(raw)) {
          std::size_t pos = 0;
          const char32_t cp = utf8::decode(raw, pos);
          if (utf8::is_letter(cp)) add(raw);
        }
        i = stop;
        continue;
      }
    }
    ++i;
  }
}

}  // namespace

std::vector<LatexToken> tokenize_latex(std::string_view s) {
  std::vector<LatexToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const std::size_t start = i;
    if (c == '\\') {
      std::size_t j = i + 1;
      while (j < s.size() && is_ascii_letter(s[j])) ++j;
      if (j > i + 1) {
        out.push_back({LatexToken::Kind::ControlWord, std::string(s.substr(i + 1, j - i - 1)), start});
        i = j;
      } else if (j < s.size()) {
        std::size_t pos = j;
        utf8::decode(s, pos);
        out.push_back({LatexToken::Kind::ControlSymbol, std::string(s.substr(j, pos - j)), start});
        i = pos;
      } else {
        out.push_back({LatexToken::Kind::ControlSymbol, "", start});
        i = j;
      }
    } else if (c == '{') {
      out.push_back({LatexToken::Kind::BeginGroup, "{", start});
      ++i;
    } else if (c == '}') {
      out.push_back({LatexToken::Kind::EndGroup, "}", start});
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
      out.push_back({LatexToken::Kind::Space, " ", start});
    } else {
      std::size_t pos = i;
      utf8::decode(s, pos);
      out.push_back({LatexToken::Kind::Char, std::string(s.substr(i, pos - i)), start});
      i = pos;
    }
  }
  return out;
}

std::optional<std::string> greek_letter(std::string_view command) {
  const auto& table = greek_table();
  if (auto it = table.find(command); it != table.end()) return it->second;
  return std::nullopt;
}

std::optional<std::string> greek_command(std::string_view letter) {
  for (const auto& [cmd, sym] : greek_table()) {
    if (sym == letter) return cmd;
  }
  return std::nullopt;
}

bool is_function_name(std::string_view name) {
  static constexpr std::array<std::string_view, 8> names = {"sin", "cos", "tan", "log",
                                                            "ln",  "exp", "max", "min"};
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string normalize_formula(std::string_view latex) {
  const std::vector<LatexToken> tokens = tokenize_latex(latex);
  Normalizer n(tokens);
  return join(n.run(0, tokens.size()));
}

std::vector<std::string> latex_identifiers(std::string_view latex) {
  const std::vector<LatexToken> tokens = tokenize_latex(latex);
  std::vector<std::string> out;
  scan_identifiers(tokens, 0, tokens.size(), out);
  return out;
}

}  // namespace mathqa
