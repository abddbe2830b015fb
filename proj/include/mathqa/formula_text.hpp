// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mathqa {

/// Lexical token of a LaTeX formula string.
struct LatexToken {
  enum class Kind {
    ControlWord,    // \frac, \omega  (text holds the name without backslash)
    ControlSymbol,  // \, \{ \|       (text holds the single symbol)
    Char,           // one UTF-8 code point other than braces and whitespace
    BeginGroup,
    EndGroup,
    Space,
  };
  Kind kind;
  std::string text;
  std::size_t offset = 0;

  bool is_char(std::string_view c) const { return kind == Kind::Char && text == c; }
  bool is_word(std::string_view w) const { return kind == Kind::ControlWord && text == w; }
};

std::vector<LatexToken> tokenize_latex(std::string_view latex);

/// Greek letter command (without backslash) to its Unicode letter.
std::optional<std::string> greek_letter(std::string_view command);

/// Unicode Greek letter back to its command name, for building LaTeX-side filters.
std::optional<std::string> greek_command(std::string_view letter);

/// sin, cos, tan, log, ln, exp, max, min: operators, never identifiers.
bool is_function_name(std::string_view name);

/// Canonical form used for duplicate counting and exact-match scoring.
///
/// Whitespace, `$` delimiters, spacing commands and \left/\right are dropped;
/// visual wrappers (\mathbf, \boldsymbol, \vec, \bm, \mathit) are unwrapped;
/// Greek commands become Unicode letters; \cdot, `*` and U+22C5 become U+00B7;
/// \times becomes U+00D7, \sum U+2211, U+2212 becomes `-`; single-token
/// script groups lose their braces. A single space survives only where a
/// control word would otherwise run into a following ASCII letter.
std::string normalize_formula(std::string_view latex);

/// Identifier base symbols of a LaTeX formula in first-occurrence order.
///
/// Subscripts are indices and contribute nothing; superscripts are scanned.
/// Function names, \text{} content and the constant pi are not identifiers.
/// \mathrm{xyz} with a multi-letter argument counts as the single symbol "xyz".
std::vector<std::string> latex_identifiers(std::string_view latex);

}  // namespace mathqa
