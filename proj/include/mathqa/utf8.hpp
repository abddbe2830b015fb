// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace mathqa::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

/// Decodes the code point starting at `pos` and advances `pos` past it.
/// Malformed sequences yield kReplacement and advance by one byte.
char32_t decode(std::string_view s, std::size_t& pos);

void append(std::string& out, char32_t cp);
std::string encode(char32_t cp);

/// True when `s` is well-formed UTF-8.
bool valid(std::string_view s);

std::size_t length(std::string_view s);

/// Letters of the Latin, Greek and Cyrillic blocks.
bool is_letter(char32_t cp);

char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view s);

/// Trims ASCII whitespace at both ends.
std::string_view trim(std::string_view s);

}  // namespace mathqa::utf8
