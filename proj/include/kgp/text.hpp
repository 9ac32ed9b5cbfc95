#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kgp::text {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_whitespace(std::string_view s);

/// Number of UTF-8 code points.
std::size_t utf8_length(std::string_view s);

/// ASCII letters and digits; non-ASCII code points that are not punctuation
/// count as letters too (one per code point).
std::size_t count_alnum(std::string_view s);

bool has_letter(std::string_view s);
bool is_capitalized(std::string_view s);

/// True when the token carries no letter at all (digits, symbols, "3.5", "%").
inline bool is_digit_or_symbol(std::string_view s) { return !has_letter(s); }

}  // namespace kgp::text
