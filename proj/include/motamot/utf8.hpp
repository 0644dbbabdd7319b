#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace motamot::utf8 {

// Lenient decoder: malformed bytes decode to U+FFFD, one per byte.
std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);
std::string encode(char32_t c);

bool is_combining_mark(char32_t c);

// Splits into base character + trailing combining marks.
std::vector<std::string> clusters(std::string_view s);

// Code points as individual UTF-8 strings.
std::vector<std::string> code_points(std::string_view s);

// Lowercase base letter with Latin-1/Latin Extended-A diacritics removed.
char32_t fold_accent(char32_t c);

std::string trim(std::string_view s);

// Collapses internal whitespace runs to one space and trims.
std::string squeeze_spaces(std::string_view s);

std::vector<std::string> split(std::string_view s, std::string_view delim);

}  // namespace motamot::utf8
