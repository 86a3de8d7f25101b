#pragma once

#include <string>
#include <vector>
#include <string_view>

namespace jamoparse::utf8 {

// Decodes UTF-8 into scalar values. Each byte that does not begin a valid
// sequence decodes to U+FFFD, so malformed corpus bytes never abort a run.
std::u32string decode(std::string_view text);

std::string encode(char32_t c);
std::string encode(std::u32string_view text);

// Splits a UTF-8 string into one string per scalar value.
std::vector<std::string> characters(std::string_view text);

}  // namespace jamoparse::utf8
