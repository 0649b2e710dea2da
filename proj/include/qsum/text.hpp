#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qsum::text {

/// ASCII lowercase; bytes outside A-Z are copied unchanged.
std::string to_lower(std::string_view s);

std::string trim(std::string_view s);

/// Splits a UTF-8 string into maximal word runs. A word character is an ASCII
/// letter or digit, or any byte of a multi-byte UTF-8 sequence. An apostrophe
/// (ASCII ' or U+2019) is kept only between two word characters.
std::vector<std::string> tokenize(std::string_view raw);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::vector<std::string> split(std::string_view s, char delim);

} // namespace qsum::text
