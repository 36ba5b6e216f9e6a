#ifndef SCHEDALOD_TEXT_HPP
#define SCHEDALOD_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace schedalod::text {

// Decodes the code point starting at byte offset i and advances i past it.
// Malformed sequences yield U+FFFD and advance one byte.
char32_t utf8_next(std::string_view s, std::size_t& i);

void utf8_append(std::string& out, char32_t cp);

std::vector<char32_t> utf8_decode(std::string_view s);

std::string trim(std::string_view s);
std::string lower_ascii(std::string_view s);

// Whitespace-collapsing, ASCII-lowercasing normalization used for
// vocabulary and role lookups.
std::string normalize_key(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

}  // namespace schedalod::text

#endif
