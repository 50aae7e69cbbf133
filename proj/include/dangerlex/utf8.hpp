#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace dangerlex::utf8 {

struct Decoded {
  char32_t code_point;
  std::size_t length;  // bytes consumed, >= 1
};

// Invalid sequences decode as U+FFFD consuming one byte.
Decoded decode(std::string_view s, std::size_t pos);
void append(std::string& out, char32_t cp);

// Letters of the Latin, Greek and Cyrillic blocks. Enough for German text.
bool is_alpha(char32_t cp);
char32_t to_lower(char32_t cp);
bool is_space(char32_t cp);

std::string lower(std::string_view s);
bool contains_space(std::string_view s);
std::string_view trim(std::string_view s);

}  // namespace dangerlex::utf8
