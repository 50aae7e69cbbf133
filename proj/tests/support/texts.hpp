#pragma once

#include <cstddef>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>

namespace dangerlex::testtext {

// Distinct lowercase pseudo-words, none of them a German stopword.
inline std::string word(std::string_view prefix, std::size_t i) {
  std::string w(prefix);
  do {
    w += static_cast<char>('a' + i % 26);
    i /= 26;
  } while (i > 0);
  return w + "ung";
}

// `tokens` words cycling through a vocabulary of `vocab` words.
inline std::string cycle(std::string_view prefix, std::size_t vocab, std::size_t tokens, std::size_t offset = 0) {
  std::string out;
  for (std::size_t i = 0; i < tokens; ++i) {
    if (!out.empty()) out += (i % 9 == 0) ? ". " : " ";
    out += word(prefix, (i + offset) % vocab);
  }
  return out + ".";
}

// 40 pseudosentences of 20 tokens per block.
inline constexpr std::size_t kBlockTokens = 800;

// Two blocks with disjoint vocabularies. `separator` is "\n\n" for a
// paragraph break at the junction. With w = 20 the junction is the gap after
// pseudosentence 39.
inline std::string two_block(std::string_view separator = "\n\n") {
  return cycle("kor", 20, kBlockTokens) + std::string(separator) + cycle("vel", 20, kBlockTokens);
}
inline constexpr std::size_t kTwoBlockJunctionGap = kBlockTokens / 20 - 1;

// One vocabulary repeated in a fixed order: every pseudosentence has the
// same term distribution.
inline std::string uniform() { return cycle("mar", 20, 2 * kBlockTokens); }

// Random text over a small vocabulary with paragraph breaks.
inline std::string random_text(std::mt19937_64& rng, std::size_t tokens) {
  std::uniform_int_distribution<std::size_t> pick(0, 39);
  std::uniform_int_distribution<int> brk(0, 29);
  std::string out;
  for (std::size_t i = 0; i < tokens; ++i) {
    if (i > 0) out += brk(rng) == 0 ? ".\n\n" : " ";
    out += word("tex", pick(rng));
  }
  return out;
}

inline std::filesystem::path fresh_dir(std::string_view name) {
  auto dir = std::filesystem::temp_directory_path() / ("dangerlex-test-" + std::string(name));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace dangerlex::testtext
