#pragma once

#include <cstdlib>
#include <random>
#include <string>

#include "clt/word.hpp"

namespace testutil {

// Randomized sampling is reproducible; CLT_SEED overrides the default.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("CLT_SEED")) return std::strtoull(s, nullptr, 10);
  return 20260816ull;
}

inline std::mt19937_64 rng() { return std::mt19937_64(seed()); }

// Uniform-ish reduced word of exactly `len` letters.
inline clt::Word random_word(std::mt19937_64& g, int rank, int len) {
  std::vector<clt::Letter> v;
  std::uniform_int_distribution<int> gen(0, rank - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  while (static_cast<int>(v.size()) < len) {
    clt::Letter l = clt::Letter(gen(g) + 1) * (sgn(g) ? 1 : -1);
    if (!v.empty() && v.back() == -l) continue;
    v.push_back(l);
  }
  return clt::Word(v);
}

inline clt::Word random_word_up_to(std::mt19937_64& g, int rank, int maxlen) {
  std::uniform_int_distribution<int> len(0, maxlen);
  return random_word(g, rank, len(g));
}

inline clt::Word W(const std::string& text, int rank = 6) { return clt::parse_word(text, rank); }

}  // namespace testutil
