#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

// Deterministic generators for property tests. Every test seeds its own
// engine so failures reproduce without re-running the whole binary.
namespace gen {

using Rng = std::mt19937_64;

inline int pick_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::size_t pick_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double pick_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool pick_bool(Rng& rng) { return pick_int(rng, 0, 1) == 1; }

// Printable ASCII, no control bytes.
inline std::string ascii_string(Rng& rng, std::size_t min_len, std::size_t max_len) {
  std::size_t n = pick_size(rng, min_len, max_len);
  std::string s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.push_back(static_cast<char>(pick_int(rng, 0x20, 0x7e)));
  }
  return s;
}

// Arbitrary bytes including newlines and NULs.
inline std::string byte_string(Rng& rng, std::size_t min_len, std::size_t max_len) {
  std::size_t n = pick_size(rng, min_len, max_len);
  std::string s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.push_back(static_cast<char>(pick_int(rng, 0, 255)));
  }
  return s;
}

// Lowercase words separated by single spaces; handy for title-like text.
inline std::string word_string(Rng& rng, std::size_t min_words, std::size_t max_words) {
  std::size_t n = pick_size(rng, min_words, max_words);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s.push_back(' ');
    std::size_t len = pick_size(rng, 1, 9);
    for (std::size_t k = 0; k < len; ++k) {
      s.push_back(static_cast<char>('a' + pick_int(rng, 0, 25)));
    }
  }
  return s;
}

template <typename T>
const T& pick_one(Rng& rng, const std::vector<T>& pool) {
  return pool[pick_size(rng, 0, pool.size() - 1)];
}

}  // namespace gen
