#include "curator/pd/similarity.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace curator {

namespace {

// Classic two-row Levenshtein.
std::size_t edit_distance(std::string_view a, std::string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(a.size() + 1), cur(a.size() + 1);
  for (std::size_t i = 0; i <= a.size(); ++i) prev[i] = i;
  for (std::size_t j = 1; j <= b.size(); ++j) {
    cur[0] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      std::size_t sub = prev[i - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[i] = std::min({prev[i] + 1, cur[i - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[a.size()];
}

// Levenshtein with an early exit once the distance provably exceeds
// `limit`; returns limit+1 in that case.
std::size_t edit_distance_capped(std::string_view a, std::string_view b,
                                 std::size_t limit) {
  if (a.size() > b.size()) std::swap(a, b);
  if (b.size() - a.size() > limit) return limit + 1;
  std::vector<std::size_t> prev(a.size() + 1), cur(a.size() + 1);
  for (std::size_t i = 0; i <= a.size(); ++i) prev[i] = i;
  for (std::size_t j = 1; j <= b.size(); ++j) {
    cur[0] = j;
    std::size_t row_min = cur[0];
    for (std::size_t i = 1; i <= a.size(); ++i) {
      std::size_t sub = prev[i - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[i] = std::min({prev[i] + 1, cur[i - 1] + 1, sub});
      row_min = std::min(row_min, cur[i]);
    }
    if (row_min > limit) return limit + 1;
    std::swap(prev, cur);
  }
  return prev[a.size()];
}

}  // namespace

double similarity(std::string_view a, std::string_view b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(a, b)) /
                   static_cast<double>(longest);
}

double similarity_at_least(std::string_view a, std::string_view b,
                           double floor) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  if (floor <= 0.0) return similarity(a, b);
  // similarity >= floor  <=>  distance <= (1-floor)*longest; the epsilon
  // keeps boundary distances under the cap despite float rounding.
  auto limit = static_cast<std::size_t>(
      (1.0 - floor) * static_cast<double>(longest) + 1e-9);
  std::size_t d = edit_distance_capped(a, b, limit);
  if (d > limit) return -1.0;  // provably below floor
  return 1.0 - static_cast<double>(d) / static_cast<double>(longest);
}

}  // namespace curator
