#pragma once

#include <string_view>

namespace curator {

// Normalized edit-distance similarity in [0,1]: 1 - lev(a,b)/max(|a|,|b|).
// Two empty strings are identical (1.0).
double similarity(std::string_view a, std::string_view b);

// Same value as similarity() whenever that value is >= floor; may return
// any value < floor otherwise (banded computation for candidate pruning).
double similarity_at_least(std::string_view a, std::string_view b,
                           double floor);

}  // namespace curator
