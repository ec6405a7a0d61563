#pragma once

#include <vector>

#include "json.hpp"

#include "curator/pd/types.hpp"

namespace curator {

// Probability that a work's title AND registration number were both
// extracted wrong — the only error mode that can wrongly clear a work —
// plus the headcount it implies. Author/date accuracies are carried for
// reporting but excluded from p by design: errors there cannot move a
// work into the public-domain bucket.
struct MisclassificationEstimate {
  double p_exact = 0.0;         // (1-a_title)*(1-a_reg)
  double p_rounded_pct = 0.0;   // percentage truncated to two decimals
  double expected_wrong_exact = 0.0;       // p_exact * n_works
  double expected_wrong_paper_style = 0.0; // (p_rounded_pct/100) * n_works
  bool operator==(const MisclassificationEstimate&) const = default;
};

// Throws invalid-argument when any accuracy leaves [0,1].
MisclassificationEstimate estimate_misclassification(
    const FieldAccuracyProfile& profile);

void to_json(nlohmann::json& j, const MisclassificationEstimate& v);

// Per-field accuracy of an extractor against structured ground truth.
// Lists align by position; a field counts as correct when the normalized
// forms agree. Throws invalid-argument on length mismatch.
FieldAccuracyProfile evaluate_extractor(
    const std::vector<CopyrightRecord>& extracted,
    const std::vector<CopyrightRecord>& ground_truth);

}  // namespace curator
