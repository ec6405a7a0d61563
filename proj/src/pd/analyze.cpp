#include "curator/pd/analyze.hpp"

#include <cmath>

#include "curator/core/error.hpp"
#include "curator/pd/normalize.hpp"

namespace curator {

MisclassificationEstimate estimate_misclassification(
    const FieldAccuracyProfile& profile) {
  for (double a :
       {profile.a_title, profile.a_reg, profile.a_author, profile.a_date}) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw invalid_argument("accuracy outside [0,1]");
    }
  }
  MisclassificationEstimate e;
  e.p_exact = (1.0 - profile.a_title) * (1.0 - profile.a_reg);
  auto n = static_cast<double>(profile.n_works);
  e.expected_wrong_exact = e.p_exact * n;
  // Truncate the percentage at two decimals (the epsilon shields exact
  // hundredths from binary rounding noise).
  e.p_rounded_pct = std::floor(e.p_exact * 10000.0 + 1e-9) / 100.0;
  e.expected_wrong_paper_style = (e.p_rounded_pct / 100.0) * n;
  return e;
}

void to_json(nlohmann::json& j, const MisclassificationEstimate& v) {
  j = {{"p_exact", v.p_exact},
       {"p_rounded_pct", v.p_rounded_pct},
       {"expected_wrong_exact", v.expected_wrong_exact},
       {"expected_wrong_paper_style", v.expected_wrong_paper_style}};
}

namespace {

bool same_date(const std::optional<PubDate>& a, const std::optional<PubDate>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a.has_value() || *a == *b;
}

}  // namespace

FieldAccuracyProfile evaluate_extractor(
    const std::vector<CopyrightRecord>& extracted,
    const std::vector<CopyrightRecord>& ground_truth) {
  if (extracted.size() != ground_truth.size()) {
    throw invalid_argument("extracted/ground-truth lists differ in length");
  }
  FieldAccuracyProfile p;
  p.n_works = extracted.size();
  if (extracted.empty()) return p;  // vacuously perfect

  std::uint64_t t = 0, r = 0, a = 0, d = 0;
  for (std::size_t i = 0; i < extracted.size(); ++i) {
    const auto& x = extracted[i];
    const auto& g = ground_truth[i];
    if (normalize_title(x.title) == normalize_title(g.title)) ++t;
    if (normalize_reg_id(x.reg_id) == normalize_reg_id(g.reg_id)) ++r;
    if (normalize_author(x.author) == normalize_author(g.author)) ++a;
    if (same_date(x.pub_date, g.pub_date)) ++d;
  }
  auto n = static_cast<double>(p.n_works);
  p.a_title = static_cast<double>(t) / n;
  p.a_reg = static_cast<double>(r) / n;
  p.a_author = static_cast<double>(a) / n;
  p.a_date = static_cast<double>(d) / n;
  return p;
}

}  // namespace curator
