#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "curator/pd/types.hpp"

namespace curator {

// Decision rules over one registration's match set:
//   confirmed renewal  -> Excluded (renewal-found), unconditionally: a
//                         renewed work is never handed out as PD;
//   missing pub date   -> RequiresInvestigation;
//   year <= pre_cutoff -> BelievedPublicDomain (pre-cutoff-year) unless
//                         ambiguous matches demand investigation first;
//   year outside the renewal-rule range -> Excluded (out-of-rule-range);
//   ambiguous matches  -> RequiresInvestigation (ambiguous-match);
//   otherwise          -> BelievedPublicDomain (no-renewal-found).
PdClassification classify(const CopyrightRecord& registration,
                          const std::vector<MatchResult>& matches,
                          const RulesConfig& rules);

struct ClassifiedWork {
  CopyrightRecord registration;
  PdClassification classification;
  bool operator==(const ClassifiedWork&) const = default;
};

// Match + classify an entire corpus. Output is sorted by normalized
// reg_id, then title (then the remaining fields), so it does not depend
// on input row order.
std::vector<ClassifiedWork> classify_corpus(
    const std::vector<CopyrightRecord>& registrations,
    const std::vector<RenewalRecord>& renewals, const MatchConfig& match_config,
    const RulesConfig& rules);

// One JSONL row per work; evidence references renewals by content
// (renewal_id, date), not row index.
nlohmann::json classified_work_json(const ClassifiedWork& work,
                                    const std::vector<RenewalRecord>& renewals);

// Outcome and basis tallies for reports and datasheets.
struct ClassificationSummary {
  std::uint64_t total = 0;
  std::map<std::string, std::uint64_t> by_outcome;
  std::map<std::string, std::uint64_t> by_basis;
  bool operator==(const ClassificationSummary&) const = default;
};
ClassificationSummary summarize(const std::vector<ClassifiedWork>& works);
void to_json(nlohmann::json& j, const ClassificationSummary& v);

}  // namespace curator
