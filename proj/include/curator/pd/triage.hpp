#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "curator/pd/classify.hpp"
#include "curator/pd/types.hpp"

namespace curator {

// Stable content-addressed key for one registration, used to join triage
// rows back to works across files.
std::string work_key(const CopyrightRecord& registration);

// One triage row per RequiresInvestigation work: the registration and
// its candidate renewals side by side, ready for human (or model-
// assisted) review.
nlohmann::json triage_row(const ClassifiedWork& work,
                          const std::vector<RenewalRecord>& renewals);

// All RequiresInvestigation works as JSONL.
std::string export_triage(const std::vector<ClassifiedWork>& works,
                          const std::vector<RenewalRecord>& renewals);

// A reviewed triage verdict: {work_key, renewal_id, verdict} with verdict
// "match" or "no-match".
struct ManualDecision {
  std::string work_key;
  std::string renewal_id;
  bool is_match = false;
};
void to_json(nlohmann::json& j, const ManualDecision& v);
void from_json(const nlohmann::json& j, ManualDecision& v);

struct DecisionReport {
  std::uint64_t applied = 0;
  std::uint64_t unknown_work = 0;     // no work with that key
  std::uint64_t unknown_renewal = 0;  // key known, candidate not in evidence
  bool operator==(const DecisionReport&) const = default;
};
void to_json(nlohmann::json& j, const DecisionReport& v);

// Applies reviewed verdicts: "match" confirms the candidate, "no-match"
// removes it; every touched work is reclassified under the same rules.
DecisionReport apply_manual_decisions(std::vector<ClassifiedWork>& works,
                                      const std::vector<RenewalRecord>& renewals,
                                      const std::vector<ManualDecision>& decisions,
                                      const RulesConfig& rules);

}  // namespace curator
