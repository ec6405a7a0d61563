#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "curator/core/types.hpp"
#include "curator/gate/optout.hpp"
#include "curator/gate/robots.hpp"

namespace curator {

struct GateConfig {
  std::string agent = "*";  // product token evaluated against robots groups

  // When set, stamped into every signal's observed_at.  When empty, robots
  // signals use the document's crawl_date and opt-out signals the fixed
  // epoch, so identical inputs always gate identically.
  std::string as_of;
};

inline constexpr const char* kEpochTimestamp = "1970-01-01T00:00:00Z";

// Exhaustive, disjoint split of the input documents.  Every excluded
// document carries (and is listed alongside) a decision=exclude signal;
// allow-rule matches are recorded on included documents as decision=include
// signals.  The signal list is deduplicated by signal id.
struct GatePartition {
  std::vector<DocumentRecord> included;
  std::vector<DocumentRecord> excluded;
  std::vector<PreferenceSignal> signals;
};

// Evaluates each document's URL against the snapshot policy for its origin.
// Documents with no snapshot for their origin (or an unparseable URL) pass
// through with no signal.
GatePartition apply_robots(const std::vector<DocumentRecord>& documents,
                           const std::map<std::string, RobotsPolicy>& policies,
                           const GateConfig& config = {});

// Excludes documents whose URL matches an exact or prefix entry or whose
// doc_id matches a hash entry.  Applying the same list twice yields the
// same partition and no new signals.
GatePartition apply_optout(const std::vector<DocumentRecord>& documents,
                           const OptoutList& list,
                           const GateConfig& config = {});

struct GateReport {
  std::size_t docs_in = 0;
  std::size_t included = 0;
  std::size_t excluded_by_robots = 0;
  std::size_t excluded_by_optout = 0;
  std::size_t exclude_signals = 0;  // equals excluded_by_robots + excluded_by_optout
  std::size_t allow_signals = 0;
  std::size_t malformed_entries = 0;  // across all opt-out lists
};

void to_json(nlohmann::json& j, const GateReport& v);

struct GateOutcome {
  std::vector<DocumentRecord> included;
  std::vector<DocumentRecord> excluded;
  std::vector<PreferenceSignal> signals;
  GateReport report;
};

// Full gate pass: robots first, then each opt-out list in order over the
// survivors, so every excluded document is excluded exactly once and the
// exclude-signal count equals the excluded-document count.
GateOutcome gate_documents(const std::vector<DocumentRecord>& documents,
                           const std::map<std::string, RobotsPolicy>& policies,
                           const std::vector<OptoutList>& lists,
                           const GateConfig& config = {});

}  // namespace curator
