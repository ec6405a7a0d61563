#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "curator/core/types.hpp"

namespace curator {

// One allow/disallow rule: the pattern as written plus its compiled form.
// '*' matches any run of bytes, a trailing '$' anchors the pattern to the
// end of the path, and an un-anchored pattern matches any path prefix.
struct RobotsRule {
  bool allow = false;
  std::string pattern;  // verbatim value as written

  // Compiled form: the pattern split on '*', with the trailing '$' peeled
  // off into the anchor flag.
  std::vector<std::string> segments;
  bool anchored = false;

  bool operator==(const RobotsRule&) const = default;
};

struct RobotsGroup {
  std::vector<std::string> user_agents;  // verbatim product tokens
  std::vector<RobotsRule> rules;         // file order
  bool operator==(const RobotsGroup&) const = default;
};

struct RobotsPolicy {
  std::string origin;
  std::vector<RobotsGroup> groups;
  std::string fetched_at;

  // Well-formed directives with keys other than user-agent/allow/disallow
  // (sitemap, crawl-delay, ...) are kept verbatim but never evaluated.
  HeaderList other_directives;

  // Lines that parse as nothing at all: no colon, or a rule before any
  // user-agent line.  The parse itself never fails.
  std::size_t skipped_lines = 0;

  bool operator==(const RobotsPolicy&) const = default;
};

// Total parser: comments ('#' to end of line) stripped, keys matched
// case-insensitively, consecutive user-agent lines share one group, and an
// empty rule value is inert (matches nothing) and not stored.
RobotsPolicy parse_robots(std::string_view text, std::string_view origin,
                          std::string_view fetched_at = {});

struct RobotsDecision {
  SignalDecision decision = SignalDecision::Include;
  bool matched = false;  // false: no rule applied, default include
  RobotsRule rule;       // the winning rule, for audit; meaningful when matched
};

// Pure longest-match evaluation.  Groups naming the agent token exactly
// (case-insensitive) are consulted; when none do, '*' groups are.  Among
// matching rules the longest verbatim pattern wins, allow wins length ties,
// and the earliest rule in file order wins among equals.
RobotsDecision evaluate(const RobotsPolicy& policy, std::string_view agent,
                        std::string_view path);

// Robots snapshots captured at crawl time, one JSONL record per origin:
// {"origin": ..., "fetched_at": ..., "body": <verbatim robots.txt text>}.
std::map<std::string, RobotsPolicy> load_robots_snapshots(const std::string& path);

void to_json(nlohmann::json& j, const RobotsRule& v);
void to_json(nlohmann::json& j, const RobotsDecision& v);

}  // namespace curator
