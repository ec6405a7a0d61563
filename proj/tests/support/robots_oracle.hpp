#pragma once

// Reference robots.txt rule matcher used to cross-check the production
// evaluator.  Matching is done by brute-force recursion over the verbatim
// pattern (no compilation step); rule selection re-states the precedence
// contract textually: highest byte-length pattern wins, allow wins length
// ties, first rule in file order wins among equals.

#include <string>
#include <string_view>
#include <vector>

#include "curator/core/types.hpp"
#include "curator/gate/robots.hpp"

namespace robotsoracle {

inline bool match_rec(std::string_view pat, std::string_view path, bool anchored) {
  if (pat.empty()) return anchored ? path.empty() : true;
  if (pat.front() == '*') {
    for (std::size_t skip = 0; skip <= path.size(); ++skip) {
      if (match_rec(pat.substr(1), path.substr(skip), anchored)) return true;
    }
    return false;
  }
  if (path.empty() || path.front() != pat.front()) return false;
  return match_rec(pat.substr(1), path.substr(1), anchored);
}

// Does the verbatim rule pattern match the path?  '*' matches any run of
// bytes, a trailing '$' anchors the pattern to the end of the path, and an
// un-anchored pattern matches any prefix.
inline bool pattern_matches(std::string_view pattern, std::string_view path) {
  if (pattern.empty()) return false;  // empty rule is inert
  bool anchored = pattern.back() == '$';
  if (anchored) pattern.remove_suffix(1);
  return match_rec(pattern, path, anchored);
}

struct OracleVerdict {
  curator::SignalDecision decision = curator::SignalDecision::Include;
  bool matched = false;
  bool allow = false;
  std::string pattern;
};

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline OracleVerdict evaluate(const curator::RobotsPolicy& policy,
                              std::string_view agent, std::string_view path) {
  std::string token = lower(agent);
  // Exact-token groups take precedence; '*' groups are the fallback tier.
  std::vector<const curator::RobotsGroup*> chosen;
  for (const auto& g : policy.groups) {
    for (const auto& ua : g.user_agents) {
      if (lower(ua) == token) {
        chosen.push_back(&g);
        break;
      }
    }
  }
  if (chosen.empty()) {
    for (const auto& g : policy.groups) {
      for (const auto& ua : g.user_agents) {
        if (ua == "*") {
          chosen.push_back(&g);
          break;
        }
      }
    }
  }

  OracleVerdict best;
  std::size_t best_len = 0;
  for (const auto* g : chosen) {
    for (const auto& r : g->rules) {
      if (!pattern_matches(r.pattern, path)) continue;
      std::size_t len = r.pattern.size();
      bool better = !best.matched || len > best_len ||
                    (len == best_len && r.allow && !best.allow);
      if (better) {
        best.matched = true;
        best.allow = r.allow;
        best.pattern = r.pattern;
        best_len = len;
      }
    }
  }
  best.decision = (best.matched && !best.allow) ? curator::SignalDecision::Exclude
                                                : curator::SignalDecision::Include;
  return best;
}

}  // namespace robotsoracle
