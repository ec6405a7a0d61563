#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace curator {

// One enabled heuristic with its threshold. Known ids:
//   min-word-count              (measurement: word count)
//   max-bullet-line-fraction    (measurement: bullet lines / lines)
//   max-duplicate-line-fraction (measurement: duplicated lines / lines)
//   min-alpha-fraction          (measurement: alphabetic / non-space chars)
struct QualityRule {
  std::string id;
  double threshold = 0;

  bool operator==(const QualityRule&) const = default;
};

struct QualityConfig {
  std::vector<QualityRule> rules;

  // The stand-in heuristic set; swap via --rules.
  static QualityConfig defaults();
};

struct QualityVerdict {
  bool passed = true;
  std::vector<std::string> failed_rules;          // config order
  std::map<std::string, double> measurements;     // every configured rule
};

void to_json(nlohmann::json& j, const QualityRule& v);
void from_json(const nlohmann::json& j, QualityRule& v);
void to_json(nlohmann::json& j, const QualityConfig& v);
void from_json(const nlohmann::json& j, QualityConfig& v);
void to_json(nlohmann::json& j, const QualityVerdict& v);

// Evaluates every configured rule. Rules with an empty denominator pass
// vacuously (empty text fails only min-word-count). Unknown rule ids throw
// Error(InvalidArgument).
QualityVerdict apply_quality_rules(std::string_view text,
                                   const QualityConfig& config);

}  // namespace curator
