#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "curator/core/types.hpp"

namespace curator {

struct PubDate {
  int year = 0;
  std::optional<int> month;
  std::optional<int> day;
  bool operator==(const PubDate&) const = default;
};

enum class RecordSource { Structured, Extracted };
std::string to_string(RecordSource s);
RecordSource record_source_from_string(std::string_view s);

// A copyright registration entry. Raw fields are kept verbatim; the
// norm_* forms drive matching. reg_id is NOT assumed unique.
struct CopyrightRecord {
  std::string reg_id;
  std::string title;
  std::string author;
  std::optional<PubDate> pub_date;
  RecordSource source = RecordSource::Structured;
  std::map<std::string, double> field_confidence;

  std::string norm_reg_id;
  std::string norm_title;
  std::string norm_author;

  bool operator==(const CopyrightRecord&) const = default;
};

// A renewal entry; renewal_date is required, the original registration
// id is frequently absent or garbled.
struct RenewalRecord {
  std::string renewal_id;
  std::string original_reg_id;  // empty when unknown
  std::string title;
  std::string author;
  std::optional<PubDate> original_pub_date;
  std::string renewal_date;  // "YYYY" or "YYYY-MM-DD"

  std::string norm_reg_id;  // normalized original_reg_id
  std::string norm_title;
  std::string norm_author;

  bool operator==(const RenewalRecord&) const = default;
};

enum class MatchStage { RegIdExact, TitleAuthorExact, Fuzzy };
std::string to_string(MatchStage s);
MatchStage match_stage_from_string(std::string_view s);

// One registration-renewal link. `confirmed` distinguishes matches that
// exclude a work outright from ambiguous ones that demand investigation;
// confirmation depends on the whole candidate set, so it is decided by
// the matcher, not derivable from one result alone.
struct MatchResult {
  std::size_t reg_index = 0;
  std::size_t ren_index = 0;
  MatchStage stage = MatchStage::Fuzzy;
  double score = 0.0;
  bool date_window_ok = false;
  bool confirmed = false;
  bool operator==(const MatchResult&) const = default;
};

// Full classification with evidence; PdStatus is the compact form that
// travels on documents.
struct PdClassification {
  PdOutcome outcome = PdOutcome::RequiresInvestigation;
  PdBasis basis = PdBasis::AmbiguousMatch;
  std::vector<MatchResult> evidence;

  PdStatus status() const { return PdStatus{outcome, basis}; }
  bool operator==(const PdClassification&) const = default;
};

// Per-field extractor accuracies over a corpus of n_works.
struct FieldAccuracyProfile {
  double a_title = 1.0;
  double a_reg = 1.0;
  double a_author = 1.0;
  double a_date = 1.0;
  std::uint64_t n_works = 0;
  bool operator==(const FieldAccuracyProfile&) const = default;
};

struct MatchConfig {
  double theta = 0.85;       // fuzzy confirmation floor
  double delta = 0.05;       // ambiguity band above theta
  int window_lo = 19;        // renewal year minus publication year
  int window_hi = 29;
  unsigned threads = 1;
};

struct RulesConfig {
  int pre_cutoff = 1928;   // inclusive: published this year or earlier
  int renewal_lo = 1929;   // renewal requirement applies in this range
  int renewal_hi = 1964;
};

void to_json(nlohmann::json& j, const PubDate& v);
void from_json(const nlohmann::json& j, PubDate& v);
void to_json(nlohmann::json& j, const CopyrightRecord& v);
void from_json(const nlohmann::json& j, CopyrightRecord& v);
void to_json(nlohmann::json& j, const RenewalRecord& v);
void from_json(const nlohmann::json& j, RenewalRecord& v);
void to_json(nlohmann::json& j, const MatchResult& v);
void from_json(const nlohmann::json& j, MatchResult& v);
void to_json(nlohmann::json& j, const PdClassification& v);
void from_json(const nlohmann::json& j, PdClassification& v);
void to_json(nlohmann::json& j, const FieldAccuracyProfile& v);
void from_json(const nlohmann::json& j, FieldAccuracyProfile& v);
void to_json(nlohmann::json& j, const MatchConfig& v);
void from_json(const nlohmann::json& j, MatchConfig& v);
void to_json(nlohmann::json& j, const RulesConfig& v);
void from_json(const nlohmann::json& j, RulesConfig& v);

}  // namespace curator
