#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "curator/core/license.hpp"

namespace curator {

using HeaderList = std::vector<std::pair<std::string, std::string>>;

enum class DetectionMethod {
  RelLicenseLink,
  CcUrlRegex,
  MetaTag,
  DeclaredBySource,
  Manual,
};
std::string to_string(DetectionMethod m);
DetectionMethod detection_method_from_string(std::string_view s);

enum class ScopeConfidence { PageLevel, AssetLevelUncertain };
std::string to_string(ScopeConfidence c);
ScopeConfidence scope_confidence_from_string(std::string_view s);

struct Evidence {
  std::string snippet;  // verbatim bytes from the scanned input
  std::size_t offset = 0;  // byte offset of snippet within the scanned input
  bool operator==(const Evidence&) const = default;
};

struct LicenseDetection {
  LicenseTag tag;
  DetectionMethod method = DetectionMethod::Manual;
  Evidence evidence;
  ScopeConfidence scope_confidence = ScopeConfidence::PageLevel;
  bool operator==(const LicenseDetection&) const = default;
};

enum class SignalKind { RobotsDisallow, RobotsAllow, OptoutList, ManualRemovalRequest };
std::string to_string(SignalKind k);
SignalKind signal_kind_from_string(std::string_view s);

enum class SignalDecision { Include, Exclude };
std::string to_string(SignalDecision d);
SignalDecision signal_decision_from_string(std::string_view s);

struct SignalSubject {
  std::string url;     // either field may be empty, not both
  std::string doc_id;
  bool operator==(const SignalSubject&) const = default;
  bool operator<(const SignalSubject& o) const {
    return std::tie(url, doc_id) < std::tie(o.url, o.doc_id);
  }
};

struct PreferenceSignal {
  SignalSubject subject;
  SignalKind kind = SignalKind::OptoutList;
  std::string source;       // robots URL, list file id, ticket id
  std::string observed_at;  // ISO timestamp
  SignalDecision decision = SignalDecision::Exclude;
  std::string purpose;  // reserved for future use-purpose vocabularies

  // Stable id; signals deduplicate on (subject, kind, source).
  std::string id() const;
  bool operator==(const PreferenceSignal&) const = default;
};

enum class AcquisitionMethod { WarcCrawl, BulkDownload, ManualIngest };
std::string to_string(AcquisitionMethod m);
AcquisitionMethod acquisition_method_from_string(std::string_view s);

struct SyntheticOrigin {
  std::string generator_model_name;
  std::string prompt_reference;
  std::string seed_data_reference;
  bool operator==(const SyntheticOrigin&) const = default;
};

struct ProvenanceRecord {
  std::string source_url;
  std::string crawl_date;  // UTC timestamp, verbatim from capture
  HeaderList http_headers;   // verbatim, order and case preserved
  HeaderList html_metadata;  // meta tags and link relations, verbatim
  AcquisitionMethod acquisition_method = AcquisitionMethod::ManualIngest;
  std::string pipeline_config_hash;
  std::optional<SyntheticOrigin> synthetic;
  bool operator==(const ProvenanceRecord&) const = default;
};

enum class PdOutcome { Excluded, RequiresInvestigation, BelievedPublicDomain };
std::string to_string(PdOutcome o);
PdOutcome pd_outcome_from_string(std::string_view s);

enum class PdBasis {
  PreCutoffYear,
  RenewalFound,
  NoRenewalFound,
  AmbiguousMatch,
  OutOfRuleRange,
};
std::string to_string(PdBasis b);
PdBasis pd_basis_from_string(std::string_view s);

// Compact public-domain classification attached to a document; the full
// evidence lives in the pd pipeline's outputs.
struct PdStatus {
  PdOutcome outcome = PdOutcome::RequiresInvestigation;
  PdBasis basis = PdBasis::AmbiguousMatch;
  bool operator==(const PdStatus&) const = default;
};

struct DocumentRecord {
  std::string doc_id;  // sha256 hex of canonical text bytes
  std::string source_url;
  std::string text;  // canonical form (newlines normalized)
  ProvenanceRecord provenance;
  std::vector<LicenseDetection> licenses;
  std::vector<PreferenceSignal> signals;
  std::set<std::string> flags;
  std::optional<PdStatus> pd_classification;

  // Only construction path: canonicalizes text, computes doc_id, and
  // requires provenance up front.
  static DocumentRecord make(std::string text, ProvenanceRecord provenance);

  // True when the document carries usable licensing evidence: at least one
  // detection, or a believed-public-domain classification.
  bool has_licensing_evidence() const;

  // Open-predicate over this document: all detected tags open (and at
  // least one present), or believed public domain.
  bool openly_licensed() const;

  bool operator==(const DocumentRecord&) const = default;

 private:
  DocumentRecord() = default;
  friend struct nlohmann::adl_serializer<DocumentRecord>;
};

// JSON bindings. Field names follow the JSONL schema exactly.
void to_json(nlohmann::json& j, const LicenseTag& v);
void from_json(const nlohmann::json& j, LicenseTag& v);
void to_json(nlohmann::json& j, const Evidence& v);
void from_json(const nlohmann::json& j, Evidence& v);
void to_json(nlohmann::json& j, const LicenseDetection& v);
void from_json(const nlohmann::json& j, LicenseDetection& v);
void to_json(nlohmann::json& j, const SignalSubject& v);
void from_json(const nlohmann::json& j, SignalSubject& v);
void to_json(nlohmann::json& j, const PreferenceSignal& v);
void from_json(const nlohmann::json& j, PreferenceSignal& v);
void to_json(nlohmann::json& j, const SyntheticOrigin& v);
void from_json(const nlohmann::json& j, SyntheticOrigin& v);
void to_json(nlohmann::json& j, const ProvenanceRecord& v);
void from_json(const nlohmann::json& j, ProvenanceRecord& v);
void to_json(nlohmann::json& j, const PdStatus& v);
void from_json(const nlohmann::json& j, PdStatus& v);

}  // namespace curator

// DocumentRecord is only constructible through make() or deserialization, so
// its JSON binding goes through the serializer rather than free functions.
namespace nlohmann {
template <>
struct adl_serializer<curator::DocumentRecord> {
  static curator::DocumentRecord from_json(const json& j);
  static void to_json(json& j, const curator::DocumentRecord& v);
};
}  // namespace nlohmann
