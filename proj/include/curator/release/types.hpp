#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "curator/core/tier.hpp"

namespace curator {

enum class TombstoneReason { Optout, LicenseDispute, SensitiveContent, Other };
std::string to_string(TombstoneReason r);
TombstoneReason tombstone_reason_from_string(std::string_view s);

// Append-only removal record.  The document's text is deleted from storage
// when the tombstone is written; the tombstone itself is never deleted, so
// every removal stays auditable.
struct Tombstone {
  std::string doc_id;
  TombstoneReason reason = TombstoneReason::Other;
  std::string request_ref;  // PreferenceSignal id backing the request
  std::string created_at;
  std::uint64_t seq = 0;  // store sequence; orders removals against seals
  bool operator==(const Tombstone&) const = default;
};

struct ReleaseManifest {
  std::string release_id;  // hash over parent + config hash + sorted doc_ids
  std::string label;       // version label, unique within a store
  std::string created_at;
  std::vector<std::string> doc_ids;  // sorted, unique
  std::string parent;                // previous release_id; empty for a root
  std::vector<std::string> tombstones_applied;  // excluded while deriving
  OpennessAssessment assessment;
  std::string datasheet_ref;  // store-relative path of the datasheet
  std::string pipeline_config_hash;
  std::uint64_t seq = 0;
  bool operator==(const ReleaseManifest&) const = default;
};

// The sealed identity: sha256 over a length-unambiguous encoding of the
// parent release_id, the pipeline config hash, and the sorted doc_id list.
std::string compute_release_id(const std::string& parent,
                               const std::string& pipeline_config_hash,
                               const std::vector<std::string>& sorted_doc_ids);

void to_json(nlohmann::json& j, const Tombstone& v);
void from_json(const nlohmann::json& j, Tombstone& v);
void to_json(nlohmann::json& j, const ReleaseManifest& v);
void from_json(const nlohmann::json& j, ReleaseManifest& v);

}  // namespace curator
