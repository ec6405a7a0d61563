#include "curator/release/types.hpp"

#include "curator/core/error.hpp"
#include "curator/core/hash.hpp"

namespace curator {

std::string to_string(TombstoneReason r) {
  switch (r) {
    case TombstoneReason::Optout: return "optout";
    case TombstoneReason::LicenseDispute: return "license-dispute";
    case TombstoneReason::SensitiveContent: return "sensitive-content";
    case TombstoneReason::Other: return "other";
  }
  throw invalid_argument("unknown tombstone reason");
}

TombstoneReason tombstone_reason_from_string(std::string_view s) {
  if (s == "optout") return TombstoneReason::Optout;
  if (s == "license-dispute") return TombstoneReason::LicenseDispute;
  if (s == "sensitive-content") return TombstoneReason::SensitiveContent;
  if (s == "other") return TombstoneReason::Other;
  throw schema_error("unknown tombstone reason: " + std::string(s));
}

std::string compute_release_id(const std::string& parent,
                               const std::string& pipeline_config_hash,
                               const std::vector<std::string>& sorted_doc_ids) {
  // Length-prefixed fields make the encoding injective regardless of field
  // contents.
  std::string bytes = "release/1\n";
  auto field = [&bytes](const std::string& s) {
    bytes += std::to_string(s.size());
    bytes += ':';
    bytes += s;
    bytes += '\n';
  };
  field(parent);
  field(pipeline_config_hash);
  for (const auto& id : sorted_doc_ids) field(id);
  return sha256_hex(bytes);
}

void to_json(nlohmann::json& j, const Tombstone& v) {
  j = {{"doc_id", v.doc_id},
       {"reason", to_string(v.reason)},
       {"request_ref", v.request_ref},
       {"created_at", v.created_at},
       {"seq", v.seq}};
}

void from_json(const nlohmann::json& j, Tombstone& v) {
  j.at("doc_id").get_to(v.doc_id);
  v.reason = tombstone_reason_from_string(j.at("reason").get<std::string>());
  j.at("request_ref").get_to(v.request_ref);
  j.at("created_at").get_to(v.created_at);
  j.at("seq").get_to(v.seq);
}

void to_json(nlohmann::json& j, const ReleaseManifest& v) {
  j = {{"release_id", v.release_id},
       {"label", v.label},
       {"created_at", v.created_at},
       {"doc_ids", v.doc_ids},
       {"parent", v.parent},
       {"tombstones_applied", v.tombstones_applied},
       {"assessment", v.assessment},
       {"datasheet_ref", v.datasheet_ref},
       {"pipeline_config_hash", v.pipeline_config_hash},
       {"seq", v.seq}};
}

void from_json(const nlohmann::json& j, ReleaseManifest& v) {
  j.at("release_id").get_to(v.release_id);
  j.at("label").get_to(v.label);
  j.at("created_at").get_to(v.created_at);
  j.at("doc_ids").get_to(v.doc_ids);
  j.at("parent").get_to(v.parent);
  j.at("tombstones_applied").get_to(v.tombstones_applied);
  j.at("assessment").get_to(v.assessment);
  j.at("datasheet_ref").get_to(v.datasheet_ref);
  j.at("pipeline_config_hash").get_to(v.pipeline_config_hash);
  j.at("seq").get_to(v.seq);
}

}  // namespace curator
