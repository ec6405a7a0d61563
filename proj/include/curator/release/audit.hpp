#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "curator/release/store.hpp"

namespace curator {

struct AuditViolation {
  std::string check;    // which verification failed
  std::string subject;  // release_id, doc_id, or file involved
  std::string detail;
  bool operator==(const AuditViolation&) const = default;
};

void to_json(nlohmann::json& j, const AuditViolation& v);

struct AuditReport {
  std::vector<AuditViolation> violations;
  std::size_t releases_checked = 0;
  std::size_t documents_checked = 0;
  std::size_t tombstones_checked = 0;
  bool ok() const { return violations.empty(); }
};

void to_json(nlohmann::json& j, const AuditReport& v);

// Full store verification, reading every artifact back from disk (the
// in-memory Store state is not trusted).  Checks, by `check` id:
//   manifest-seal       manifest bytes hash to the sealed index entry;
//                       every sealed release has a manifest file and every
//                       manifest file a seal
//   release-id          release_id recomputes from parent + config hash +
//                       doc_ids; doc_ids sorted and unique
//   tombstone-propagation  no release sealed after a tombstone contains it
//   content-deleted     tombstoned documents hold no text or raw markup
//   doc-missing         release members (not tombstoned) exist in shards
//   doc-hash            stored text re-hashes to its doc_id
//   evidence            license evidence re-verifies against raw markup
//   licensing-evidence  release members carry licensing evidence
//   signal-log          tombstone request refs and document signals appear
//                       in the signal log
//   url-index           stored documents are reachable through the URL index
AuditReport audit_store(const Store& store);

}  // namespace curator
