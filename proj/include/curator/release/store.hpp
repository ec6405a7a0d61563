#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "curator/core/types.hpp"
#include "curator/release/types.hpp"

namespace curator {

// On-disk layout under the store root.  All hashes are lowercase hex.
struct StoreLayout {
  std::filesystem::path root;

  std::filesystem::path manifests_dir() const { return root / "manifests"; }
  std::filesystem::path manifest(const std::string& release_id) const {
    return manifests_dir() / (release_id + ".json");
  }
  // Append-only seal: {seq, release_id, label, sha256 of manifest bytes}.
  std::filesystem::path manifests_index() const {
    return manifests_dir() / "manifests.idx";
  }
  std::filesystem::path tombstones_file() const {
    return root / "tombstones" / "tombstones.jsonl";
  }
  std::filesystem::path documents_dir() const { return root / "documents"; }
  std::filesystem::path document_shard(const std::string& doc_id) const {
    return documents_dir() / (doc_id.substr(0, 2) + ".jsonl");
  }
  std::filesystem::path raw_dir() const { return root / "raw"; }
  std::filesystem::path raw_file(const std::string& doc_id) const {
    return raw_dir() / doc_id.substr(0, 2) / doc_id;
  }
  std::filesystem::path url_index() const {
    return root / "indexes" / "urls.jsonl";
  }
  std::filesystem::path signals_file() const {
    return root / "signals" / "signals.jsonl";
  }
  std::filesystem::path datasheets_dir() const { return root / "datasheets"; }
  std::filesystem::path seq_file() const { return root / "seq"; }
};

enum class MembershipState { Present, Removed, Absent };
std::string to_string(MembershipState s);

struct MembershipAnswer {
  MembershipState state = MembershipState::Absent;
  std::string doc_id;  // resolved id, when the query resolved to one
  std::string reason;  // tombstone reason category; removed answers only
  nlohmann::json provenance;  // provenance summary; present answers only
};

void to_json(nlohmann::json& j, const MembershipAnswer& v);

// Documentation block rendered into the datasheet; stored alongside the
// manifest so the datasheet can be re-emitted byte-identically.
struct FilterRuleDoc {
  std::string id;
  double threshold = 0;
  std::string rationale;
  bool operator==(const FilterRuleDoc&) const = default;
};

struct DatasheetInputs {
  std::string dataset_name = "curated-corpus";
  std::string intended_uses;
  std::string removal_instructions;
  std::vector<FilterRuleDoc> filters;
  std::map<std::string, std::uint64_t> stage_counts;  // pipeline stage → count
  bool operator==(const DatasheetInputs&) const = default;
};

void to_json(nlohmann::json& j, const FilterRuleDoc& v);
void from_json(const nlohmann::json& j, FilterRuleDoc& v);
void to_json(nlohmann::json& j, const DatasheetInputs& v);
void from_json(const nlohmann::json& j, DatasheetInputs& v);

struct AssembleRequest {
  std::vector<std::string> doc_ids;  // any order; deduplicated and sorted
  std::string parent;  // existing release_id or label; empty for a root
  std::string label;
  std::string pipeline_config_hash;

  // Operator attestations feeding assess_tier; openly_licensed is computed
  // from the constituents, never attested.
  bool attested_open_access = false;
  bool attested_replicable = false;
  std::string dataset_license = "CC0-1.0";  // license on the arrangement

  // created_at override; empty derives max(crawl_date) over members, or the
  // epoch when no member carries one.
  std::string as_of;

  // Filled by plan_from_release when deriving; recorded in the manifest.
  std::vector<std::string> tombstones_applied;

  DatasheetInputs datasheet;
};

// Single-writer, content-addressed release store.  Mutations are serialized
// by the owning process; reads work off sealed state.
class Store {
 public:
  // Opens an existing store or initializes the layout in an empty/new
  // directory.
  explicit Store(std::filesystem::path root);

  const StoreLayout& layout() const { return layout_; }

  // --- documents -------------------------------------------------------
  // Persists the document and the markup its evidence offsets refer to,
  // indexes its URL, and merges its signals into the signal log.
  // Re-ingesting an already-stored doc_id is a no-op; a tombstoned doc_id
  // is an invalid-argument error.
  void put_document(const DocumentRecord& doc, std::string_view markup);
  std::optional<DocumentRecord> get_document(const std::string& doc_id) const;
  std::optional<std::string> get_markup(const std::string& doc_id) const;
  bool has_document(const std::string& doc_id) const;
  std::vector<std::string> document_ids() const;  // sorted

  // --- signal log ------------------------------------------------------
  std::size_t append_signals(const std::vector<PreferenceSignal>& signals);
  const std::set<std::string>& signal_ids() const { return signal_ids_; }

  // --- releases --------------------------------------------------------
  // Seals a manifest. Errors: empty doc set, unknown parent, duplicate
  // label, unknown doc_ids, tombstoned doc_ids (hard error naming them),
  // docs without licensing evidence (named). Re-assembling content already
  // sealed under the same label returns the existing manifest unchanged.
  ReleaseManifest assemble_release(const AssembleRequest& request);

  // Membership for the next release derived from `parent`: the parent's
  // doc_ids minus tombstoned ones, which are returned for the manifest's
  // tombstones_applied field.
  struct DerivePlan {
    std::vector<std::string> doc_ids;
    std::vector<std::string> tombstones_applied;
  };
  DerivePlan plan_from_release(const ReleaseManifest& parent) const;

  std::optional<ReleaseManifest> find_release(const std::string& id_or_label) const;
  const std::vector<ReleaseManifest>& releases() const { return releases_; }

  // --- removal ---------------------------------------------------------
  // Records a tombstone and deletes the document's text and raw markup.
  // Unknown doc_id → not-found; duplicate removal returns the existing
  // tombstone; a non-empty request_ref must already be in the signal log.
  Tombstone remove_document(const std::string& doc_id, TombstoneReason reason,
                            const std::string& request_ref,
                            const std::string& as_of = {});
  const std::vector<Tombstone>& tombstones() const { return tombstones_; }
  std::optional<Tombstone> find_tombstone(const std::string& doc_id) const;

  // --- membership ------------------------------------------------------
  // Removed wins over present wins over absent; present answers carry a
  // provenance summary, removed answers the reason category only.
  MembershipAnswer lookup_doc_id(const std::string& doc_id,
                                 const ReleaseManifest& release) const;
  MembershipAnswer lookup_url(const std::string& url,
                              const ReleaseManifest& release) const;
  MembershipAnswer lookup_text(const std::string& text,
                               const ReleaseManifest& release) const;

  // --- datasheet context -----------------------------------------------
  DatasheetInputs datasheet_inputs(const std::string& release_id) const;

 private:
  void load();
  std::uint64_t next_seq();
  void index_url(const std::string& url, const std::string& doc_id);
  MembershipAnswer resolve_membership(const std::vector<std::string>& doc_ids,
                                      const ReleaseManifest& release) const;

  StoreLayout layout_;
  std::vector<ReleaseManifest> releases_;  // seal order
  std::map<std::string, std::size_t> release_by_id_;
  std::map<std::string, std::size_t> release_by_label_;
  std::vector<Tombstone> tombstones_;
  std::map<std::string, std::size_t> tombstone_by_doc_;
  std::map<std::string, std::vector<std::string>> url_to_docs_;
  std::set<std::string> stored_docs_;
  std::set<std::string> signal_ids_;
  std::uint64_t seq_ = 0;
};

}  // namespace curator
