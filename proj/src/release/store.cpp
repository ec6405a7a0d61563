#include "curator/release/store.hpp"

#include <algorithm>
#include <fstream>

#include "curator/core/error.hpp"
#include "curator/core/hash.hpp"
#include "curator/core/jsonl.hpp"
#include "curator/core/license.hpp"
#include "curator/release/datasheet.hpp"

namespace curator {

namespace {

constexpr const char* kEpoch = "1970-01-01T00:00:00Z";

void append_line(const std::filesystem::path& path, const std::string& line) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw io_error("cannot open for appending: " + path.string());
  out << line;
  if (!out) throw io_error("append failed: " + path.string());
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

}  // namespace

std::string to_string(MembershipState s) {
  switch (s) {
    case MembershipState::Present: return "present";
    case MembershipState::Removed: return "removed";
    case MembershipState::Absent: return "absent";
  }
  throw invalid_argument("unknown membership state");
}

void to_json(nlohmann::json& j, const MembershipAnswer& v) {
  j = {{"state", to_string(v.state)}};
  if (!v.doc_id.empty()) j["doc_id"] = v.doc_id;
  if (v.state == MembershipState::Removed) j["reason"] = v.reason;
  if (v.state == MembershipState::Present) j["provenance"] = v.provenance;
}

void to_json(nlohmann::json& j, const FilterRuleDoc& v) {
  j = {{"id", v.id}, {"threshold", v.threshold}, {"rationale", v.rationale}};
}

void from_json(const nlohmann::json& j, FilterRuleDoc& v) {
  j.at("id").get_to(v.id);
  j.at("threshold").get_to(v.threshold);
  j.at("rationale").get_to(v.rationale);
}

void to_json(nlohmann::json& j, const DatasheetInputs& v) {
  j = {{"dataset_name", v.dataset_name},
       {"intended_uses", v.intended_uses},
       {"removal_instructions", v.removal_instructions},
       {"filters", v.filters},
       {"stage_counts", v.stage_counts}};
}

void from_json(const nlohmann::json& j, DatasheetInputs& v) {
  j.at("dataset_name").get_to(v.dataset_name);
  j.at("intended_uses").get_to(v.intended_uses);
  j.at("removal_instructions").get_to(v.removal_instructions);
  j.at("filters").get_to(v.filters);
  j.at("stage_counts").get_to(v.stage_counts);
}

Store::Store(std::filesystem::path root) {
  layout_.root = std::move(root);
  namespace fs = std::filesystem;
  fs::create_directories(layout_.manifests_dir());
  fs::create_directories(layout_.tombstones_file().parent_path());
  fs::create_directories(layout_.documents_dir());
  fs::create_directories(layout_.raw_dir());
  fs::create_directories(layout_.url_index().parent_path());
  fs::create_directories(layout_.signals_file().parent_path());
  fs::create_directories(layout_.datasheets_dir());
  load();
}

void Store::load() {
  namespace fs = std::filesystem;

  if (fs::exists(layout_.seq_file())) {
    std::string text = read_file(layout_.seq_file());
    try {
      seq_ = std::stoull(text);
    } catch (const std::exception&) {
      throw schema_error("corrupt sequence file: " + layout_.seq_file().string());
    }
  }

  if (fs::exists(layout_.manifests_index())) {
    for (const auto& j : read_jsonl_raw(layout_.manifests_index())) {
      std::string release_id = j.at("release_id").get<std::string>();
      auto manifest_path = layout_.manifest(release_id);
      auto parsed = nlohmann::json::parse(read_file(manifest_path));
      ReleaseManifest m = parsed.get<ReleaseManifest>();
      release_by_id_[m.release_id] = releases_.size();
      release_by_label_[m.label] = releases_.size();
      releases_.push_back(std::move(m));
    }
  }

  if (fs::exists(layout_.tombstones_file())) {
    for (auto& t : read_jsonl<Tombstone>(layout_.tombstones_file())) {
      tombstone_by_doc_[t.doc_id] = tombstones_.size();
      tombstones_.push_back(std::move(t));
    }
  }

  if (fs::exists(layout_.url_index())) {
    for (const auto& j : read_jsonl_raw(layout_.url_index())) {
      url_to_docs_[j.at("url").get<std::string>()].push_back(
          j.at("doc_id").get<std::string>());
    }
  }

  if (fs::exists(layout_.signals_file())) {
    for (const auto& j : read_jsonl_raw(layout_.signals_file())) {
      signal_ids_.insert(j.at("id").get<std::string>());
    }
  }

  if (fs::exists(layout_.documents_dir())) {
    for (const auto& entry : fs::directory_iterator(layout_.documents_dir())) {
      if (entry.path().extension() != ".jsonl") continue;
      for (const auto& j : read_jsonl_raw(entry.path())) {
        stored_docs_.insert(j.at("doc_id").get<std::string>());
      }
    }
  }
}

std::uint64_t Store::next_seq() {
  ++seq_;
  write_file(layout_.seq_file(), std::to_string(seq_));
  return seq_;
}

void Store::index_url(const std::string& url, const std::string& doc_id) {
  if (url.empty()) return;
  auto& docs = url_to_docs_[url];
  if (std::find(docs.begin(), docs.end(), doc_id) != docs.end()) return;
  docs.push_back(doc_id);
  append_line(layout_.url_index(),
              jsonl_line(nlohmann::json{{"url", url}, {"doc_id", doc_id}}));
}

void Store::put_document(const DocumentRecord& doc, std::string_view markup) {
  if (tombstone_by_doc_.count(doc.doc_id)) {
    throw invalid_argument("document is tombstoned: " + doc.doc_id);
  }
  if (doc.doc_id != compute_doc_id(doc.text)) {
    throw invalid_argument("doc_id does not hash its text: " + doc.doc_id);
  }
  if (stored_docs_.count(doc.doc_id)) return;

  append_line(layout_.document_shard(doc.doc_id), jsonl_line(nlohmann::json(doc)));
  auto raw_path = layout_.raw_file(doc.doc_id);
  std::filesystem::create_directories(raw_path.parent_path());
  write_file(raw_path, markup);
  stored_docs_.insert(doc.doc_id);
  index_url(doc.source_url, doc.doc_id);
  append_signals(doc.signals);
}

std::optional<DocumentRecord> Store::get_document(const std::string& doc_id) const {
  if (!stored_docs_.count(doc_id)) return std::nullopt;
  auto shard = layout_.document_shard(doc_id);
  if (!std::filesystem::exists(shard)) return std::nullopt;
  for (const auto& j : read_jsonl_raw(shard)) {
    if (j.at("doc_id").get<std::string>() == doc_id) {
      return j.get<DocumentRecord>();
    }
  }
  return std::nullopt;
}

std::optional<std::string> Store::get_markup(const std::string& doc_id) const {
  auto path = layout_.raw_file(doc_id);
  if (!std::filesystem::exists(path)) return std::nullopt;
  return read_file(path);
}

bool Store::has_document(const std::string& doc_id) const {
  return stored_docs_.count(doc_id) > 0;
}

std::vector<std::string> Store::document_ids() const {
  return {stored_docs_.begin(), stored_docs_.end()};
}

std::size_t Store::append_signals(const std::vector<PreferenceSignal>& signals) {
  std::size_t appended = 0;
  for (const auto& s : signals) {
    std::string id = s.id();
    if (signal_ids_.count(id)) continue;
    append_line(layout_.signals_file(), jsonl_line(nlohmann::json(s)));
    signal_ids_.insert(std::move(id));
    ++appended;
  }
  return appended;
}

ReleaseManifest Store::assemble_release(const AssembleRequest& request) {
  if (request.label.empty()) throw invalid_argument("release label is required");

  std::string parent_id;
  if (!request.parent.empty()) {
    auto parent = find_release(request.parent);
    if (!parent) throw not_found("unknown parent release: " + request.parent);
    parent_id = parent->release_id;
  }

  std::vector<std::string> ids = request.doc_ids;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) {
    throw invalid_argument("a release needs at least one document");
  }

  std::vector<std::string> tombstoned, unknown, unevidenced;
  std::vector<DocumentRecord> docs;
  docs.reserve(ids.size());
  for (const auto& id : ids) {
    if (tombstone_by_doc_.count(id)) {
      tombstoned.push_back(id);
      continue;
    }
    auto doc = get_document(id);
    if (!doc) {
      unknown.push_back(id);
      continue;
    }
    if (!doc->has_licensing_evidence()) unevidenced.push_back(id);
    docs.push_back(std::move(*doc));
  }
  if (!tombstoned.empty()) {
    throw invalid_argument("tombstoned documents in release: " +
                           join_ids(tombstoned));
  }
  if (!unknown.empty()) {
    throw not_found("unknown documents: " + join_ids(unknown));
  }
  if (!unevidenced.empty()) {
    throw invalid_argument("documents without licensing evidence: " +
                           join_ids(unevidenced));
  }

  std::string release_id =
      compute_release_id(parent_id, request.pipeline_config_hash, ids);
  if (auto it = release_by_id_.find(release_id); it != release_by_id_.end()) {
    const ReleaseManifest& existing = releases_[it->second];
    if (existing.label == request.label) return existing;  // idempotent reseal
    throw invalid_argument("contents already sealed as release '" +
                           existing.label + "'");
  }
  if (release_by_label_.count(request.label)) {
    throw invalid_argument("release label already used: " + request.label);
  }

  ReleaseManifest manifest;
  manifest.release_id = release_id;
  manifest.label = request.label;
  manifest.doc_ids = std::move(ids);
  manifest.parent = parent_id;
  manifest.tombstones_applied = request.tombstones_applied;
  std::sort(manifest.tombstones_applied.begin(), manifest.tombstones_applied.end());
  manifest.pipeline_config_hash = request.pipeline_config_hash;
  manifest.datasheet_ref = "datasheets/" + release_id + ".md";

  bool openly = aggregate_constituent_licensing(
      normalize_license(request.dataset_license), docs);
  manifest.assessment = assess_tier(openly, request.attested_open_access,
                                    request.attested_replicable);

  if (!request.as_of.empty()) {
    manifest.created_at = request.as_of;
  } else {
    std::string latest;
    for (const auto& d : docs) latest = std::max(latest, d.provenance.crawl_date);
    manifest.created_at = latest.empty() ? kEpoch : latest;
  }

  manifest.seq = next_seq();

  write_file(layout_.datasheets_dir() / (release_id + ".json"),
             jsonl_line(nlohmann::json(request.datasheet)));
  write_file(layout_.datasheets_dir() / (release_id + ".md"),
             render_datasheet(manifest, docs, request.datasheet));

  std::string manifest_bytes = jsonl_line(nlohmann::json(manifest));
  write_file(layout_.manifest(release_id), manifest_bytes);
  append_line(layout_.manifests_index(),
              jsonl_line(nlohmann::json{{"seq", manifest.seq},
                                        {"release_id", release_id},
                                        {"label", manifest.label},
                                        {"sha256", sha256_hex(manifest_bytes)}}));

  release_by_id_[release_id] = releases_.size();
  release_by_label_[manifest.label] = releases_.size();
  releases_.push_back(manifest);
  return manifest;
}

Store::DerivePlan Store::plan_from_release(const ReleaseManifest& parent) const {
  DerivePlan plan;
  for (const auto& id : parent.doc_ids) {
    if (tombstone_by_doc_.count(id)) {
      plan.tombstones_applied.push_back(id);
    } else {
      plan.doc_ids.push_back(id);
    }
  }
  return plan;
}

std::optional<ReleaseManifest> Store::find_release(
    const std::string& id_or_label) const {
  if (auto it = release_by_id_.find(id_or_label); it != release_by_id_.end()) {
    return releases_[it->second];
  }
  if (auto it = release_by_label_.find(id_or_label); it != release_by_label_.end()) {
    return releases_[it->second];
  }
  return std::nullopt;
}

Tombstone Store::remove_document(const std::string& doc_id,
                                 TombstoneReason reason,
                                 const std::string& request_ref,
                                 const std::string& as_of) {
  if (auto it = tombstone_by_doc_.find(doc_id); it != tombstone_by_doc_.end()) {
    return tombstones_[it->second];  // idempotent
  }

  bool known = stored_docs_.count(doc_id) > 0;
  for (auto it = releases_.begin(); !known && it != releases_.end(); ++it) {
    known = std::binary_search(it->doc_ids.begin(), it->doc_ids.end(), doc_id);
  }
  if (!known) throw not_found("unknown document: " + doc_id);
  if (!request_ref.empty() && !signal_ids_.count(request_ref)) {
    throw invalid_argument("request_ref is not in the signal log: " + request_ref);
  }

  Tombstone t;
  t.doc_id = doc_id;
  t.reason = reason;
  t.request_ref = request_ref;
  t.created_at = as_of.empty() ? kEpoch : as_of;
  t.seq = next_seq();
  append_line(layout_.tombstones_file(), jsonl_line(nlohmann::json(t)));
  tombstone_by_doc_[doc_id] = tombstones_.size();
  tombstones_.push_back(t);

  // Honor the removal: drop the text from its shard and delete the raw
  // markup.  The URL index entry stays so URL lookups can answer "removed".
  if (stored_docs_.count(doc_id)) {
    auto shard = layout_.document_shard(doc_id);
    std::string kept;
    for (const auto& j : read_jsonl_raw(shard)) {
      if (j.at("doc_id").get<std::string>() != doc_id) kept += jsonl_line(j);
    }
    write_file(shard, kept);
    stored_docs_.erase(doc_id);
  }
  std::error_code ec;
  std::filesystem::remove(layout_.raw_file(doc_id), ec);
  return t;
}

std::optional<Tombstone> Store::find_tombstone(const std::string& doc_id) const {
  if (auto it = tombstone_by_doc_.find(doc_id); it != tombstone_by_doc_.end()) {
    return tombstones_[it->second];
  }
  return std::nullopt;
}

MembershipAnswer Store::resolve_membership(const std::vector<std::string>& doc_ids,
                                           const ReleaseManifest& release) const {
  MembershipAnswer answer;
  for (const auto& id : doc_ids) {
    if (auto t = find_tombstone(id)) {
      answer.state = MembershipState::Removed;
      answer.doc_id = id;
      answer.reason = to_string(t->reason);  // category only, never the requester
      return answer;
    }
  }
  for (const auto& id : doc_ids) {
    if (!std::binary_search(release.doc_ids.begin(), release.doc_ids.end(), id)) {
      continue;
    }
    answer.state = MembershipState::Present;
    answer.doc_id = id;
    if (auto doc = get_document(id)) {
      std::set<std::string> licenses;
      for (const auto& det : doc->licenses) licenses.insert(det.tag.spdx_id);
      answer.provenance = {
          {"doc_id", doc->doc_id},
          {"source_url", doc->source_url},
          {"crawl_date", doc->provenance.crawl_date},
          {"acquisition_method", to_string(doc->provenance.acquisition_method)},
          {"pipeline_config_hash", doc->provenance.pipeline_config_hash},
          {"licenses", licenses},
      };
      if (doc->pd_classification) {
        answer.provenance["pd"] = *doc->pd_classification;
      }
    } else {
      answer.provenance = {{"doc_id", id}};
    }
    return answer;
  }
  answer.state = MembershipState::Absent;
  return answer;
}

MembershipAnswer Store::lookup_doc_id(const std::string& doc_id,
                                      const ReleaseManifest& release) const {
  return resolve_membership({doc_id}, release);
}

MembershipAnswer Store::lookup_url(const std::string& url,
                                   const ReleaseManifest& release) const {
  auto it = url_to_docs_.find(url);
  if (it == url_to_docs_.end()) return {};
  std::vector<std::string> ids = it->second;
  std::sort(ids.begin(), ids.end());
  return resolve_membership(ids, release);
}

MembershipAnswer Store::lookup_text(const std::string& text,
                                    const ReleaseManifest& release) const {
  return resolve_membership({compute_doc_id(canonical_text(text))}, release);
}

DatasheetInputs Store::datasheet_inputs(const std::string& release_id) const {
  auto path = layout_.datasheets_dir() / (release_id + ".json");
  if (!std::filesystem::exists(path)) {
    throw invalid_state("datasheet context missing for release: " + release_id);
  }
  try {
    return nlohmann::json::parse(read_file(path)).get<DatasheetInputs>();
  } catch (const nlohmann::json::exception& e) {
    throw schema_error("corrupt datasheet context for " + release_id + ": " +
                       e.what());
  }
}

}  // namespace curator
