#include "curator/release/audit.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "curator/core/hash.hpp"
#include "curator/core/jsonl.hpp"

namespace curator {

namespace fs = std::filesystem;

namespace {

struct SealEntry {
  std::uint64_t seq = 0;
  std::string release_id;
  std::string label;
  std::string sha256;
};

void violation(AuditReport& rep, const std::string& check,
               const std::string& subject, const std::string& detail) {
  rep.violations.push_back({check, subject, detail});
}

}  // namespace

void to_json(nlohmann::json& j, const AuditViolation& v) {
  j = {{"check", v.check}, {"subject", v.subject}, {"detail", v.detail}};
}

void to_json(nlohmann::json& j, const AuditReport& v) {
  j = {{"ok", v.ok()},
       {"violations", v.violations},
       {"releases_checked", v.releases_checked},
       {"documents_checked", v.documents_checked},
       {"tombstones_checked", v.tombstones_checked}};
}

AuditReport audit_store(const Store& store) {
  const StoreLayout& layout = store.layout();
  AuditReport rep;

  // --- seal index and manifests -----------------------------------------
  std::vector<SealEntry> seals;
  std::set<std::string> sealed_ids;
  if (fs::exists(layout.manifests_index())) {
    try {
      for (const auto& j : read_jsonl_raw(layout.manifests_index())) {
        SealEntry e;
        e.seq = j.at("seq").get<std::uint64_t>();
        e.release_id = j.at("release_id").get<std::string>();
        e.label = j.at("label").get<std::string>();
        e.sha256 = j.at("sha256").get<std::string>();
        sealed_ids.insert(e.release_id);
        seals.push_back(std::move(e));
      }
    } catch (const std::exception& e) {
      violation(rep, "manifest-seal", layout.manifests_index().string(),
                std::string("unreadable seal index: ") + e.what());
    }
  }

  std::vector<ReleaseManifest> manifests;
  for (const auto& seal : seals) {
    ++rep.releases_checked;
    auto path = layout.manifest(seal.release_id);
    if (!fs::exists(path)) {
      violation(rep, "manifest-seal", seal.release_id, "manifest file missing");
      continue;
    }
    std::string bytes = read_file(path);
    if (sha256_hex(bytes) != seal.sha256) {
      violation(rep, "manifest-seal", seal.release_id,
                "manifest bytes do not match the sealed hash");
      continue;
    }
    ReleaseManifest m;
    try {
      m = nlohmann::json::parse(bytes).get<ReleaseManifest>();
    } catch (const std::exception& e) {
      violation(rep, "manifest-seal", seal.release_id,
                std::string("sealed manifest does not parse: ") + e.what());
      continue;
    }
    if (m.release_id != seal.release_id) {
      violation(rep, "release-id", seal.release_id,
                "manifest names a different release_id: " + m.release_id);
    }
    if (!std::is_sorted(m.doc_ids.begin(), m.doc_ids.end()) ||
        std::adjacent_find(m.doc_ids.begin(), m.doc_ids.end()) !=
            m.doc_ids.end()) {
      violation(rep, "release-id", m.release_id,
                "doc_ids are not sorted and unique");
    }
    std::string recomputed =
        compute_release_id(m.parent, m.pipeline_config_hash, m.doc_ids);
    if (recomputed != m.release_id) {
      violation(rep, "release-id", m.release_id,
                "release_id does not recompute from manifest contents");
    }
    manifests.push_back(std::move(m));
  }

  if (fs::exists(layout.manifests_dir())) {
    for (const auto& entry : fs::directory_iterator(layout.manifests_dir())) {
      if (entry.path().extension() != ".json") continue;
      std::string stem = entry.path().stem().string();
      if (!sealed_ids.count(stem)) {
        violation(rep, "manifest-seal", stem,
                  "manifest file present but never sealed in the index");
      }
    }
  }

  // --- tombstones ---------------------------------------------------------
  std::vector<Tombstone> tombstones;
  std::map<std::string, const Tombstone*> tombstone_by_doc;
  if (fs::exists(layout.tombstones_file())) {
    try {
      tombstones = read_jsonl<Tombstone>(layout.tombstones_file());
    } catch (const std::exception& e) {
      violation(rep, "tombstone-propagation", layout.tombstones_file().string(),
                std::string("unreadable tombstone log: ") + e.what());
    }
  }
  for (const auto& t : tombstones) {
    ++rep.tombstones_checked;
    tombstone_by_doc[t.doc_id] = &t;
  }

  for (const auto& t : tombstones) {
    for (const auto& m : manifests) {
      if (m.seq > t.seq &&
          std::binary_search(m.doc_ids.begin(), m.doc_ids.end(), t.doc_id)) {
        violation(rep, "tombstone-propagation", t.doc_id,
                  "appears in release " + m.release_id +
                      " sealed after its tombstone");
      }
    }
  }

  // --- document shards ------------------------------------------------------
  std::map<std::string, DocumentRecord> shard_docs;
  if (fs::exists(layout.documents_dir())) {
    for (const auto& entry : fs::directory_iterator(layout.documents_dir())) {
      if (entry.path().extension() != ".jsonl") continue;
      try {
        for (const auto& j : read_jsonl_raw(entry.path())) {
          auto doc = j.get<DocumentRecord>();
          auto id = doc.doc_id;
          shard_docs.insert_or_assign(std::move(id), std::move(doc));
        }
      } catch (const std::exception& e) {
        violation(rep, "doc-hash", entry.path().filename().string(),
                  std::string("unreadable document shard: ") + e.what());
      }
    }
  }

  for (const auto& [doc_id, t] : tombstone_by_doc) {
    if (shard_docs.count(doc_id)) {
      violation(rep, "content-deleted", doc_id,
                "tombstoned document still holds text in its shard");
    }
    if (fs::exists(layout.raw_file(doc_id))) {
      violation(rep, "content-deleted", doc_id,
                "tombstoned document still has raw markup");
    }
  }

  // --- signal log -----------------------------------------------------------
  std::set<std::string> logged_signals;
  if (fs::exists(layout.signals_file())) {
    try {
      for (const auto& j : read_jsonl_raw(layout.signals_file())) {
        logged_signals.insert(j.at("id").get<std::string>());
      }
    } catch (const std::exception& e) {
      violation(rep, "signal-log", layout.signals_file().string(),
                std::string("unreadable signal log: ") + e.what());
    }
  }
  for (const auto& t : tombstones) {
    if (!t.request_ref.empty() && !logged_signals.count(t.request_ref)) {
      violation(rep, "signal-log", t.doc_id,
                "tombstone request_ref not in the signal log: " + t.request_ref);
    }
  }

  // --- URL index --------------------------------------------------------------
  std::map<std::string, std::set<std::string>> url_index;
  if (fs::exists(layout.url_index())) {
    try {
      for (const auto& j : read_jsonl_raw(layout.url_index())) {
        url_index[j.at("url").get<std::string>()].insert(
            j.at("doc_id").get<std::string>());
      }
    } catch (const std::exception& e) {
      violation(rep, "url-index", layout.url_index().string(),
                std::string("unreadable url index: ") + e.what());
    }
  }

  // --- per-document checks over every release member ------------------------
  std::set<std::string> member_ids;
  for (const auto& m : manifests) {
    member_ids.insert(m.doc_ids.begin(), m.doc_ids.end());
  }
  for (const auto& doc_id : member_ids) {
    if (tombstone_by_doc.count(doc_id)) continue;  // content legitimately gone
    ++rep.documents_checked;
    auto it = shard_docs.find(doc_id);
    if (it == shard_docs.end()) {
      violation(rep, "doc-missing", doc_id,
                "release member not present in document shards");
      continue;
    }
    const DocumentRecord& doc = it->second;
    if (compute_doc_id(doc.text) != doc_id) {
      violation(rep, "doc-hash", doc_id, "text does not hash to its doc_id");
    }
    if (!doc.has_licensing_evidence()) {
      violation(rep, "licensing-evidence", doc_id,
                "release member carries no licensing evidence");
    }
    if (!doc.licenses.empty()) {
      auto raw_path = layout.raw_file(doc_id);
      if (!fs::exists(raw_path)) {
        violation(rep, "evidence", doc_id,
                  "raw markup missing; evidence cannot re-verify");
      } else {
        std::string markup = read_file(raw_path);
        for (const auto& det : doc.licenses) {
          const auto& ev = det.evidence;
          if (ev.offset + ev.snippet.size() > markup.size() ||
              markup.compare(ev.offset, ev.snippet.size(), ev.snippet) != 0) {
            violation(rep, "evidence", doc_id,
                      "license evidence snippet does not match the raw "
                      "markup at its offset");
            break;
          }
        }
      }
    }
    for (const auto& sig : doc.signals) {
      if (!logged_signals.count(sig.id())) {
        violation(rep, "signal-log", doc_id,
                  "document signal missing from the signal log: " + sig.id());
      }
    }
    if (!doc.source_url.empty()) {
      auto url_it = url_index.find(doc.source_url);
      if (url_it == url_index.end() || !url_it->second.count(doc_id)) {
        violation(rep, "url-index", doc_id,
                  "document URL is not indexed to its doc_id");
      }
    }
  }

  return rep;
}

}  // namespace curator
