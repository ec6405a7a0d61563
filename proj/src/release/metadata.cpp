#include "curator/release/metadata.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "curator/core/error.hpp"
#include "curator/gate/url.hpp"

namespace curator {

namespace {

nlohmann::json record_set_schema() {
  auto field = [](const char* name, const char* type, const char* description) {
    return nlohmann::json{{"name", name},
                          {"dataType", type},
                          {"description", description}};
  };
  return nlohmann::json{
      {"name", "documents"},
      {"description", "One JSON record per constituent document."},
      {"fields",
       nlohmann::json::array({
           field("doc_id", "sha256",
                 "Content address: sha256 over the canonical text bytes."),
           field("source_url", "url", "Where the document was acquired."),
           field("text", "text", "Canonical extracted text."),
           field("provenance", "object",
                 "Capture context: crawl date, verbatim headers and metadata, "
                 "acquisition method, pipeline config hash."),
           field("licenses", "array",
                 "License detections with verbatim evidence snippets."),
           field("signals", "array",
                 "Preference signals recorded against this document."),
           field("flags", "array", "Quality and handling flags."),
           field("pd_classification", "object",
                 "Public-domain determination, when one was made."),
       })},
  };
}

}  // namespace

nlohmann::json emit_metadata(const Store& store, const std::string& id_or_label) {
  auto manifest = store.find_release(id_or_label);
  if (!manifest) {
    throw invalid_state("release is not sealed in this store: " + id_or_label);
  }

  std::map<std::string, std::size_t> license_docs;
  std::map<std::string, std::size_t> pd_outcomes;
  std::map<std::string, std::size_t> pd_bases;
  struct Source {
    std::size_t documents = 0;
    std::set<std::string> methods;
  };
  std::map<std::string, Source> sources;
  std::size_t docs_loaded = 0;
  for (const auto& id : manifest->doc_ids) {
    auto doc = store.get_document(id);
    if (!doc) continue;
    ++docs_loaded;
    std::set<std::string> seen;
    for (const auto& det : doc->licenses) seen.insert(det.tag.spdx_id);
    for (const auto& lid : seen) ++license_docs[lid];
    if (doc->pd_classification) {
      ++pd_outcomes[to_string(doc->pd_classification->outcome)];
      ++pd_bases[to_string(doc->pd_classification->basis)];
    }
    auto parts = split_url(doc->source_url);
    auto& src = sources[parts ? parts->origin : "(other)"];
    ++src.documents;
    src.methods.insert(to_string(doc->provenance.acquisition_method));
  }

  // A release is superseded once any later release names it as parent.
  std::vector<std::string> superseded_by;
  for (const auto& r : store.releases()) {
    if (r.parent == manifest->release_id) superseded_by.push_back(r.release_id);
  }
  std::sort(superseded_by.begin(), superseded_by.end());

  DatasheetInputs inputs = store.datasheet_inputs(manifest->release_id);

  nlohmann::json j;
  j["@type"] = "Dataset";
  j["conformsTo"] = kMetadataSchema;
  j["name"] = inputs.dataset_name;
  j["version"] = manifest->label;
  j["releaseId"] = manifest->release_id;
  j["parent"] = manifest->parent;
  j["createdAt"] = manifest->created_at;
  j["deprecated"] = !superseded_by.empty();
  j["supersededBy"] = superseded_by;
  j["documentCount"] = manifest->doc_ids.size();
  j["documentsAvailable"] = docs_loaded;  // shrinks when members are removed
  j["tombstonesApplied"] = manifest->tombstones_applied.size();
  j["openness"] = manifest->assessment;
  j["pipelineConfigHash"] = manifest->pipeline_config_hash;
  j["datasheet"] = manifest->datasheet_ref;

  nlohmann::json summary;
  summary["constituents"] = license_docs;
  if (!pd_outcomes.empty()) {
    summary["publicDomain"] = {{"byOutcome", pd_outcomes}, {"byBasis", pd_bases}};
  }
  j["licenseSummary"] = summary;

  j["recordSet"] = record_set_schema();

  nlohmann::json src_list = nlohmann::json::array();
  for (const auto& [origin, src] : sources) {
    src_list.push_back({{"origin", origin},
                        {"documents", src.documents},
                        {"acquisitionMethods", src.methods}});
  }
  j["sources"] = src_list;
  return j;
}

}  // namespace curator
