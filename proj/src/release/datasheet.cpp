#include "curator/release/datasheet.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "curator/core/error.hpp"
#include "curator/gate/url.hpp"

namespace curator {

namespace {

struct SourceBucket {
  std::size_t documents = 0;
  std::set<std::string> methods;
  std::string earliest, latest;  // crawl date range
};

std::string checkbox(bool on) { return on ? "[x]" : "[ ]"; }

std::string tier_phrase(OpennessTier t) {
  switch (t) {
    case OpennessTier::Tier3: return "Tier 3 (fully open)";
    case OpennessTier::Tier2: return "Tier 2 (open access)";
    case OpennessTier::Tier1: return "Tier 1 (replicable)";
    case OpennessTier::Unclassified: return "Unclassified";
  }
  throw invalid_argument("unknown tier");
}

std::string format_threshold(double v) {
  std::ostringstream out;
  out << v;  // shortest round-trippable form is overkill for rule thresholds
  return out.str();
}

}  // namespace

std::string render_datasheet(const ReleaseManifest& manifest,
                             const std::vector<DocumentRecord>& documents,
                             const DatasheetInputs& inputs) {
  std::map<std::string, SourceBucket> sources;
  std::map<std::string, std::size_t> license_docs;
  std::map<std::string, std::size_t> pd_outcomes;
  std::map<std::string, std::size_t> pd_bases;
  for (const auto& doc : documents) {
    auto parts = split_url(doc.source_url);
    auto& bucket = sources[parts ? parts->origin : "(other)"];
    ++bucket.documents;
    bucket.methods.insert(to_string(doc.provenance.acquisition_method));
    const std::string& date = doc.provenance.crawl_date;
    if (!date.empty()) {
      if (bucket.earliest.empty() || date < bucket.earliest) bucket.earliest = date;
      if (date > bucket.latest) bucket.latest = date;
    }
    std::set<std::string> seen;
    for (const auto& det : doc.licenses) seen.insert(det.tag.spdx_id);
    for (const auto& id : seen) ++license_docs[id];
    if (doc.pd_classification) {
      ++pd_outcomes[to_string(doc.pd_classification->outcome)];
      ++pd_bases[to_string(doc.pd_classification->basis)];
    }
  }

  std::ostringstream md;
  md << "# Datasheet: " << inputs.dataset_name << " " << manifest.label << "\n\n";
  md << "| | |\n|---|---|\n";
  md << "| Release id | `" << manifest.release_id << "` |\n";
  md << "| Version | " << manifest.label << " |\n";
  md << "| Created | " << manifest.created_at << " |\n";
  md << "| Parent release | "
     << (manifest.parent.empty() ? std::string("(none)")
                                 : "`" + manifest.parent + "`")
     << " |\n";
  md << "| Documents | " << manifest.doc_ids.size() << " |\n";
  md << "| Pipeline config hash | `" << manifest.pipeline_config_hash << "` |\n\n";

  md << "## Sources and acquisition\n\n";
  if (sources.empty()) {
    md << "No constituent documents are available for description.\n\n";
  } else {
    md << "| Origin | Documents | Acquisition | Crawl dates |\n"
       << "|---|---|---|---|\n";
    for (const auto& [origin, bucket] : sources) {
      md << "| " << origin << " | " << bucket.documents << " | ";
      bool first = true;
      for (const auto& m : bucket.methods) {
        if (!first) md << ", ";
        md << m;
        first = false;
      }
      md << " | ";
      if (bucket.earliest.empty()) {
        md << "(unknown)";
      } else if (bucket.earliest == bucket.latest) {
        md << bucket.earliest;
      } else {
        md << bucket.earliest << " to " << bucket.latest;
      }
      md << " |\n";
    }
    md << "\n";
  }

  md << "## Composition\n\n";
  if (license_docs.empty()) {
    md << "No license detections among the constituents.\n";
  } else {
    md << "| License | Documents |\n|---|---|\n";
    for (const auto& [id, n] : license_docs) {
      md << "| " << id << " | " << n << " |\n";
    }
  }
  if (!pd_outcomes.empty()) {
    md << "\nPublic-domain determinations:\n\n| Outcome | Documents |\n|---|---|\n";
    for (const auto& [outcome, n] : pd_outcomes) {
      md << "| " << outcome << " | " << n << " |\n";
    }
    md << "\n| Basis | Documents |\n|---|---|\n";
    for (const auto& [basis, n] : pd_bases) {
      md << "| " << basis << " | " << n << " |\n";
    }
  }
  md << "\n";

  md << "## Filtering\n\n";
  if (inputs.filters.empty()) {
    md << "No content filters were applied.\n\n";
  } else {
    md << "Values are stated explicitly so downstream users can judge the "
          "fit for their use:\n\n";
    md << "| Rule | Threshold | Rationale |\n|---|---|---|\n";
    for (const auto& f : inputs.filters) {
      md << "| " << f.id << " | " << format_threshold(f.threshold) << " | "
         << f.rationale << " |\n";
    }
    md << "\n";
  }

  if (!inputs.stage_counts.empty()) {
    md << "## Pipeline stage counts\n\n| Stage | Count |\n|---|---|\n";
    for (const auto& [stage, n] : inputs.stage_counts) {
      md << "| " << stage << " | " << n << " |\n";
    }
    md << "\n";
  }

  const auto& a = manifest.assessment;
  md << "## Openness assessment\n\n";
  md << "- " << checkbox(a.openly_licensed)
     << " Openly licensed (computed from constituent licenses)\n";
  md << "- " << checkbox(a.open_access) << " Open access (operator attested)\n";
  md << "- " << checkbox(a.replicable) << " Replicable (operator attested)\n\n";
  md << "**" << tier_phrase(a.tier) << "**\n\n";

  md << "## Intended uses\n\n";
  md << (inputs.intended_uses.empty() ? std::string("(not specified)")
                                      : inputs.intended_uses)
     << "\n\n";

  md << "## Removal requests\n\n";
  md << (inputs.removal_instructions.empty()
             ? std::string("Removal requests are honored via tombstones; "
                           "contact the release operator with a document URL "
                           "or doc id.")
             : inputs.removal_instructions)
     << "\n\n";
  if (!manifest.tombstones_applied.empty()) {
    md << "Removals applied while deriving this release: "
       << manifest.tombstones_applied.size() << "\n\n";
    for (const auto& id : manifest.tombstones_applied) {
      md << "- `" << id << "`\n";
    }
    md << "\n";
  }

  md << "## Reproducibility\n\n";
  md << "The release id is recomputable from the parent id, the pipeline "
        "config hash, and the sorted document ids; the manifest is sealed "
        "and immutable. Pipeline config hash: `"
     << manifest.pipeline_config_hash << "`.\n";
  return md.str();
}

std::string emit_datasheet(const Store& store, const std::string& id_or_label) {
  auto manifest = store.find_release(id_or_label);
  if (!manifest) {
    throw invalid_state("release is not sealed in this store: " + id_or_label);
  }
  std::vector<DocumentRecord> docs;
  for (const auto& id : manifest->doc_ids) {
    if (auto doc = store.get_document(id)) docs.push_back(std::move(*doc));
  }
  return render_datasheet(*manifest, docs, store.datasheet_inputs(manifest->release_id));
}

}  // namespace curator
