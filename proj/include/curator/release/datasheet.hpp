#pragma once

#include <string>

#include "curator/release/store.hpp"
#include "curator/release/types.hpp"

namespace curator {

// Renders the human-readable datasheet for a sealed release: sources and
// acquisition methods, filter rules with rationale, pipeline stage counts,
// the tier assessment with its three attested booleans, intended uses,
// removal instructions, and the pipeline config hash.  Output is
// deterministic for a given store state.  Unknown release → invalid-state.
std::string emit_datasheet(const Store& store, const std::string& id_or_label);

// Pure renderer over already-loaded parts; emit_datasheet wraps this.
std::string render_datasheet(const ReleaseManifest& manifest,
                             const std::vector<DocumentRecord>& documents,
                             const DatasheetInputs& inputs);

}  // namespace curator
