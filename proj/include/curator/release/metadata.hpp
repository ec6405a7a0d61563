#pragma once

#include <string>

#include "json.hpp"

#include "curator/release/store.hpp"
#include "curator/release/types.hpp"

namespace curator {

// Version tag of the machine-readable metadata schema; bumped on any field
// change so consumers can pin it.
inline constexpr const char* kMetadataSchema = "curator-croissant-subset/1.0";

// Emits the structured metadata document for a sealed release: name,
// version, constituent license distribution (with a public-domain bucket
// carrying basis counts), record-set schema, per-source provenance
// pointers, and a deprecation flag once a later release supersedes this
// one.  Byte-deterministic for a given store state.  Unknown release →
// invalid-state.
nlohmann::json emit_metadata(const Store& store, const std::string& id_or_label);

}  // namespace curator
