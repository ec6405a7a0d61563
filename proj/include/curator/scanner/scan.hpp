#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "curator/core/types.hpp"
#include "curator/scanner/quality.hpp"
#include "curator/scanner/stream.hpp"

namespace curator {

struct ScanConfig {
  bool keep_undetected = false;
  bool redact = false;
  QualityConfig quality = QualityConfig::defaults();
  std::string pipeline_config_hash;  // supplied by the caller over full config
  unsigned threads = 1;              // record-level parallelism
};

// Counter totals reconcile: records_read = emitted + dropped_undetected +
// every skipped_* category.
struct ScanReport {
  uint64_t records_read = 0;
  uint64_t skipped_by_type = 0;      // non-response records
  uint64_t skipped_by_status = 0;    // response without HTTP 200
  uint64_t skipped_non_html = 0;     // 200 but not an HTML content type
  uint64_t skipped_decode_error = 0; // undecodable under declared charset
  uint64_t skipped_malformed = 0;    // unparsable records, resynced over
  uint64_t dropped_undetected = 0;   // no detection, keep_undetected off
  uint64_t detected = 0;             // records with >= 1 detection
  uint64_t emitted = 0;
  std::vector<std::string> decode_errors;  // target URIs, archive order

  void merge(const ScanReport& other);
  bool reconciles() const;
};

void to_json(nlohmann::json& j, const ScanReport& v);

// Receives each emitted document together with the decoded markup its
// evidence offsets refer to, in canonical (archive-order) sequence.
using ScanSink = std::function<void(DocumentRecord&&, std::string&& markup)>;

// Scans one archive stream. Throws Error(Stream) on truncation after every
// complete record has been delivered.
ScanReport scan_warc(InputStream& in, const ScanConfig& config, ScanSink sink);

// Convenience over files; reports are merged across paths in order.
ScanReport scan_warc_files(const std::vector<std::filesystem::path>& paths,
                           const ScanConfig& config, ScanSink sink);

}  // namespace curator
