#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "curator/pd/types.hpp"

namespace curator {

struct IngestReport {
  std::uint64_t rows_read = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::string reject_path;  // written only when rejected > 0
  bool operator==(const IngestReport&) const = default;
};
void to_json(nlohmann::json& j, const IngestReport& v);

// Reads CSV (header row; RFC-4180 quoting) or JSONL, chosen by extension
// and falling back to a first-byte sniff. Accepted rows come back
// normalized; malformed rows are counted and appended to the reject file
// with their 1-based row numbers. Throws io-error when the file cannot
// be read and schema-error (naming the column) when a CSV header lacks a
// required column.
//
// Registrations require columns reg_id, title, author, pub_year
// (pub_month/pub_day optional); a row must carry a non-empty title and,
// when present, a pub_year in [1800, 2100].
std::pair<std::vector<CopyrightRecord>, IngestReport> ingest_registrations(
    const std::string& path, const std::string& reject_path = "");

// Renewals require columns renewal_id, title, author, renewal_date
// (original_reg_id, pub_year optional); a row must carry a non-empty
// renewal_date.
std::pair<std::vector<RenewalRecord>, IngestReport> ingest_renewals(
    const std::string& path, const std::string& reject_path = "");

// RFC-4180 row parser shared with the CLI: quoted fields, "" escapes,
// embedded newlines. Returns one vector of fields per row.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace curator
