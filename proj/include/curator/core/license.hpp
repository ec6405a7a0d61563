#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace curator {

enum class LicenseFamily { Cc, PublicDomainDedication, OtherOpen, Unknown };

std::string to_string(LicenseFamily f);
LicenseFamily license_family_from_string(std::string_view s);

struct LicenseTag {
  std::string spdx_id;
  LicenseFamily family = LicenseFamily::Unknown;

  bool operator==(const LicenseTag&) const = default;
};

struct LicenseTableEntry {
  std::string spdx_id;
  LicenseFamily family;
  bool open;  // open-definition predicate: freely usable, modifiable, shareable
};

// Fixed, versioned table shipped with the artifact. Ids here are the only
// ones normalization may produce; anything else keeps the raw input with
// family=unknown.
const std::vector<LicenseTableEntry>& license_table();
extern const char kLicenseTableVersion[];

// JSON rendering of the table (the shipped data/license_table.json file
// must stay byte-equal to this).
nlohmann::json license_table_json();

// Canonicalizes a license URL or free-text declaration to a tag from the
// table. `version_hint` supplies a version for unversioned declarations
// such as "CC BY-SA". Throws Error(InvalidArgument) on empty input.
// Unrecognized input returns family=unknown with the raw string preserved
// verbatim in spdx_id.
LicenseTag normalize_license(std::string_view raw,
                             std::optional<std::string_view> version_hint = {});

// Table-backed open predicate; false for anything not in the table.
bool is_open_license(const LicenseTag& tag);

}  // namespace curator
