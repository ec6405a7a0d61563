#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "curator/core/license.hpp"
#include "curator/core/types.hpp"

namespace curator {

enum class OpennessTier { Unclassified, Tier1, Tier2, Tier3 };

std::string to_string(OpennessTier t);
OpennessTier openness_tier_from_string(std::string_view s);

// A dataset's position in the three-level openness classification.  The
// booleans are the inputs; tier is derived from them and never set directly.
struct OpennessAssessment {
  bool openly_licensed = false;
  bool open_access = false;
  bool replicable = false;
  OpennessTier tier = OpennessTier::Unclassified;

  bool operator==(const OpennessAssessment&) const = default;
};

void to_json(nlohmann::json& j, const OpennessAssessment& v);
void from_json(const nlohmann::json& j, OpennessAssessment& v);

// Tier requirements are cumulative: replicable alone is Tier1, adding open
// access gives Tier2, adding open licensing gives Tier3.  Nothing qualifies
// for any tier without replicability.
OpennessAssessment assess_tier(bool openly_licensed, bool open_access,
                               bool replicable);

// A dataset is openly licensed only if every constituent document is; a
// permissive dataset-level license cannot compensate for closed contents.
// Throws invalid-argument on an empty constituent list.
bool aggregate_constituent_licensing(const LicenseTag& dataset_level_license,
                                     const std::vector<DocumentRecord>& constituents);

}  // namespace curator
