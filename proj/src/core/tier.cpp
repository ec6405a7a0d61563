#include "curator/core/tier.hpp"

#include "curator/core/error.hpp"

namespace curator {

std::string to_string(OpennessTier t) {
  switch (t) {
    case OpennessTier::Unclassified: return "Unclassified";
    case OpennessTier::Tier1: return "Tier1";
    case OpennessTier::Tier2: return "Tier2";
    case OpennessTier::Tier3: return "Tier3";
  }
  return "Unclassified";
}

OpennessTier openness_tier_from_string(std::string_view s) {
  if (s == "Unclassified") return OpennessTier::Unclassified;
  if (s == "Tier1") return OpennessTier::Tier1;
  if (s == "Tier2") return OpennessTier::Tier2;
  if (s == "Tier3") return OpennessTier::Tier3;
  throw schema_error("unknown openness tier: " + std::string(s));
}

void to_json(nlohmann::json& j, const OpennessAssessment& v) {
  j = {{"openly_licensed", v.openly_licensed},
       {"open_access", v.open_access},
       {"replicable", v.replicable},
       {"tier", to_string(v.tier)}};
}

void from_json(const nlohmann::json& j, OpennessAssessment& v) {
  v.openly_licensed = j.at("openly_licensed").get<bool>();
  v.open_access = j.at("open_access").get<bool>();
  v.replicable = j.at("replicable").get<bool>();
  v.tier = openness_tier_from_string(j.at("tier").get<std::string>());
}

OpennessAssessment assess_tier(bool openly_licensed, bool open_access,
                               bool replicable) {
  OpennessAssessment a;
  a.openly_licensed = openly_licensed;
  a.open_access = open_access;
  a.replicable = replicable;
  if (!replicable) {
    a.tier = OpennessTier::Unclassified;
  } else if (openly_licensed && open_access) {
    a.tier = OpennessTier::Tier3;
  } else if (open_access) {
    a.tier = OpennessTier::Tier2;
  } else {
    a.tier = OpennessTier::Tier1;
  }
  return a;
}

bool aggregate_constituent_licensing(const LicenseTag& dataset_level_license,
                                     const std::vector<DocumentRecord>& constituents) {
  (void)dataset_level_license;  // never lifts the result on its own
  if (constituents.empty()) {
    throw invalid_argument(
        "aggregate_constituent_licensing: empty constituent list");
  }
  for (const auto& doc : constituents) {
    if (!doc.openly_licensed()) return false;
  }
  return true;
}

}  // namespace curator
