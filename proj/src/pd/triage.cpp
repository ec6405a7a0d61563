#include "curator/pd/triage.hpp"

#include <algorithm>
#include <map>

#include "curator/core/error.hpp"
#include "curator/core/hash.hpp"
#include "curator/core/jsonl.hpp"

namespace curator {

std::string work_key(const CopyrightRecord& r) {
  std::string pub;
  if (r.pub_date.has_value()) pub = std::to_string(r.pub_date->year);
  return sha256_hex(r.norm_reg_id + '\x1f' + r.norm_title + '\x1f' +
                    r.norm_author + '\x1f' + pub)
      .substr(0, 16);
}

nlohmann::json triage_row(const ClassifiedWork& work,
                          const std::vector<RenewalRecord>& renewals) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto& m : work.classification.evidence) {
    const auto& ren = renewals.at(m.ren_index);
    candidates.push_back({{"renewal_id", ren.renewal_id},
                          {"title", ren.title},
                          {"author", ren.author},
                          {"renewal_date", ren.renewal_date},
                          {"original_reg_id", ren.original_reg_id},
                          {"stage", to_string(m.stage)},
                          {"score", m.score},
                          {"confirmed", m.confirmed}});
  }
  return {{"work_key", work_key(work.registration)},
          {"registration",
           {{"reg_id", work.registration.reg_id},
            {"title", work.registration.title},
            {"author", work.registration.author},
            {"pub_year", work.registration.pub_date.has_value()
                             ? nlohmann::json(work.registration.pub_date->year)
                             : nlohmann::json()}}},
          {"candidates", std::move(candidates)}};
}

std::string export_triage(const std::vector<ClassifiedWork>& works,
                          const std::vector<RenewalRecord>& renewals) {
  std::string out;
  for (const auto& w : works) {
    if (w.classification.outcome == PdOutcome::RequiresInvestigation) {
      out += jsonl_line(triage_row(w, renewals));
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const ManualDecision& v) {
  j = {{"work_key", v.work_key},
       {"renewal_id", v.renewal_id},
       {"verdict", v.is_match ? "match" : "no-match"}};
}

void from_json(const nlohmann::json& j, ManualDecision& v) {
  j.at("work_key").get_to(v.work_key);
  j.at("renewal_id").get_to(v.renewal_id);
  std::string verdict = j.at("verdict").get<std::string>();
  if (verdict == "match") {
    v.is_match = true;
  } else if (verdict == "no-match") {
    v.is_match = false;
  } else {
    throw schema_error("unknown triage verdict: " + verdict);
  }
}

void to_json(nlohmann::json& j, const DecisionReport& v) {
  j = {{"applied", v.applied},
       {"unknown_work", v.unknown_work},
       {"unknown_renewal", v.unknown_renewal}};
}

DecisionReport apply_manual_decisions(
    std::vector<ClassifiedWork>& works,
    const std::vector<RenewalRecord>& renewals,
    const std::vector<ManualDecision>& decisions, const RulesConfig& rules) {
  std::map<std::string, std::vector<std::size_t>> by_key;
  for (std::size_t i = 0; i < works.size(); ++i) {
    by_key[work_key(works[i].registration)].push_back(i);
  }

  DecisionReport report;
  std::vector<bool> touched(works.size(), false);
  for (const auto& d : decisions) {
    auto it = by_key.find(d.work_key);
    if (it == by_key.end()) {
      ++report.unknown_work;
      continue;
    }
    bool hit = false;
    for (std::size_t i : it->second) {
      auto& evidence = works[i].classification.evidence;
      for (std::size_t k = 0; k < evidence.size(); ++k) {
        if (renewals.at(evidence[k].ren_index).renewal_id != d.renewal_id)
          continue;
        hit = true;
        touched[i] = true;
        if (d.is_match) {
          evidence[k].confirmed = true;
        } else {
          evidence.erase(evidence.begin() + static_cast<std::ptrdiff_t>(k));
          --k;
        }
      }
    }
    if (hit) {
      ++report.applied;
    } else {
      ++report.unknown_renewal;
    }
  }

  for (std::size_t i = 0; i < works.size(); ++i) {
    if (touched[i]) {
      works[i].classification = classify(works[i].registration,
                                         works[i].classification.evidence,
                                         rules);
    }
  }
  return report;
}

}  // namespace curator
