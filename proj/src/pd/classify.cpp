#include "curator/pd/classify.hpp"

#include <algorithm>
#include <tuple>

#include "curator/pd/match.hpp"

namespace curator {

PdClassification classify(const CopyrightRecord& registration,
                          const std::vector<MatchResult>& matches,
                          const RulesConfig& rules) {
  bool any_confirmed = false, any_ambiguous = false;
  for (const auto& m : matches) {
    (m.confirmed ? any_confirmed : any_ambiguous) = true;
  }

  PdClassification out;
  out.evidence = matches;

  if (any_confirmed) {
    out.outcome = PdOutcome::Excluded;
    out.basis = PdBasis::RenewalFound;
    return out;
  }
  if (!registration.pub_date.has_value()) {
    out.outcome = PdOutcome::RequiresInvestigation;
    out.basis = any_ambiguous ? PdBasis::AmbiguousMatch
                              : PdBasis::OutOfRuleRange;
    return out;
  }
  int year = registration.pub_date->year;
  if (year <= rules.pre_cutoff) {
    if (any_ambiguous) {
      out.outcome = PdOutcome::RequiresInvestigation;
      out.basis = PdBasis::AmbiguousMatch;
    } else {
      out.outcome = PdOutcome::BelievedPublicDomain;
      out.basis = PdBasis::PreCutoffYear;
    }
    return out;
  }
  if (year < rules.renewal_lo || year > rules.renewal_hi) {
    out.outcome = PdOutcome::Excluded;
    out.basis = PdBasis::OutOfRuleRange;
    return out;
  }
  if (any_ambiguous) {
    out.outcome = PdOutcome::RequiresInvestigation;
    out.basis = PdBasis::AmbiguousMatch;
    return out;
  }
  out.outcome = PdOutcome::BelievedPublicDomain;
  out.basis = PdBasis::NoRenewalFound;
  return out;
}

namespace {

std::string pub_key(const CopyrightRecord& r) {
  if (!r.pub_date.has_value()) return "";
  std::string k = std::to_string(r.pub_date->year);
  if (r.pub_date->month) k += "-" + std::to_string(*r.pub_date->month);
  if (r.pub_date->day) k += "-" + std::to_string(*r.pub_date->day);
  return k;
}

auto work_order_key(const CopyrightRecord& r) {
  return std::tuple<const std::string&, const std::string&, const std::string&,
                    std::string, const std::string&, const std::string&,
                    const std::string&>(r.norm_reg_id, r.norm_title,
                                        r.norm_author, pub_key(r), r.reg_id,
                                        r.title, r.author);
}

}  // namespace

std::vector<ClassifiedWork> classify_corpus(
    const std::vector<CopyrightRecord>& registrations,
    const std::vector<RenewalRecord>& renewals,
    const MatchConfig& match_config, const RulesConfig& rules) {
  auto matches = match_renewals(registrations, renewals, match_config);
  std::vector<ClassifiedWork> out;
  out.reserve(registrations.size());
  for (std::size_t i = 0; i < registrations.size(); ++i) {
    out.push_back({registrations[i], classify(registrations[i], matches[i], rules)});
  }
  std::sort(out.begin(), out.end(),
            [](const ClassifiedWork& a, const ClassifiedWork& b) {
              return work_order_key(a.registration) <
                     work_order_key(b.registration);
            });
  return out;
}

nlohmann::json classified_work_json(
    const ClassifiedWork& work, const std::vector<RenewalRecord>& renewals) {
  nlohmann::json evidence = nlohmann::json::array();
  for (const auto& m : work.classification.evidence) {
    const auto& ren = renewals.at(m.ren_index);
    evidence.push_back({{"renewal_id", ren.renewal_id},
                        {"renewal_date", ren.renewal_date},
                        {"stage", to_string(m.stage)},
                        {"score", m.score},
                        {"date_window_ok", m.date_window_ok},
                        {"confirmed", m.confirmed}});
  }
  nlohmann::json j{{"registration", work.registration},
                   {"outcome", to_string(work.classification.outcome)},
                   {"basis", to_string(work.classification.basis)},
                   {"evidence", std::move(evidence)}};
  return j;
}

ClassificationSummary summarize(const std::vector<ClassifiedWork>& works) {
  ClassificationSummary s;
  s.total = works.size();
  for (const auto& w : works) {
    ++s.by_outcome[to_string(w.classification.outcome)];
    ++s.by_basis[to_string(w.classification.basis)];
  }
  return s;
}

void to_json(nlohmann::json& j, const ClassificationSummary& v) {
  j = {{"total", v.total},
       {"by_outcome", v.by_outcome},
       {"by_basis", v.by_basis}};
}

}  // namespace curator
