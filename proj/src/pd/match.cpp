#include "curator/pd/match.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "curator/pd/similarity.hpp"

namespace curator {

int renewal_year(const std::string& renewal_date) {
  if (renewal_date.size() < 4) return 0;
  int y = 0;
  for (int i = 0; i < 4; ++i) {
    char c = renewal_date[i];
    if (c < '0' || c > '9') return 0;
    y = y * 10 + (c - '0');
  }
  return y;
}

bool date_window_ok(const CopyrightRecord& reg, const RenewalRecord& ren,
                    const MatchConfig& config) {
  if (!reg.pub_date.has_value()) return false;
  int ry = renewal_year(ren.renewal_date);
  if (ry == 0) return false;
  int gap = ry - reg.pub_date->year;
  return gap >= config.window_lo && gap <= config.window_hi;
}

namespace {

struct RenewalIndex {
  std::unordered_map<std::string, std::vector<std::size_t>> by_reg_id;
  std::unordered_map<std::string, std::vector<std::size_t>> by_title_author;
};

RenewalIndex build_index(const std::vector<RenewalRecord>& renewals) {
  RenewalIndex idx;
  for (std::size_t j = 0; j < renewals.size(); ++j) {
    const auto& r = renewals[j];
    if (!r.norm_reg_id.empty()) idx.by_reg_id[r.norm_reg_id].push_back(j);
    idx.by_title_author[r.norm_title + '\x1f' + r.norm_author].push_back(j);
  }
  return idx;
}

// Content-based ordering key so results do not depend on renewal row
// order.
std::tuple<const std::string&, const std::string&, const std::string&,
           const std::string&, const std::string&>
renewal_key(const RenewalRecord& r) {
  return {r.norm_title, r.norm_author, r.renewal_date, r.renewal_id,
          r.norm_reg_id};
}

std::vector<MatchResult> match_one(
    const std::vector<CopyrightRecord>& regs, std::size_t i,
    const std::vector<RenewalRecord>& renewals, const RenewalIndex& idx,
    const MatchConfig& config) {
  const auto& reg = regs[i];
  std::map<std::size_t, MatchResult> picked;

  if (!reg.norm_reg_id.empty()) {
    auto it = idx.by_reg_id.find(reg.norm_reg_id);
    if (it != idx.by_reg_id.end()) {
      for (std::size_t j : it->second) {
        double tsim = similarity_at_least(reg.norm_title,
                                          renewals[j].norm_title, config.theta);
        picked.emplace(j, MatchResult{i, j, MatchStage::RegIdExact, 1.0,
                                      date_window_ok(reg, renewals[j], config),
                                      tsim >= config.theta});
      }
    }
  }

  auto it2 = idx.by_title_author.find(reg.norm_title + '\x1f' + reg.norm_author);
  if (it2 != idx.by_title_author.end()) {
    for (std::size_t j : it2->second) {
      picked.emplace(j, MatchResult{i, j, MatchStage::TitleAuthorExact, 1.0,
                                    date_window_ok(reg, renewals[j], config),
                                    true});
    }
  }

  std::vector<MatchResult> fuzzy;
  for (std::size_t j = 0; j < renewals.size(); ++j) {
    if (picked.count(j)) continue;
    if (!date_window_ok(reg, renewals[j], config)) continue;
    double s = similarity_at_least(reg.norm_title, renewals[j].norm_title,
                                   config.theta);
    if (s >= config.theta) {
      fuzzy.push_back(MatchResult{i, j, MatchStage::Fuzzy, s, true, false});
    }
  }
  if (!fuzzy.empty()) {
    double best = fuzzy[0].score;
    for (const auto& m : fuzzy) best = std::max(best, m.score);
    std::size_t near_best = 0;
    for (const auto& m : fuzzy) {
      if (m.score >= best - config.delta) ++near_best;
    }
    for (auto& m : fuzzy) {
      m.confirmed = near_best == 1 && m.score == best &&
                    m.score >= config.theta + config.delta;
    }
  }

  std::vector<MatchResult> out;
  out.reserve(picked.size() + fuzzy.size());
  for (auto& [j, m] : picked) out.push_back(m);
  for (auto& m : fuzzy) out.push_back(m);
  std::sort(out.begin(), out.end(), [&](const MatchResult& a,
                                        const MatchResult& b) {
    if (a.stage != b.stage) return a.stage < b.stage;
    if (a.score != b.score) return a.score > b.score;
    return renewal_key(renewals[a.ren_index]) <
           renewal_key(renewals[b.ren_index]);
  });
  return out;
}

}  // namespace

std::vector<std::vector<MatchResult>> match_renewals(
    const std::vector<CopyrightRecord>& registrations,
    const std::vector<RenewalRecord>& renewals, const MatchConfig& config) {
  RenewalIndex idx = build_index(renewals);
  std::vector<std::vector<MatchResult>> results(registrations.size());

  unsigned threads = config.threads == 0 ? 1 : config.threads;
  if (threads <= 1 || registrations.size() < 2) {
    for (std::size_t i = 0; i < registrations.size(); ++i) {
      results[i] = match_one(registrations, i, renewals, idx, config);
    }
    return results;
  }

  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < registrations.size(); i += threads) {
        results[i] = match_one(registrations, i, renewals, idx, config);
      }
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace curator
