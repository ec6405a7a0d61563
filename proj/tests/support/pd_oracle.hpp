#pragma once

// Exhaustive reference matcher: every registration x renewal pair is
// scored directly from the staged rules with full (unbanded) similarity
// and no candidate indexes. Deliberately naive; the production matcher
// must agree with it exactly, including result order.

#include <algorithm>
#include <tuple>
#include <vector>

#include "curator/pd/match.hpp"
#include "curator/pd/similarity.hpp"
#include "curator/pd/types.hpp"

namespace pdoracle {

inline std::vector<curator::MatchResult> match_one(
    const std::vector<curator::CopyrightRecord>& regs, std::size_t i,
    const std::vector<curator::RenewalRecord>& renewals,
    const curator::MatchConfig& cfg) {
  using curator::MatchResult;
  using curator::MatchStage;
  const auto& reg = regs[i];

  std::vector<MatchResult> staged;
  std::vector<MatchResult> fuzzy;
  for (std::size_t j = 0; j < renewals.size(); ++j) {
    const auto& ren = renewals[j];
    double tsim = curator::similarity(reg.norm_title, ren.norm_title);
    bool win = curator::date_window_ok(reg, ren, cfg);
    if (!reg.norm_reg_id.empty() && reg.norm_reg_id == ren.norm_reg_id) {
      staged.push_back(MatchResult{i, j, MatchStage::RegIdExact, 1.0, win,
                                   tsim >= cfg.theta});
    } else if (reg.norm_title == ren.norm_title &&
               reg.norm_author == ren.norm_author) {
      staged.push_back(
          MatchResult{i, j, MatchStage::TitleAuthorExact, 1.0, win, true});
    } else if (win && tsim >= cfg.theta) {
      fuzzy.push_back(MatchResult{i, j, MatchStage::Fuzzy, tsim, true, false});
    }
  }

  if (!fuzzy.empty()) {
    double best = fuzzy[0].score;
    for (const auto& m : fuzzy) best = std::max(best, m.score);
    std::size_t near_best = 0;
    for (const auto& m : fuzzy) {
      if (m.score >= best - cfg.delta) ++near_best;
    }
    for (auto& m : fuzzy) {
      m.confirmed = near_best == 1 && m.score == best &&
                    m.score >= cfg.theta + cfg.delta;
    }
  }

  std::vector<MatchResult> out;
  out.insert(out.end(), staged.begin(), staged.end());
  out.insert(out.end(), fuzzy.begin(), fuzzy.end());
  auto key = [&](const MatchResult& m) {
    const auto& r = renewals[m.ren_index];
    return std::tuple<const std::string&, const std::string&,
                      const std::string&, const std::string&,
                      const std::string&>(r.norm_title, r.norm_author,
                                          r.renewal_date, r.renewal_id,
                                          r.norm_reg_id);
  };
  std::sort(out.begin(), out.end(),
            [&](const MatchResult& a, const MatchResult& b) {
              if (a.stage != b.stage) return a.stage < b.stage;
              if (a.score != b.score) return a.score > b.score;
              return key(a) < key(b);
            });
  return out;
}

inline std::vector<std::vector<curator::MatchResult>> match_all(
    const std::vector<curator::CopyrightRecord>& regs,
    const std::vector<curator::RenewalRecord>& renewals,
    const curator::MatchConfig& cfg) {
  std::vector<std::vector<curator::MatchResult>> out(regs.size());
  for (std::size_t i = 0; i < regs.size(); ++i) {
    out[i] = match_one(regs, i, renewals, cfg);
  }
  return out;
}

}  // namespace pdoracle
