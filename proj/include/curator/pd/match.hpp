#pragma once

#include <string>
#include <vector>

#include "curator/pd/types.hpp"

namespace curator {

// Leading year of "YYYY" / "YYYY-MM-DD"; 0 when unparseable.
int renewal_year(const std::string& renewal_date);

// True when the renewal-minus-publication gap falls inside the window;
// false when either year is unavailable.
bool date_window_ok(const CopyrightRecord& reg, const RenewalRecord& ren,
                    const MatchConfig& config);

// Staged matcher. Inputs must be normalized. Per registration, in order:
//   stage 1: normalized reg_id equality (score 1; confirmed only when the
//            titles also agree at >= theta — bare id collisions are
//            ambiguous because the id is not unique);
//   stage 2: normalized title AND author equality (confirmed);
//   stage 3: title similarity >= theta with the publication-to-renewal
//            gap inside the window. Confirmed only for a unique best
//            candidate scoring >= theta+delta; candidates inside
//            [theta, theta+delta) or tied within delta of the best stay
//            ambiguous.
// A renewal reachable through several stages is reported once, at the
// earliest stage. Results are sorted by (stage, -score, renewal content),
// so output is independent of renewal row order.
std::vector<std::vector<MatchResult>> match_renewals(
    const std::vector<CopyrightRecord>& registrations,
    const std::vector<RenewalRecord>& renewals, const MatchConfig& config);

}  // namespace curator
