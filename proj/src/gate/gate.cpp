#include "curator/gate/gate.hpp"

#include <algorithm>

#include "curator/gate/url.hpp"

namespace curator {

namespace {

// Appends the signal to the document and the run log unless either already
// carries one with the same id.
void record_signal(DocumentRecord& doc, std::vector<PreferenceSignal>& log,
                   PreferenceSignal signal) {
  const std::string id = signal.id();
  if (std::none_of(doc.signals.begin(), doc.signals.end(),
                   [&](const PreferenceSignal& s) { return s.id() == id; })) {
    doc.signals.push_back(signal);
  }
  if (std::none_of(log.begin(), log.end(),
                   [&](const PreferenceSignal& s) { return s.id() == id; })) {
    log.push_back(std::move(signal));
  }
}

std::string robots_observed_at(const GateConfig& config, const DocumentRecord& doc) {
  if (!config.as_of.empty()) return config.as_of;
  if (!doc.provenance.crawl_date.empty()) return doc.provenance.crawl_date;
  return kEpochTimestamp;
}

std::string optout_observed_at(const GateConfig& config) {
  return config.as_of.empty() ? kEpochTimestamp : config.as_of;
}

}  // namespace

GatePartition apply_robots(const std::vector<DocumentRecord>& documents,
                           const std::map<std::string, RobotsPolicy>& policies,
                           const GateConfig& config) {
  GatePartition out;
  for (const auto& doc : documents) {
    auto parts = split_url(doc.source_url);
    const RobotsPolicy* policy = nullptr;
    if (parts) {
      auto it = policies.find(parts->origin);
      if (it != policies.end()) policy = &it->second;
    }
    if (!policy) {
      out.included.push_back(doc);
      continue;
    }

    RobotsDecision decision = evaluate(*policy, config.agent, parts->path_query);
    if (!decision.matched) {
      out.included.push_back(doc);
      continue;
    }

    DocumentRecord gated = doc;
    PreferenceSignal signal;
    signal.subject = {doc.source_url, doc.doc_id};
    signal.kind = decision.rule.allow ? SignalKind::RobotsAllow
                                      : SignalKind::RobotsDisallow;
    signal.source = policy->origin + "/robots.txt";
    signal.observed_at = robots_observed_at(config, doc);
    signal.decision = decision.decision;
    record_signal(gated, out.signals, std::move(signal));

    if (decision.decision == SignalDecision::Exclude) {
      out.excluded.push_back(std::move(gated));
    } else {
      out.included.push_back(std::move(gated));
    }
  }
  return out;
}

GatePartition apply_optout(const std::vector<DocumentRecord>& documents,
                           const OptoutList& list, const GateConfig& config) {
  GatePartition out;
  for (const auto& doc : documents) {
    bool hit = list.urls.count(doc.source_url) > 0 ||
               list.hashes.count(doc.doc_id) > 0;
    if (!hit) {
      hit = std::any_of(list.prefixes.begin(), list.prefixes.end(),
                        [&](const std::string& p) {
                          return doc.source_url.size() >= p.size() &&
                                 doc.source_url.compare(0, p.size(), p) == 0;
                        });
    }
    if (!hit) {
      out.included.push_back(doc);
      continue;
    }

    DocumentRecord gated = doc;
    PreferenceSignal signal;
    signal.subject = {doc.source_url, doc.doc_id};
    signal.kind = SignalKind::OptoutList;
    signal.source = list.source_id;
    signal.observed_at = optout_observed_at(config);
    signal.decision = SignalDecision::Exclude;
    record_signal(gated, out.signals, std::move(signal));
    out.excluded.push_back(std::move(gated));
  }
  return out;
}

GateOutcome gate_documents(const std::vector<DocumentRecord>& documents,
                           const std::map<std::string, RobotsPolicy>& policies,
                           const std::vector<OptoutList>& lists,
                           const GateConfig& config) {
  GateOutcome out;
  out.report.docs_in = documents.size();

  GatePartition robots = apply_robots(documents, policies, config);
  out.excluded = std::move(robots.excluded);
  out.signals = std::move(robots.signals);
  out.report.excluded_by_robots = out.excluded.size();

  std::vector<DocumentRecord> remaining = std::move(robots.included);
  for (const auto& list : lists) {
    out.report.malformed_entries += list.rejected.size();
    GatePartition part = apply_optout(remaining, list, config);
    out.report.excluded_by_optout += part.excluded.size();
    for (auto& doc : part.excluded) out.excluded.push_back(std::move(doc));
    for (auto& sig : part.signals) {
      const std::string id = sig.id();
      if (std::none_of(out.signals.begin(), out.signals.end(),
                       [&](const PreferenceSignal& s) { return s.id() == id; })) {
        out.signals.push_back(std::move(sig));
      }
    }
    remaining = std::move(part.included);
  }
  out.included = std::move(remaining);

  out.report.included = out.included.size();
  for (const auto& sig : out.signals) {
    if (sig.decision == SignalDecision::Exclude) ++out.report.exclude_signals;
    else ++out.report.allow_signals;
  }
  return out;
}

void to_json(nlohmann::json& j, const GateReport& v) {
  j = {{"docs_in", v.docs_in},
       {"included", v.included},
       {"excluded_by_robots", v.excluded_by_robots},
       {"excluded_by_optout", v.excluded_by_optout},
       {"exclude_signals", v.exclude_signals},
       {"allow_signals", v.allow_signals},
       {"malformed_entries", v.malformed_entries}};
}

}  // namespace curator
