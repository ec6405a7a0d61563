#include "curator/core/types.hpp"

#include <tuple>

#include "curator/core/error.hpp"
#include "curator/core/hash.hpp"

namespace curator {

std::string to_string(DetectionMethod m) {
  switch (m) {
    case DetectionMethod::RelLicenseLink: return "rel-license-link";
    case DetectionMethod::CcUrlRegex: return "cc-url-regex";
    case DetectionMethod::MetaTag: return "meta-tag";
    case DetectionMethod::DeclaredBySource: return "declared-by-source";
    case DetectionMethod::Manual: return "manual";
  }
  return "manual";
}

DetectionMethod detection_method_from_string(std::string_view s) {
  if (s == "rel-license-link") return DetectionMethod::RelLicenseLink;
  if (s == "cc-url-regex") return DetectionMethod::CcUrlRegex;
  if (s == "meta-tag") return DetectionMethod::MetaTag;
  if (s == "declared-by-source") return DetectionMethod::DeclaredBySource;
  if (s == "manual") return DetectionMethod::Manual;
  throw schema_error("unknown detection method: " + std::string(s));
}

std::string to_string(ScopeConfidence c) {
  return c == ScopeConfidence::PageLevel ? "page-level" : "asset-level-uncertain";
}

ScopeConfidence scope_confidence_from_string(std::string_view s) {
  if (s == "page-level") return ScopeConfidence::PageLevel;
  if (s == "asset-level-uncertain") return ScopeConfidence::AssetLevelUncertain;
  throw schema_error("unknown scope confidence: " + std::string(s));
}

std::string to_string(SignalKind k) {
  switch (k) {
    case SignalKind::RobotsDisallow: return "robots-disallow";
    case SignalKind::RobotsAllow: return "robots-allow";
    case SignalKind::OptoutList: return "optout-list";
    case SignalKind::ManualRemovalRequest: return "manual-removal-request";
  }
  return "optout-list";
}

SignalKind signal_kind_from_string(std::string_view s) {
  if (s == "robots-disallow") return SignalKind::RobotsDisallow;
  if (s == "robots-allow") return SignalKind::RobotsAllow;
  if (s == "optout-list") return SignalKind::OptoutList;
  if (s == "manual-removal-request") return SignalKind::ManualRemovalRequest;
  throw schema_error("unknown signal kind: " + std::string(s));
}

std::string to_string(SignalDecision d) {
  return d == SignalDecision::Include ? "include" : "exclude";
}

SignalDecision signal_decision_from_string(std::string_view s) {
  if (s == "include") return SignalDecision::Include;
  if (s == "exclude") return SignalDecision::Exclude;
  throw schema_error("unknown signal decision: " + std::string(s));
}

std::string to_string(AcquisitionMethod m) {
  switch (m) {
    case AcquisitionMethod::WarcCrawl: return "warc-crawl";
    case AcquisitionMethod::BulkDownload: return "bulk-download";
    case AcquisitionMethod::ManualIngest: return "manual-ingest";
  }
  return "manual-ingest";
}

AcquisitionMethod acquisition_method_from_string(std::string_view s) {
  if (s == "warc-crawl") return AcquisitionMethod::WarcCrawl;
  if (s == "bulk-download") return AcquisitionMethod::BulkDownload;
  if (s == "manual-ingest") return AcquisitionMethod::ManualIngest;
  throw schema_error("unknown acquisition method: " + std::string(s));
}

std::string to_string(PdOutcome o) {
  switch (o) {
    case PdOutcome::Excluded: return "Excluded";
    case PdOutcome::RequiresInvestigation: return "RequiresInvestigation";
    case PdOutcome::BelievedPublicDomain: return "BelievedPublicDomain";
  }
  return "RequiresInvestigation";
}

PdOutcome pd_outcome_from_string(std::string_view s) {
  if (s == "Excluded") return PdOutcome::Excluded;
  if (s == "RequiresInvestigation") return PdOutcome::RequiresInvestigation;
  if (s == "BelievedPublicDomain") return PdOutcome::BelievedPublicDomain;
  throw schema_error("unknown pd outcome: " + std::string(s));
}

std::string to_string(PdBasis b) {
  switch (b) {
    case PdBasis::PreCutoffYear: return "pre-cutoff-year";
    case PdBasis::RenewalFound: return "renewal-found";
    case PdBasis::NoRenewalFound: return "no-renewal-found";
    case PdBasis::AmbiguousMatch: return "ambiguous-match";
    case PdBasis::OutOfRuleRange: return "out-of-rule-range";
  }
  return "ambiguous-match";
}

PdBasis pd_basis_from_string(std::string_view s) {
  if (s == "pre-cutoff-year") return PdBasis::PreCutoffYear;
  if (s == "renewal-found") return PdBasis::RenewalFound;
  if (s == "no-renewal-found") return PdBasis::NoRenewalFound;
  if (s == "ambiguous-match") return PdBasis::AmbiguousMatch;
  if (s == "out-of-rule-range") return PdBasis::OutOfRuleRange;
  throw schema_error("unknown pd basis: " + std::string(s));
}

std::string PreferenceSignal::id() const {
  std::string key = subject.url;
  key += '\x1f';
  key += subject.doc_id;
  key += '\x1f';
  key += to_string(kind);
  key += '\x1f';
  key += source;
  return sha256_hex(key).substr(0, 16);
}

DocumentRecord DocumentRecord::make(std::string text, ProvenanceRecord provenance) {
  DocumentRecord d;
  d.text = canonical_text(text);
  d.doc_id = compute_doc_id(d.text);
  d.source_url = provenance.source_url;
  d.provenance = std::move(provenance);
  return d;
}

bool DocumentRecord::has_licensing_evidence() const {
  if (!licenses.empty()) return true;
  return pd_classification &&
         pd_classification->outcome == PdOutcome::BelievedPublicDomain;
}

bool DocumentRecord::openly_licensed() const {
  if (pd_classification &&
      pd_classification->outcome == PdOutcome::BelievedPublicDomain) {
    return true;
  }
  if (licenses.empty()) return false;
  for (const auto& det : licenses) {
    if (!is_open_license(det.tag)) return false;
  }
  return true;
}

namespace {

HeaderList headers_from_json(const nlohmann::json& j) {
  HeaderList out;
  for (const auto& pair : j) {
    out.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
  }
  return out;
}

nlohmann::json headers_to_json(const HeaderList& h) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [name, value] : h) {
    out.push_back(nlohmann::json::array({name, value}));
  }
  return out;
}

}  // namespace

void to_json(nlohmann::json& j, const LicenseTag& v) {
  j = {{"spdx_id", v.spdx_id}, {"family", to_string(v.family)}};
}
void from_json(const nlohmann::json& j, LicenseTag& v) {
  v.spdx_id = j.at("spdx_id").get<std::string>();
  v.family = license_family_from_string(j.at("family").get<std::string>());
}

void to_json(nlohmann::json& j, const Evidence& v) {
  j = {{"snippet", v.snippet}, {"offset", v.offset}};
}
void from_json(const nlohmann::json& j, Evidence& v) {
  v.snippet = j.at("snippet").get<std::string>();
  v.offset = j.at("offset").get<std::size_t>();
}

void to_json(nlohmann::json& j, const LicenseDetection& v) {
  j = {{"tag", v.tag},
       {"method", to_string(v.method)},
       {"evidence", v.evidence},
       {"scope_confidence", to_string(v.scope_confidence)}};
}
void from_json(const nlohmann::json& j, LicenseDetection& v) {
  v.tag = j.at("tag").get<LicenseTag>();
  v.method = detection_method_from_string(j.at("method").get<std::string>());
  v.evidence = j.at("evidence").get<Evidence>();
  v.scope_confidence =
      scope_confidence_from_string(j.at("scope_confidence").get<std::string>());
}

void to_json(nlohmann::json& j, const SignalSubject& v) {
  j = nlohmann::json::object();
  if (!v.url.empty()) j["url"] = v.url;
  if (!v.doc_id.empty()) j["doc_id"] = v.doc_id;
}
void from_json(const nlohmann::json& j, SignalSubject& v) {
  v.url = j.value("url", "");
  v.doc_id = j.value("doc_id", "");
}

void to_json(nlohmann::json& j, const PreferenceSignal& v) {
  j = {{"id", v.id()},
       {"subject", v.subject},
       {"kind", to_string(v.kind)},
       {"source", v.source},
       {"observed_at", v.observed_at},
       {"decision", to_string(v.decision)}};
  if (!v.purpose.empty()) j["purpose"] = v.purpose;
}
void from_json(const nlohmann::json& j, PreferenceSignal& v) {
  v.subject = j.at("subject").get<SignalSubject>();
  v.kind = signal_kind_from_string(j.at("kind").get<std::string>());
  v.source = j.at("source").get<std::string>();
  v.observed_at = j.at("observed_at").get<std::string>();
  v.decision = signal_decision_from_string(j.at("decision").get<std::string>());
  v.purpose = j.value("purpose", "");
}

void to_json(nlohmann::json& j, const SyntheticOrigin& v) {
  j = {{"generator_model_name", v.generator_model_name},
       {"prompt_reference", v.prompt_reference},
       {"seed_data_reference", v.seed_data_reference}};
}
void from_json(const nlohmann::json& j, SyntheticOrigin& v) {
  v.generator_model_name = j.at("generator_model_name").get<std::string>();
  v.prompt_reference = j.at("prompt_reference").get<std::string>();
  v.seed_data_reference = j.at("seed_data_reference").get<std::string>();
}

void to_json(nlohmann::json& j, const ProvenanceRecord& v) {
  j = {{"source_url", v.source_url},
       {"crawl_date", v.crawl_date},
       {"http_headers", headers_to_json(v.http_headers)},
       {"html_metadata", headers_to_json(v.html_metadata)},
       {"acquisition_method", to_string(v.acquisition_method)},
       {"pipeline_config_hash", v.pipeline_config_hash}};
  if (v.synthetic) j["synthetic"] = *v.synthetic;
}
void from_json(const nlohmann::json& j, ProvenanceRecord& v) {
  v.source_url = j.at("source_url").get<std::string>();
  v.crawl_date = j.at("crawl_date").get<std::string>();
  v.http_headers = headers_from_json(j.at("http_headers"));
  v.html_metadata = headers_from_json(j.at("html_metadata"));
  v.acquisition_method =
      acquisition_method_from_string(j.at("acquisition_method").get<std::string>());
  v.pipeline_config_hash = j.at("pipeline_config_hash").get<std::string>();
  if (j.contains("synthetic")) v.synthetic = j.at("synthetic").get<SyntheticOrigin>();
  else v.synthetic.reset();
}

void to_json(nlohmann::json& j, const PdStatus& v) {
  j = {{"outcome", to_string(v.outcome)}, {"basis", to_string(v.basis)}};
}
void from_json(const nlohmann::json& j, PdStatus& v) {
  v.outcome = pd_outcome_from_string(j.at("outcome").get<std::string>());
  v.basis = pd_basis_from_string(j.at("basis").get<std::string>());
}

}  // namespace curator

namespace nlohmann {

curator::DocumentRecord adl_serializer<curator::DocumentRecord>::from_json(
    const json& j) {
  curator::DocumentRecord v;
  v.doc_id = j.at("doc_id").get<std::string>();
  v.source_url = j.at("source_url").get<std::string>();
  v.text = j.at("text").get<std::string>();
  v.provenance = j.at("provenance").get<curator::ProvenanceRecord>();
  v.licenses = j.at("licenses").get<std::vector<curator::LicenseDetection>>();
  v.signals = j.at("signals").get<std::vector<curator::PreferenceSignal>>();
  v.flags = j.at("flags").get<std::set<std::string>>();
  if (j.contains("pd_classification"))
    v.pd_classification = j.at("pd_classification").get<curator::PdStatus>();
  return v;
}

void adl_serializer<curator::DocumentRecord>::to_json(
    json& j, const curator::DocumentRecord& v) {
  j = {{"doc_id", v.doc_id},
       {"source_url", v.source_url},
       {"text", v.text},
       {"provenance", v.provenance},
       {"licenses", v.licenses},
       {"signals", v.signals},
       {"flags", v.flags}};
  if (v.pd_classification) j["pd_classification"] = *v.pd_classification;
}

}  // namespace nlohmann
