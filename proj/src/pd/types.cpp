#include "curator/pd/types.hpp"

#include "curator/core/error.hpp"

namespace curator {

std::string to_string(RecordSource s) {
  return s == RecordSource::Structured ? "structured" : "extracted";
}

RecordSource record_source_from_string(std::string_view s) {
  if (s == "structured") return RecordSource::Structured;
  if (s == "extracted") return RecordSource::Extracted;
  throw schema_error("unknown record source: " + std::string(s));
}

std::string to_string(MatchStage s) {
  switch (s) {
    case MatchStage::RegIdExact: return "reg-id-exact";
    case MatchStage::TitleAuthorExact: return "title-author-exact";
    case MatchStage::Fuzzy: return "fuzzy";
  }
  return "fuzzy";
}

MatchStage match_stage_from_string(std::string_view s) {
  if (s == "reg-id-exact") return MatchStage::RegIdExact;
  if (s == "title-author-exact") return MatchStage::TitleAuthorExact;
  if (s == "fuzzy") return MatchStage::Fuzzy;
  throw schema_error("unknown match stage: " + std::string(s));
}

void to_json(nlohmann::json& j, const PubDate& v) {
  j = {{"year", v.year}};
  if (v.month) j["month"] = *v.month;
  if (v.day) j["day"] = *v.day;
}

void from_json(const nlohmann::json& j, PubDate& v) {
  j.at("year").get_to(v.year);
  if (j.contains("month")) v.month = j["month"].get<int>();
  if (j.contains("day")) v.day = j["day"].get<int>();
}

void to_json(nlohmann::json& j, const CopyrightRecord& v) {
  j = {{"reg_id", v.reg_id},
       {"title", v.title},
       {"author", v.author},
       {"source", to_string(v.source)},
       {"norm_reg_id", v.norm_reg_id},
       {"norm_title", v.norm_title},
       {"norm_author", v.norm_author}};
  if (v.pub_date) j["pub_date"] = *v.pub_date;
  if (!v.field_confidence.empty()) j["field_confidence"] = v.field_confidence;
}

void from_json(const nlohmann::json& j, CopyrightRecord& v) {
  j.at("reg_id").get_to(v.reg_id);
  j.at("title").get_to(v.title);
  j.at("author").get_to(v.author);
  if (j.contains("pub_date")) v.pub_date = j["pub_date"].get<PubDate>();
  v.source = j.contains("source")
                 ? record_source_from_string(j["source"].get<std::string>())
                 : RecordSource::Structured;
  if (j.contains("field_confidence")) {
    j["field_confidence"].get_to(v.field_confidence);
  }
  if (j.contains("norm_reg_id")) j["norm_reg_id"].get_to(v.norm_reg_id);
  if (j.contains("norm_title")) j["norm_title"].get_to(v.norm_title);
  if (j.contains("norm_author")) j["norm_author"].get_to(v.norm_author);
}

void to_json(nlohmann::json& j, const RenewalRecord& v) {
  j = {{"renewal_id", v.renewal_id},
       {"original_reg_id", v.original_reg_id},
       {"title", v.title},
       {"author", v.author},
       {"renewal_date", v.renewal_date},
       {"norm_reg_id", v.norm_reg_id},
       {"norm_title", v.norm_title},
       {"norm_author", v.norm_author}};
  if (v.original_pub_date) j["original_pub_date"] = *v.original_pub_date;
}

void from_json(const nlohmann::json& j, RenewalRecord& v) {
  j.at("renewal_id").get_to(v.renewal_id);
  if (j.contains("original_reg_id")) {
    j["original_reg_id"].get_to(v.original_reg_id);
  }
  j.at("title").get_to(v.title);
  j.at("author").get_to(v.author);
  j.at("renewal_date").get_to(v.renewal_date);
  if (j.contains("original_pub_date")) {
    v.original_pub_date = j["original_pub_date"].get<PubDate>();
  }
  if (j.contains("norm_reg_id")) j["norm_reg_id"].get_to(v.norm_reg_id);
  if (j.contains("norm_title")) j["norm_title"].get_to(v.norm_title);
  if (j.contains("norm_author")) j["norm_author"].get_to(v.norm_author);
}

void to_json(nlohmann::json& j, const MatchResult& v) {
  j = {{"reg_index", v.reg_index},
       {"ren_index", v.ren_index},
       {"stage", to_string(v.stage)},
       {"score", v.score},
       {"date_window_ok", v.date_window_ok},
       {"confirmed", v.confirmed}};
}

void from_json(const nlohmann::json& j, MatchResult& v) {
  j.at("reg_index").get_to(v.reg_index);
  j.at("ren_index").get_to(v.ren_index);
  v.stage = match_stage_from_string(j.at("stage").get<std::string>());
  j.at("score").get_to(v.score);
  j.at("date_window_ok").get_to(v.date_window_ok);
  j.at("confirmed").get_to(v.confirmed);
}

void to_json(nlohmann::json& j, const PdClassification& v) {
  j = {{"outcome", to_string(v.outcome)},
       {"basis", to_string(v.basis)},
       {"evidence", v.evidence}};
}

void from_json(const nlohmann::json& j, PdClassification& v) {
  v.outcome = pd_outcome_from_string(j.at("outcome").get<std::string>());
  v.basis = pd_basis_from_string(j.at("basis").get<std::string>());
  if (j.contains("evidence")) j["evidence"].get_to(v.evidence);
}

void to_json(nlohmann::json& j, const FieldAccuracyProfile& v) {
  j = {{"a_title", v.a_title},
       {"a_reg", v.a_reg},
       {"a_author", v.a_author},
       {"a_date", v.a_date},
       {"n_works", v.n_works}};
}

void from_json(const nlohmann::json& j, FieldAccuracyProfile& v) {
  j.at("a_title").get_to(v.a_title);
  j.at("a_reg").get_to(v.a_reg);
  j.at("a_author").get_to(v.a_author);
  j.at("a_date").get_to(v.a_date);
  j.at("n_works").get_to(v.n_works);
}

void to_json(nlohmann::json& j, const MatchConfig& v) {
  j = {{"theta", v.theta},
       {"delta", v.delta},
       {"window_lo", v.window_lo},
       {"window_hi", v.window_hi},
       {"threads", v.threads}};
}

void from_json(const nlohmann::json& j, MatchConfig& v) {
  if (j.contains("theta")) j["theta"].get_to(v.theta);
  if (j.contains("delta")) j["delta"].get_to(v.delta);
  if (j.contains("window_lo")) j["window_lo"].get_to(v.window_lo);
  if (j.contains("window_hi")) j["window_hi"].get_to(v.window_hi);
  if (j.contains("threads")) j["threads"].get_to(v.threads);
}

void to_json(nlohmann::json& j, const RulesConfig& v) {
  j = {{"pre_cutoff", v.pre_cutoff},
       {"renewal_lo", v.renewal_lo},
       {"renewal_hi", v.renewal_hi}};
}

void from_json(const nlohmann::json& j, RulesConfig& v) {
  if (j.contains("pre_cutoff")) j["pre_cutoff"].get_to(v.pre_cutoff);
  if (j.contains("renewal_lo")) j["renewal_lo"].get_to(v.renewal_lo);
  if (j.contains("renewal_hi")) j["renewal_hi"].get_to(v.renewal_hi);
}

}  // namespace curator
