#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "curator/core/error.hpp"
#include "curator/core/hash.hpp"
#include "curator/core/jsonl.hpp"
#include "curator/core/strings.hpp"
#include "curator/core/types.hpp"
#include "curator/gate/gate.hpp"
#include "curator/gate/optout.hpp"
#include "curator/gate/robots.hpp"
#include "curator/pd/analyze.hpp"
#include "curator/pd/classify.hpp"
#include "curator/pd/ingest.hpp"
#include "curator/pd/match.hpp"
#include "curator/pd/types.hpp"
#include "curator/release/audit.hpp"
#include "curator/release/datasheet.hpp"
#include "curator/release/metadata.hpp"
#include "curator/release/store.hpp"
#include "curator/release/types.hpp"
#include "curator/scanner/quality.hpp"
#include "curator/scanner/scan.hpp"

namespace fs = std::filesystem;
using namespace curator;

namespace {

// The effective, fully resolved parameter set of one run (defaults, config
// file, and flags merged). Serialized canonically — nlohmann keeps keys
// sorted — so its hash is stable; that hash is the pipeline_config_hash
// stamped into provenance records and release manifests. Execution knobs
// (thread counts) are recorded but excluded from the hash: they cannot
// change canonical output, so runs differing only in parallelism stay
// byte-identical.
struct RunConfig {
  std::string subcommand;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json execution = nlohmann::json::object();

  nlohmann::json json() const {
    return {{"subcommand", subcommand},
            {"parameters", parameters},
            {"execution", execution}};
  }
  std::string hash() const {
    return sha256_hex(
        nlohmann::json{{"subcommand", subcommand}, {"parameters", parameters}}
            .dump());
  }
};

// Accumulated by each handler; the run report is assembled from it.
struct RunContext {
  RunConfig config;
  std::string config_hash;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  nlohmann::json counters = nlohmann::json::object();
  int exit_code = 0;  // handlers may raise this without throwing (audit)
};

void set_config(RunContext& ctx, std::string subcommand, nlohmann::json params) {
  ctx.config = RunConfig{std::move(subcommand), std::move(params)};
  ctx.config_hash = ctx.config.hash();
}

// Wall-clock timestamps live only here, never in hashed artifacts, so
// identical runs stay byte-identical everywhere but the report.
void write_run_report(const fs::path& path, const RunContext& ctx,
                      const std::string& subcommand,
                      const std::string& started_at, int exit_code,
                      const std::string& error) {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["started_at"] = started_at;
  j["finished_at"] = now_utc_iso();
  j["config"] = ctx.config.json();
  j["config_hash"] = ctx.config_hash;
  j["inputs"] = ctx.inputs;
  j["outputs"] = ctx.outputs;
  j["counters"] = ctx.counters;
  j["exit_code"] = exit_code;
  if (!error.empty()) j["error"] = error;
  write_file(path, j.dump(2) + "\n");
}

// Validation failures exit 1; anything that went wrong talking to the
// filesystem or a byte stream exits 2.
int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::Stream:
      return 2;
    default:
      return 1;
  }
}

// Advisory flock on <store>/.lock: exclusive for mutating subcommands,
// shared for readers, released when the process exits. Readers may run
// concurrently with each other but never with a writer.
class StoreLock {
 public:
  StoreLock(const fs::path& store_root, bool exclusive) {
    fs::create_directories(store_root);
    auto path = store_root / ".lock";
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw io_error("cannot open store lock: " + path.string());
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      fd_ = -1;
      throw io_error("cannot lock store: " + path.string());
    }
  }
  ~StoreLock() {
    if (fd_ >= 0) ::close(fd_);
  }
  StoreLock(const StoreLock&) = delete;
  StoreLock& operator=(const StoreLock&) = delete;

 private:
  int fd_ = -1;
};

// Raw markup mirrors the store's shard scheme so `assemble --raw` can hand
// the exact scanned bytes back for evidence verification.
fs::path raw_path(const fs::path& dir, const std::string& doc_id) {
  return dir / doc_id.substr(0, 2) / doc_id;
}

// "0.09%" from an already-truncated two-decimal percentage.
std::string pct_label(double pct) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", pct);
  return buf;
}

std::vector<DocumentRecord> load_documents(const std::string& path) {
  std::vector<DocumentRecord> docs;
  std::size_t lineno = 0;
  for (const auto& j : read_jsonl_raw(path)) {
    ++lineno;
    try {
      docs.push_back(j.get<DocumentRecord>());
    } catch (const nlohmann::json::exception& e) {
      throw schema_error(path + ": record " + std::to_string(lineno) + ": " +
                         e.what());
    }
  }
  return docs;
}

// ---------------------------------------------------------------------------
// scan

struct ScanVars {
  std::vector<std::string> warcs;
  std::string out_dir;
  std::string rules_path;
  bool keep_undetected = false;
  bool redact = false;
  unsigned threads = 1;
};

void run_scan(const ScanVars& v, RunContext& ctx) {
  QualityConfig quality = QualityConfig::defaults();
  if (!v.rules_path.empty()) {
    try {
      quality = nlohmann::json::parse(read_file(v.rules_path)).get<QualityConfig>();
    } catch (const nlohmann::json::exception& e) {
      throw schema_error(v.rules_path + ": " + e.what());
    }
  }
  set_config(ctx, "scan",
             {{"warc", v.warcs},
              {"out", v.out_dir},
              {"rules", quality},
              {"keep_undetected", v.keep_undetected},
              {"redact", v.redact},
              {"threads", v.threads}});
  ctx.inputs = v.warcs;

  fs::path out_dir = v.out_dir;
  fs::path raw_dir = out_dir / "raw";
  fs::create_directories(raw_dir);
  fs::path docs_path = out_dir / "documents.jsonl";
  std::ofstream docs_out(docs_path, std::ios::binary);
  if (!docs_out) throw io_error("cannot open for writing: " + docs_path.string());

  ScanConfig config;
  config.keep_undetected = v.keep_undetected;
  config.redact = v.redact;
  config.quality = quality;
  config.pipeline_config_hash = ctx.config_hash;
  config.threads = v.threads;

  std::vector<fs::path> paths(v.warcs.begin(), v.warcs.end());
  ScanReport report =
      scan_warc_files(paths, config, [&](DocumentRecord&& doc, std::string&& markup) {
        docs_out << jsonl_line(nlohmann::json(doc));
        auto rp = raw_path(raw_dir, doc.doc_id);
        fs::create_directories(rp.parent_path());
        write_file(rp, markup);
      });
  docs_out.flush();
  if (!docs_out) throw io_error("write failed: " + docs_path.string());

  ctx.counters = report;
  ctx.outputs = {docs_path.string(), raw_dir.string()};
  std::cout << "emitted " << report.emitted << " documents ("
            << report.records_read << " records read) -> " << docs_path.string()
            << "\n";
}

// ---------------------------------------------------------------------------
// gate

struct GateVars {
  std::string docs_path;
  std::string out_dir;
  std::string robots_path;
  std::vector<std::string> optout_paths;
  std::string agent = "*";
  std::string as_of;
};

void run_gate(const GateVars& v, RunContext& ctx) {
  set_config(ctx, "gate",
             {{"docs", v.docs_path},
              {"out", v.out_dir},
              {"robots", v.robots_path},
              {"optout", v.optout_paths},
              {"agent", v.agent},
              {"as_of", v.as_of}});
  ctx.inputs.push_back(v.docs_path);
  if (!v.robots_path.empty()) ctx.inputs.push_back(v.robots_path);
  for (const auto& p : v.optout_paths) ctx.inputs.push_back(p);

  auto docs = load_documents(v.docs_path);
  std::map<std::string, RobotsPolicy> policies;
  if (!v.robots_path.empty()) policies = load_robots_snapshots(v.robots_path);
  std::vector<OptoutList> lists;
  for (const auto& p : v.optout_paths) lists.push_back(load_optout_list(p));

  GateConfig config{v.agent, v.as_of};
  GateOutcome outcome = gate_documents(docs, policies, lists, config);

  fs::path out_dir = v.out_dir;
  fs::create_directories(out_dir);
  write_jsonl(out_dir / "included.jsonl", outcome.included);
  write_jsonl(out_dir / "excluded.jsonl", outcome.excluded);
  write_jsonl(out_dir / "signals.jsonl", outcome.signals);

  ctx.counters = outcome.report;
  nlohmann::json malformed = nlohmann::json::array();
  for (const auto& list : lists) {
    for (const auto& entry : list.rejected) {
      malformed.push_back({{"list", list.source_id},
                           {"line", entry.line},
                           {"reason", entry.reason}});
    }
  }
  ctx.counters["malformed"] = malformed;
  for (const char* name : {"included.jsonl", "excluded.jsonl", "signals.jsonl"}) {
    ctx.outputs.push_back((out_dir / name).string());
  }
  std::cout << "gated " << outcome.report.docs_in << " documents: "
            << outcome.report.included << " included, "
            << outcome.excluded.size() << " excluded\n";
}

// ---------------------------------------------------------------------------
// pd

struct PdCorpusVars {
  std::string regs_path;
  std::string rens_path;
  std::string out_dir;
  MatchConfig match;
  RulesConfig rules;
};

struct Ingested {
  std::vector<CopyrightRecord> registrations;
  std::vector<RenewalRecord> renewals;
};

Ingested ingest_corpus(const PdCorpusVars& v, RunContext& ctx) {
  fs::create_directories(v.out_dir);
  auto [regs, reg_report] = ingest_registrations(
      v.regs_path, (fs::path(v.out_dir) / "registrations.rejects.jsonl").string());
  auto [rens, ren_report] = ingest_renewals(
      v.rens_path, (fs::path(v.out_dir) / "renewals.rejects.jsonl").string());
  ctx.counters["ingest"] = {{"registrations", reg_report}, {"renewals", ren_report}};
  if (!reg_report.reject_path.empty()) ctx.outputs.push_back(reg_report.reject_path);
  if (!ren_report.reject_path.empty()) ctx.outputs.push_back(ren_report.reject_path);
  return {std::move(regs), std::move(rens)};
}

nlohmann::json match_params(const PdCorpusVars& v) {
  return {{"registrations", v.regs_path},
          {"renewals", v.rens_path},
          {"out", v.out_dir},
          {"theta", v.match.theta},
          {"delta", v.match.delta},
          {"window_lo", v.match.window_lo},
          {"window_hi", v.match.window_hi},
          {"threads", v.match.threads}};
}

void run_pd_match(const PdCorpusVars& v, RunContext& ctx) {
  set_config(ctx, "pd match", match_params(v));
  ctx.inputs = {v.regs_path, v.rens_path};

  auto corpus = ingest_corpus(v, ctx);
  auto per_reg = match_renewals(corpus.registrations, corpus.renewals, v.match);

  fs::path out_path = fs::path(v.out_dir) / "matches.jsonl";
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + out_path.string());
  std::uint64_t links = 0, confirmed = 0, matched_regs = 0;
  for (std::size_t i = 0; i < per_reg.size(); ++i) {
    nlohmann::json row;
    row["reg_id"] = corpus.registrations[i].reg_id;
    row["title"] = corpus.registrations[i].title;
    auto arr = nlohmann::json::array();
    for (const auto& m : per_reg[i]) {
      nlohmann::json jm = m;
      jm["renewal_id"] = corpus.renewals[m.ren_index].renewal_id;
      jm["renewal_date"] = corpus.renewals[m.ren_index].renewal_date;
      arr.push_back(std::move(jm));
      ++links;
      if (m.confirmed) ++confirmed;
    }
    if (!per_reg[i].empty()) ++matched_regs;
    row["matches"] = std::move(arr);
    out << jsonl_line(row);
  }
  out.flush();
  if (!out) throw io_error("write failed: " + out_path.string());

  ctx.counters["registrations"] = corpus.registrations.size();
  ctx.counters["renewals"] = corpus.renewals.size();
  ctx.counters["matched_registrations"] = matched_regs;
  ctx.counters["links"] = links;
  ctx.counters["confirmed_links"] = confirmed;
  ctx.outputs.push_back(out_path.string());
  std::cout << "matched " << matched_regs << " of " << corpus.registrations.size()
            << " registrations (" << confirmed << " confirmed links) -> "
            << out_path.string() << "\n";
}

void run_pd_classify(const PdCorpusVars& v, RunContext& ctx) {
  auto params = match_params(v);
  params["pre_cutoff"] = v.rules.pre_cutoff;
  params["renewal_lo"] = v.rules.renewal_lo;
  params["renewal_hi"] = v.rules.renewal_hi;
  set_config(ctx, "pd classify", params);
  ctx.inputs = {v.regs_path, v.rens_path};

  auto corpus = ingest_corpus(v, ctx);
  auto works = classify_corpus(corpus.registrations, corpus.renewals, v.match,
                               v.rules);

  fs::path out_path = fs::path(v.out_dir) / "classified.jsonl";
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + out_path.string());
  for (const auto& work : works) {
    out << jsonl_line(classified_work_json(work, corpus.renewals));
  }
  out.flush();
  if (!out) throw io_error("write failed: " + out_path.string());

  auto summary = summarize(works);
  ctx.counters["summary"] = summary;
  ctx.outputs.push_back(out_path.string());
  std::cout << "classified " << summary.total << " works -> " << out_path.string()
            << "\n";
  for (const auto& [outcome, n] : summary.by_outcome) {
    std::cout << "  " << outcome << ": " << n << "\n";
  }
}

struct EstimateVars {
  double a_title = 1.0;
  double a_reg = 1.0;
  double a_author = 1.0;
  double a_date = 1.0;
  std::uint64_t n = 0;
};

void run_pd_estimate(const EstimateVars& v, RunContext& ctx) {
  set_config(ctx, "pd estimate",
             {{"a_title", v.a_title},
              {"a_reg", v.a_reg},
              {"a_author", v.a_author},
              {"a_date", v.a_date},
              {"n", v.n}});

  FieldAccuracyProfile profile{v.a_title, v.a_reg, v.a_author, v.a_date, v.n};
  auto estimate = estimate_misclassification(profile);
  ctx.counters["estimate"] = estimate;
  ctx.counters["paper_style_figure"] = pct_label(estimate.p_rounded_pct);
  std::cout << ctx.counters.dump(2) << "\n";
}

struct EvaluateVars {
  std::string extracted_path;
  std::string truth_path;
};

void run_pd_evaluate(const EvaluateVars& v, RunContext& ctx) {
  set_config(ctx, "pd evaluate-extractor",
             {{"extracted", v.extracted_path}, {"truth", v.truth_path}});
  ctx.inputs = {v.extracted_path, v.truth_path};

  // Accuracy is positional, so a dropped row would silently misalign the
  // comparison; malformed rows are a hard error here, not a reject file.
  auto [extracted, ext_report] = ingest_registrations(v.extracted_path);
  auto [truth, truth_report] = ingest_registrations(v.truth_path);
  if (ext_report.rejected > 0 || truth_report.rejected > 0) {
    throw invalid_argument(
        "malformed rows: " + std::to_string(ext_report.rejected) + " in " +
        v.extracted_path + ", " + std::to_string(truth_report.rejected) +
        " in " + v.truth_path);
  }

  auto profile = evaluate_extractor(extracted, truth);
  auto estimate = estimate_misclassification(profile);
  ctx.counters["accuracy"] = profile;
  ctx.counters["estimate"] = estimate;
  ctx.counters["paper_style_figure"] = pct_label(estimate.p_rounded_pct);
  std::cout << ctx.counters.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// assemble

struct AssembleVars {
  std::string store_dir;
  std::string docs_path;
  std::string raw_dir;
  std::string signals_path;
  std::string label;
  std::string parent;
  std::string dataset_license = "CC0-1.0";
  std::string as_of;
  std::string datasheet_path;
  std::string name;
  std::string intended_uses;
  std::string removal_instructions;
  bool attest_open_access = false;
  bool attest_replicable = false;
};

void run_assemble(const AssembleVars& v, RunContext& ctx) {
  DatasheetInputs datasheet;
  if (!v.datasheet_path.empty()) {
    try {
      datasheet =
          nlohmann::json::parse(read_file(v.datasheet_path)).get<DatasheetInputs>();
    } catch (const nlohmann::json::exception& e) {
      throw schema_error(v.datasheet_path + ": " + e.what());
    }
  }
  if (!v.name.empty()) datasheet.dataset_name = v.name;
  if (!v.intended_uses.empty()) datasheet.intended_uses = v.intended_uses;
  if (!v.removal_instructions.empty()) {
    datasheet.removal_instructions = v.removal_instructions;
  }

  set_config(ctx, "assemble",
             {{"store", v.store_dir},
              {"docs", v.docs_path},
              {"raw", v.raw_dir},
              {"signals", v.signals_path},
              {"label", v.label},
              {"parent", v.parent},
              {"dataset_license", v.dataset_license},
              {"as_of", v.as_of},
              {"attest_open_access", v.attest_open_access},
              {"attest_replicable", v.attest_replicable},
              {"datasheet", datasheet}});
  if (!v.docs_path.empty()) ctx.inputs.push_back(v.docs_path);
  if (!v.signals_path.empty()) ctx.inputs.push_back(v.signals_path);

  if (v.docs_path.empty() && v.parent.empty()) {
    throw invalid_argument("either --docs or --parent is required");
  }

  StoreLock lock(v.store_dir, /*exclusive=*/true);
  Store store(v.store_dir);

  AssembleRequest request;
  request.label = v.label;
  request.parent = v.parent;
  request.pipeline_config_hash = ctx.config_hash;
  request.attested_open_access = v.attest_open_access;
  request.attested_replicable = v.attest_replicable;
  request.dataset_license = v.dataset_license;
  request.as_of = v.as_of;
  request.datasheet = datasheet;

  std::size_t ingested = 0;
  if (!v.docs_path.empty()) {
    for (auto& doc : load_documents(v.docs_path)) {
      std::string markup;
      if (!v.raw_dir.empty()) {
        auto rp = raw_path(v.raw_dir, doc.doc_id);
        if (fs::exists(rp)) markup = read_file(rp);
      }
      store.put_document(doc, markup);
      request.doc_ids.push_back(doc.doc_id);
      ++ingested;
    }
  } else {
    auto parent = store.find_release(v.parent);
    if (!parent) throw not_found("unknown parent release: " + v.parent);
    auto plan = store.plan_from_release(*parent);
    request.doc_ids = std::move(plan.doc_ids);
    request.tombstones_applied = std::move(plan.tombstones_applied);
  }

  std::size_t signals_appended = 0;
  if (!v.signals_path.empty()) {
    signals_appended = store.append_signals(
        read_jsonl<PreferenceSignal>(v.signals_path));
  }

  auto manifest = store.assemble_release(request);

  ctx.counters["release_id"] = manifest.release_id;
  ctx.counters["label"] = manifest.label;
  ctx.counters["documents"] = manifest.doc_ids.size();
  ctx.counters["documents_ingested"] = ingested;
  ctx.counters["signals_appended"] = signals_appended;
  ctx.counters["tombstones_applied"] = manifest.tombstones_applied.size();
  ctx.counters["openness"] = manifest.assessment;
  auto manifest_path = store.layout().manifest(manifest.release_id).string();
  ctx.outputs = {manifest_path, (fs::path(v.store_dir) / manifest.datasheet_ref).string()};
  std::cout << "sealed release " << manifest.release_id << " (" << manifest.label
            << "): " << manifest.doc_ids.size() << " documents, tier "
            << to_string(manifest.assessment.tier) << "\n";
}

// ---------------------------------------------------------------------------
// remove

struct RemoveVars {
  std::string store_dir;
  std::string doc_id;
  std::string reason;
  std::string request_ref;
  std::string as_of;
};

void run_remove(const RemoveVars& v, RunContext& ctx) {
  set_config(ctx, "remove",
             {{"store", v.store_dir},
              {"doc", v.doc_id},
              {"reason", v.reason},
              {"request_ref", v.request_ref},
              {"as_of", v.as_of}});

  StoreLock lock(v.store_dir, /*exclusive=*/true);
  Store store(v.store_dir);
  auto tombstone = store.remove_document(
      v.doc_id, tombstone_reason_from_string(v.reason), v.request_ref, v.as_of);
  ctx.counters["tombstone"] = tombstone;
  std::cout << nlohmann::json(tombstone).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// lookup

struct LookupVars {
  std::string store_dir;
  std::string release;
  std::string url;
  std::string doc_id;
  std::string text_file;
};

void run_lookup(const LookupVars& v, RunContext& ctx) {
  set_config(ctx, "lookup",
             {{"store", v.store_dir},
              {"release", v.release},
              {"url", v.url},
              {"doc", v.doc_id},
              {"text_file", v.text_file}});

  int selectors = (!v.url.empty()) + (!v.doc_id.empty()) + (!v.text_file.empty());
  if (selectors != 1) {
    throw invalid_argument("exactly one of --url, --doc, --text-file is required");
  }

  StoreLock lock(v.store_dir, /*exclusive=*/false);
  Store store(v.store_dir);
  auto release = store.find_release(v.release);
  if (!release) throw not_found("unknown release: " + v.release);

  MembershipAnswer answer;
  if (!v.url.empty()) {
    answer = store.lookup_url(v.url, *release);
  } else if (!v.doc_id.empty()) {
    answer = store.lookup_doc_id(v.doc_id, *release);
  } else {
    ctx.inputs.push_back(v.text_file);
    answer = store.lookup_text(read_file(v.text_file), *release);
  }
  ctx.counters["answer"] = answer;
  std::cout << nlohmann::json(answer).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// datasheet / metadata

struct EmitVars {
  std::string store_dir;
  std::string release;
  std::string out_path;
};

void run_datasheet(const EmitVars& v, RunContext& ctx) {
  set_config(ctx, "datasheet",
             {{"store", v.store_dir}, {"release", v.release}, {"out", v.out_path}});
  StoreLock lock(v.store_dir, /*exclusive=*/false);
  Store store(v.store_dir);
  std::string md = emit_datasheet(store, v.release);
  ctx.counters["bytes"] = md.size();
  if (v.out_path.empty()) {
    std::cout << md;
  } else {
    write_file(v.out_path, md);
    ctx.outputs.push_back(v.out_path);
  }
}

void run_metadata(const EmitVars& v, RunContext& ctx) {
  set_config(ctx, "metadata",
             {{"store", v.store_dir}, {"release", v.release}, {"out", v.out_path}});
  StoreLock lock(v.store_dir, /*exclusive=*/false);
  Store store(v.store_dir);
  std::string text = emit_metadata(store, v.release).dump(2) + "\n";
  ctx.counters["bytes"] = text.size();
  if (v.out_path.empty()) {
    std::cout << text;
  } else {
    write_file(v.out_path, text);
    ctx.outputs.push_back(v.out_path);
  }
}

// ---------------------------------------------------------------------------
// audit

struct AuditVars {
  std::string store_dir;
};

void run_audit(const AuditVars& v, RunContext& ctx) {
  set_config(ctx, "audit", {{"store", v.store_dir}});
  StoreLock lock(v.store_dir, /*exclusive=*/false);
  Store store(v.store_dir);
  auto report = audit_store(store);
  ctx.counters = report;
  std::cout << nlohmann::json(report).dump(2) << "\n";
  if (!report.ok()) ctx.exit_code = 1;  // violations are report content
}

// ---------------------------------------------------------------------------
// wiring

struct PendingRun {
  std::string name;
  std::function<void(RunContext&)> fn;
};

CLI::App* make_sub(CLI::App& parent, const std::string& name,
                   const std::string& desc) {
  auto* sub = parent.add_subcommand(name, desc);
  sub->fallthrough();  // --report / --config may follow the subcommand
  return sub;
}

CLI::Option* store_option(CLI::App* sub, std::string& var) {
  return sub->add_option("--store", var, "release store directory")
      ->envname("CURATOR_STORE")
      ->required();
}

void register_scan(CLI::App& app, PendingRun& pending) {
  auto vars = std::make_shared<ScanVars>();
  auto* sub = make_sub(app, "scan", "scan web archives for licensed documents");
  sub->add_option("--warc", vars->warcs, "WARC file (repeatable, plain or gzip)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", vars->out_dir, "output directory")->required();
  sub->add_option("--rules", vars->rules_path, "quality rule JSON file")
      ->check(CLI::ExistingFile);
  sub->add_flag("--keep-undetected", vars->keep_undetected,
                "emit documents with no license detection");
  sub->add_flag("--redact", vars->redact, "mask detected sensitive spans");
  sub->add_option("--threads", vars->threads, "record-level parallelism")
      ->check(CLI::Range(1u, 64u));
  sub->callback([vars, &pending] {
    pending = {"scan", [vars](RunContext& ctx) { run_scan(*vars, ctx); }};
  });
}

void register_gate(CLI::App& app, PendingRun& pending) {
  auto vars = std::make_shared<GateVars>();
  auto* sub = make_sub(app, "gate",
                       "apply robots snapshots and opt-out lists to documents");
  sub->add_option("--docs", vars->docs_path, "documents.jsonl from scan")
      ->required();
  sub->add_option("--out", vars->out_dir, "output directory")->required();
  sub->add_option("--robots", vars->robots_path,
                  "robots snapshot JSONL (origin, fetched_at, body)");
  sub->add_option("--optout", vars->optout_paths,
                  "opt-out list file (repeatable, applied in order)");
  sub->add_option("--agent", vars->agent, "user agent evaluated against robots")
      ->capture_default_str();
  sub->add_option("--as-of", vars->as_of,
                  "timestamp stamped into every signal's observed_at");
  sub->callback([vars, &pending] {
    pending = {"gate", [vars](RunContext& ctx) { run_gate(*vars, ctx); }};
  });
}

void add_match_options(CLI::App* sub, PdCorpusVars& vars) {
  sub->add_option("--registrations", vars.regs_path,
                  "registration records (CSV or JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--renewals", vars.rens_path, "renewal records (CSV or JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", vars.out_dir, "output directory")->required();
  sub->add_option("--theta", vars.match.theta, "fuzzy confirmation floor")
      ->capture_default_str();
  sub->add_option("--delta", vars.match.delta, "ambiguity band above theta")
      ->capture_default_str();
  sub->add_option("--window-lo", vars.match.window_lo,
                  "minimum renewal-minus-publication gap in years")
      ->capture_default_str();
  sub->add_option("--window-hi", vars.match.window_hi,
                  "maximum renewal-minus-publication gap in years")
      ->capture_default_str();
  sub->add_option("--threads", vars.match.threads, "matcher parallelism")
      ->check(CLI::Range(1u, 64u));
}

void register_pd(CLI::App& app, PendingRun& pending) {
  auto* pd = make_sub(app, "pd", "public-domain determination tools");
  pd->require_subcommand(1);

  auto mvars = std::make_shared<PdCorpusVars>();
  auto* match = make_sub(*pd, "match", "link registrations to renewal records");
  add_match_options(match, *mvars);
  match->callback([mvars, &pending] {
    pending = {"pd match", [mvars](RunContext& ctx) { run_pd_match(*mvars, ctx); }};
  });

  auto cvars = std::make_shared<PdCorpusVars>();
  auto* classify = make_sub(*pd, "classify",
                            "classify works as public domain, excluded, or triage");
  add_match_options(classify, *cvars);
  classify->add_option("--pre-cutoff", cvars->rules.pre_cutoff,
                       "published this year or earlier is public domain")
      ->capture_default_str();
  classify->add_option("--renewal-lo", cvars->rules.renewal_lo,
                       "first publication year needing a renewal")
      ->capture_default_str();
  classify->add_option("--renewal-hi", cvars->rules.renewal_hi,
                       "last publication year needing a renewal")
      ->capture_default_str();
  classify->callback([cvars, &pending] {
    pending = {"pd classify",
               [cvars](RunContext& ctx) { run_pd_classify(*cvars, ctx); }};
  });

  auto evars = std::make_shared<EstimateVars>();
  auto* estimate = make_sub(*pd, "estimate",
                            "misclassification headcount from field accuracies");
  estimate->add_option("--a-title", evars->a_title, "title extraction accuracy")
      ->required();
  estimate->add_option("--a-reg", evars->a_reg,
                       "registration-number extraction accuracy")
      ->required();
  estimate->add_option("--a-author", evars->a_author, "author extraction accuracy")
      ->capture_default_str();
  estimate->add_option("--a-date", evars->a_date, "date extraction accuracy")
      ->capture_default_str();
  estimate->add_option("--n", evars->n, "corpus size in works")->required();
  estimate->callback([evars, &pending] {
    pending = {"pd estimate",
               [evars](RunContext& ctx) { run_pd_estimate(*evars, ctx); }};
  });

  auto xvars = std::make_shared<EvaluateVars>();
  auto* evaluate = make_sub(*pd, "evaluate-extractor",
                            "per-field extractor accuracy against ground truth");
  evaluate->add_option("--extracted", xvars->extracted_path,
                       "extractor output (CSV or JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--truth", xvars->truth_path,
                       "ground-truth records (CSV or JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->callback([xvars, &pending] {
    pending = {"pd evaluate-extractor",
               [xvars](RunContext& ctx) { run_pd_evaluate(*xvars, ctx); }};
  });
}

void register_assemble(CLI::App& app, PendingRun& pending) {
  auto vars = std::make_shared<AssembleVars>();
  auto* sub = make_sub(app, "assemble", "seal gated documents into a release");
  store_option(sub, vars->store_dir);
  sub->add_option("--label", vars->label, "version label, unique in the store")
      ->required();
  sub->add_option("--docs", vars->docs_path,
                  "included.jsonl from gate; omit to derive from --parent");
  sub->add_option("--raw", vars->raw_dir, "raw markup directory from scan");
  sub->add_option("--signals", vars->signals_path, "signals.jsonl from gate");
  sub->add_option("--parent", vars->parent, "parent release id or label");
  sub->add_option("--dataset-license", vars->dataset_license,
                  "license on the dataset arrangement")
      ->capture_default_str();
  sub->add_option("--as-of", vars->as_of, "pin the manifest created_at timestamp");
  sub->add_option("--datasheet", vars->datasheet_path,
                  "datasheet context JSON (name, uses, filters, stage counts)")
      ->check(CLI::ExistingFile);
  sub->add_option("--name", vars->name, "dataset name on the datasheet");
  sub->add_option("--intended-uses", vars->intended_uses,
                  "intended-uses text on the datasheet");
  sub->add_option("--removal-instructions", vars->removal_instructions,
                  "removal-request instructions on the datasheet");
  sub->add_flag("--attest-open-access", vars->attest_open_access,
                "operator attests the release is downloadable at no cost");
  sub->add_flag("--attest-replicable", vars->attest_replicable,
                "operator attests a third party could rebuild the dataset");
  sub->callback([vars, &pending] {
    pending = {"assemble", [vars](RunContext& ctx) { run_assemble(*vars, ctx); }};
  });
}

void register_remove(CLI::App& app, PendingRun& pending) {
  auto vars = std::make_shared<RemoveVars>();
  auto* sub = make_sub(app, "remove",
                       "tombstone a document and delete its content");
  store_option(sub, vars->store_dir);
  sub->add_option("--doc", vars->doc_id, "doc_id to remove")->required();
  sub->add_option("--reason", vars->reason, "removal reason")
      ->required()
      ->check(CLI::IsMember(
          {"optout", "license-dispute", "sensitive-content", "other"}));
  sub->add_option("--request-ref", vars->request_ref,
                  "preference-signal id backing the request");
  sub->add_option("--as-of", vars->as_of, "pin the tombstone created_at timestamp");
  sub->callback([vars, &pending] {
    pending = {"remove", [vars](RunContext& ctx) { run_remove(*vars, ctx); }};
  });
}

void register_lookup(CLI::App& app, PendingRun& pending) {
  auto vars = std::make_shared<LookupVars>();
  auto* sub = make_sub(app, "lookup",
                       "answer whether content is in a release");
  store_option(sub, vars->store_dir);
  sub->add_option("--release", vars->release, "release id or label")->required();
  sub->add_option("--url", vars->url, "source URL to look up");
  sub->add_option("--doc", vars->doc_id, "doc_id to look up");
  sub->add_option("--text-file", vars->text_file,
                  "file whose raw text to look up")
      ->check(CLI::ExistingFile);
  sub->callback([vars, &pending] {
    pending = {"lookup", [vars](RunContext& ctx) { run_lookup(*vars, ctx); }};
  });
}

void register_emit(CLI::App& app, PendingRun& pending) {
  auto dvars = std::make_shared<EmitVars>();
  auto* datasheet = make_sub(app, "datasheet",
                             "emit the Markdown datasheet for a release");
  store_option(datasheet, dvars->store_dir);
  datasheet->add_option("--release", dvars->release, "release id or label")
      ->required();
  datasheet->add_option("--out", dvars->out_path, "write here instead of stdout");
  datasheet->callback([dvars, &pending] {
    pending = {"datasheet",
               [dvars](RunContext& ctx) { run_datasheet(*dvars, ctx); }};
  });

  auto mvars = std::make_shared<EmitVars>();
  auto* metadata = make_sub(app, "metadata",
                            "emit machine-readable release metadata JSON");
  store_option(metadata, mvars->store_dir);
  metadata->add_option("--release", mvars->release, "release id or label")
      ->required();
  metadata->add_option("--out", mvars->out_path, "write here instead of stdout");
  metadata->callback([mvars, &pending] {
    pending = {"metadata",
               [mvars](RunContext& ctx) { run_metadata(*mvars, ctx); }};
  });
}

void register_audit(CLI::App& app, PendingRun& pending) {
  auto vars = std::make_shared<AuditVars>();
  auto* sub = make_sub(app, "audit",
                       "verify every store artifact against its seals");
  store_option(sub, vars->store_dir);
  sub->callback([vars, &pending] {
    pending = {"audit", [vars](RunContext& ctx) { run_audit(*vars, ctx); }};
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curate web-archive text into governed, auditable dataset releases"};
  app.require_subcommand(1);
  std::string report_path = "run_report.json";
  app.set_config("--config", "",
                 "config file (INI/TOML; precedence: flags > file > env > defaults)");
  app.add_option("--report", report_path, "run-report JSON path")
      ->capture_default_str();

  PendingRun pending;
  register_scan(app, pending);
  register_gate(app, pending);
  register_pd(app, pending);
  register_assemble(app, pending);
  register_remove(app, pending);
  register_lookup(app, pending);
  register_emit(app, pending);
  register_audit(app, pending);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message and usage hint
    return 1;     // any argument problem is a validation error
  }

  RunContext ctx;
  std::string started_at = now_utc_iso();
  int code = 0;
  std::string error;
  try {
    pending.fn(ctx);
    code = ctx.exit_code;
  } catch (const Error& e) {
    error = e.what();
    code = exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    error = e.what();
    code = 2;
  } catch (const std::exception& e) {
    error = e.what();
    code = 1;
  }
  if (!error.empty()) std::cerr << "curator: " << error << "\n";

  try {
    write_run_report(report_path, ctx, pending.name, started_at, code, error);
  } catch (const std::exception& e) {
    std::cerr << "curator: cannot write run report: " << e.what() << "\n";
    if (code == 0) code = 2;
  }
  return code;
}
