#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "curator/core/jsonl.hpp"
#include "curator/scanner/stream.hpp"
#include "support/warc_fixture.hpp"

using namespace curator;
namespace fs = std::filesystem;

namespace {

// Each case gets a fresh working directory; the binary runs with it as cwd
// so relative paths (including the default run-report) land inside it.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("curator_cli_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const TempDir& dir, const std::string& args) {
  auto cmd = "cd '" + dir.path.string() + "' && '" CURATOR_BIN "' " + args +
             " > cli_out.txt 2> cli_err.txt";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(dir.path / "cli_out.txt");
  r.err = read_file(dir.path / "cli_err.txt");
  return r;
}

nlohmann::json read_json(const fs::path& p) {
  return nlohmann::json::parse(read_file(p));
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += (c == '\n');
  return n;
}

// Three detectable pages, one undetected page, one request record.
std::string fixture_archive() {
  std::vector<warcfix::Page> pages;
  pages.push_back(
      {"https://example.org/a",
       warcfix::article_body(
           "<a rel=\"license\" "
           "href=\"https://creativecommons.org/licenses/by/4.0/\">CC BY</a>")});
  pages.push_back(
      {"https://example.org/b",
       warcfix::article_body(
           "<p>https://creativecommons.org/licenses/by-sa/3.0/</p>")});
  pages.push_back(
      {"https://example.org/c",
       warcfix::article_body(
           "<a rel=\"license\" "
           "href=\"https://creativecommons.org/publicdomain/zero/1.0/\">CC0</a>")});
  pages.push_back({"https://example.org/plain", warcfix::article_body("")});
  warcfix::Page req{"https://example.org/a", "irrelevant"};
  req.record_type = "request";
  pages.push_back(req);
  return warcfix::archive(pages);
}

}  // namespace

TEST_CASE("cli: pd estimate prints the headcount figures") {
  TempDir dir("estimate");
  auto r = run_cli(dir, "pd estimate --a-title 0.9658 --a-reg 0.9720 --n 424059");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["paper_style_figure"] == "0.09%");
  CHECK(j["estimate"]["p_exact"].get<double>() ==
        doctest::Approx(0.0009576).epsilon(1e-9));
  CHECK(j["estimate"]["expected_wrong_exact"].get<double>() ==
        doctest::Approx(406.0789).epsilon(1e-4));
  CHECK(j["estimate"]["expected_wrong_paper_style"].get<double>() ==
        doctest::Approx(381.6531).epsilon(1e-6));

  // Default report path, written in the working directory.
  auto report = read_json(dir.path / "run_report.json");
  CHECK(report["subcommand"] == "pd estimate");
  CHECK(report["exit_code"] == 0);
  CHECK(report["config_hash"].get<std::string>().size() == 64);
  CHECK(report["counters"]["paper_style_figure"] == "0.09%");
  CHECK(report["config"]["parameters"]["n"] == 424059);
}

TEST_CASE("cli: scan emits detected documents and raw markup") {
  TempDir dir("scan");
  write_file(dir.path / "fixture.warc", fixture_archive());
  auto r = run_cli(dir, "scan --warc fixture.warc --out out --report scan.json");
  REQUIRE(r.code == 0);

  auto docs_text = read_file(dir.path / "out" / "documents.jsonl");
  CHECK(count_lines(docs_text) == 3);

  auto report = read_json(dir.path / "scan.json");
  CHECK(report["counters"]["records_read"] == 5);
  CHECK(report["counters"]["emitted"] == 3);
  CHECK(report["counters"]["skipped_by_type"] == 1);
  CHECK(report["counters"]["dropped_undetected"] == 1);

  // Every emitted document's markup is preserved under raw/<2hex>/<doc_id>,
  // and its stamped hash matches the run's config hash.
  auto config_hash = report["config_hash"].get<std::string>();
  for (const auto& j : read_jsonl_raw(dir.path / "out" / "documents.jsonl")) {
    auto id = j.at("doc_id").get<std::string>();
    CHECK(fs::exists(dir.path / "out" / "raw" / id.substr(0, 2) / id));
    CHECK(j.at("provenance").at("pipeline_config_hash") == config_hash);
  }
}

TEST_CASE("cli: scan accepts gzipped archives") {
  TempDir dir("scangz");
  std::vector<warcfix::Page> pages;
  pages.push_back(
      {"https://example.org/z",
       warcfix::article_body(
           "<a rel=\"license\" "
           "href=\"https://creativecommons.org/licenses/by/4.0/\">CC BY</a>")});
  write_file(dir.path / "fixture.warc.gz", warcfix::gzip_archive(pages));
  auto r = run_cli(dir, "scan --warc fixture.warc.gz --out out");
  REQUIRE(r.code == 0);
  CHECK(count_lines(read_file(dir.path / "out" / "documents.jsonl")) == 1);
}

TEST_CASE("cli: identical scans produce byte-identical outputs") {
  TempDir dir("rescan");
  write_file(dir.path / "fixture.warc", fixture_archive());
  auto args = "scan --warc fixture.warc --out out --report r.json";
  REQUIRE(run_cli(dir, args).code == 0);
  auto first = read_file(dir.path / "out" / "documents.jsonl");
  fs::remove_all(dir.path / "out");
  REQUIRE(run_cli(dir, args).code == 0);
  CHECK(read_file(dir.path / "out" / "documents.jsonl") == first);
}

TEST_CASE("cli: scan to gate to assemble to lookup round trip") {
  TempDir dir("e2e");
  write_file(dir.path / "fixture.warc", fixture_archive());
  REQUIRE(run_cli(dir, "scan --warc fixture.warc --out out").code == 0);
  REQUIRE(run_cli(dir, "gate --docs out/documents.jsonl --out gated "
                       "--as-of 2024-04-01T00:00:00Z").code == 0);
  CHECK(count_lines(read_file(dir.path / "gated" / "included.jsonl")) == 3);
  CHECK(fs::exists(dir.path / "gated" / "excluded.jsonl"));
  CHECK(fs::exists(dir.path / "gated" / "signals.jsonl"));

  auto assemble = run_cli(
      dir,
      "assemble --store store --label v1 --docs gated/included.jsonl "
      "--raw out/raw --attest-open-access --attest-replicable "
      "--as-of 2024-04-02T00:00:00Z --name fixture-corpus "
      "--report asm.json");
  REQUIRE(assemble.code == 0);
  auto asm_report = read_json(dir.path / "asm.json");
  CHECK(asm_report["counters"]["documents"] == 3);
  auto release_id = asm_report["counters"]["release_id"].get<std::string>();
  CHECK(release_id.size() == 64);

  // Membership all three ways; an unknown URL is a calm "absent", exit 0.
  auto present = run_cli(dir, "lookup --store store --release v1 "
                              "--url https://example.org/a");
  REQUIRE(present.code == 0);
  CHECK(nlohmann::json::parse(present.out)["state"] == "present");

  auto absent = run_cli(dir, "lookup --store store --release v1 "
                             "--url https://never-seen.example/");
  REQUIRE(absent.code == 0);
  CHECK(nlohmann::json::parse(absent.out)["state"] == "absent");

  auto doc_id = nlohmann::json::parse(present.out)["doc_id"].get<std::string>();
  auto removed = run_cli(dir, "remove --store store --doc " + doc_id +
                              " --reason license-dispute");
  REQUIRE(removed.code == 0);
  auto after = run_cli(dir, "lookup --store store --release v1 --doc " + doc_id);
  REQUIRE(after.code == 0);
  auto answer = nlohmann::json::parse(after.out);
  CHECK(answer["state"] == "removed");
  CHECK(answer["reason"] == "license-dispute");

  // Datasheet and metadata render for the sealed release.
  auto ds = run_cli(dir, "datasheet --store store --release v1");
  REQUIRE(ds.code == 0);
  CHECK(ds.out.find("# Datasheet: fixture-corpus v1") != std::string::npos);
  auto md = run_cli(dir, "metadata --store store --release " + release_id);
  REQUIRE(md.code == 0);
  CHECK(nlohmann::json::parse(md.out)["name"] == "fixture-corpus");
}

TEST_CASE("cli: audit flags tampering and exits nonzero") {
  TempDir dir("audit");
  write_file(dir.path / "fixture.warc", fixture_archive());
  REQUIRE(run_cli(dir, "scan --warc fixture.warc --out out").code == 0);
  REQUIRE(run_cli(dir, "gate --docs out/documents.jsonl --out gated").code == 0);
  REQUIRE(run_cli(dir, "assemble --store store --label v1 "
                       "--docs gated/included.jsonl --raw out/raw").code == 0);

  auto clean = run_cli(dir, "audit --store store");
  REQUIRE(clean.code == 0);
  CHECK(nlohmann::json::parse(clean.out)["ok"] == true);

  // Flip one byte inside a sealed manifest.
  fs::path manifest;
  for (const auto& entry :
       fs::directory_iterator(dir.path / "store" / "manifests")) {
    if (entry.path().extension() == ".json") manifest = entry.path();
  }
  REQUIRE(!manifest.empty());
  auto bytes = read_file(manifest);
  bytes[bytes.size() / 2] ^= 0x01;
  write_file(manifest, bytes);

  auto tampered = run_cli(dir, "audit --store store");
  CHECK(tampered.code == 1);
  auto report = nlohmann::json::parse(tampered.out);
  CHECK(report["ok"] == false);
  CHECK(!report["violations"].empty());
}

TEST_CASE("cli: CURATOR_STORE supplies the store path") {
  TempDir dir("envstore");
  setenv("CURATOR_STORE", (dir.path / "store").c_str(), 1);
  auto r = run_cli(dir, "audit");
  unsetenv("CURATOR_STORE");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["releases_checked"] == 0);
}

TEST_CASE("cli: exit codes separate validation from I/O failures") {
  TempDir dir("exits");

  CHECK(run_cli(dir, "").code == 1);                 // no subcommand
  CHECK(run_cli(dir, "--help").code == 0);
  CHECK(run_cli(dir, "scan --nope").code == 1);      // unknown flag
  CHECK(run_cli(dir, "scan --warc missing.warc --out o").code == 1);
  CHECK(run_cli(dir, "pd estimate --a-title 2 --a-reg 0.9 --n 5").code == 1);
  CHECK(run_cli(dir, "remove --store s --doc d --reason bogus").code == 1);
  CHECK(run_cli(dir, "lookup --store s --release v1 --url x --doc y").code == 1);

  // Present flags but a file that fails mid-run: I/O, exit 2.
  auto io = run_cli(dir, "gate --docs missing.jsonl --out g --report io.json");
  CHECK(io.code == 2);
  CHECK(!io.err.empty());

  // The run report is still written on failure and records the error.
  auto report = read_json(dir.path / "io.json");
  CHECK(report["exit_code"] == 2);
  CHECK(report["subcommand"] == "gate");
  CHECK(!report["error"].get<std::string>().empty());
}

TEST_CASE("cli: config file fills defaults but flags win") {
  TempDir dir("config");
  write_file(dir.path / "fixture.warc", fixture_archive());
  write_file(dir.path / "cfg.ini", "[scan]\nthreads=2\n");

  auto threads_of = [&](const std::string& args) {
    REQUIRE(run_cli(dir, args).code == 0);
    return read_json(dir.path / "r.json")["config"]["parameters"]["threads"]
        .get<unsigned>();
  };
  CHECK(threads_of("scan --warc fixture.warc --out o1 --report r.json") == 1);
  CHECK(threads_of("scan --config cfg.ini --warc fixture.warc --out o2 "
                   "--report r.json") == 2);
  CHECK(threads_of("scan --config cfg.ini --threads 1 --warc fixture.warc "
                   "--out o3 --report r.json") == 1);
}
