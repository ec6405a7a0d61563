#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <random>

#include "curator/core/error.hpp"
#include "curator/core/jsonl.hpp"
#include "curator/pd/analyze.hpp"
#include "curator/pd/classify.hpp"
#include "curator/pd/ingest.hpp"
#include "curator/pd/match.hpp"
#include "curator/pd/normalize.hpp"
#include "curator/pd/similarity.hpp"
#include "curator/pd/triage.hpp"
#include "support/gen.hpp"
#include "support/pd_gen.hpp"
#include "support/pd_oracle.hpp"

using namespace curator;

namespace {

CopyrightRecord reg_of(std::string reg_id, std::string title,
                       std::string author, std::optional<int> year) {
  CopyrightRecord r;
  r.reg_id = std::move(reg_id);
  r.title = std::move(title);
  r.author = std::move(author);
  if (year) r.pub_date = PubDate{*year, {}, {}};
  return normalize_biblio(std::move(r));
}

RenewalRecord ren_of(std::string renewal_id, std::string orig_id,
                     std::string title, std::string author,
                     std::string renewal_date) {
  RenewalRecord r;
  r.renewal_id = std::move(renewal_id);
  r.original_reg_id = std::move(orig_id);
  r.title = std::move(title);
  r.author = std::move(author);
  r.renewal_date = std::move(renewal_date);
  return normalize_biblio(std::move(r));
}

std::filesystem::path tmp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "curator_pd_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("normalize: titles, authors, registration ids") {
  CHECK(normalize_title("The Mysterious Affair\xe2\x80\xa6") ==
        "mysterious affair");
  CHECK(normalize_title("The Mysterious Affair at Styles") ==
        "mysterious affair at styles");
  CHECK(normalize_title("A  Tale, of TWO Cities!!") == "tale of two cities");
  CHECK(normalize_title("An Apple") == "apple");
  CHECK(normalize_title("Caf\xc3\xa9 \xc3\x89tude") == "cafe etude");
  CHECK(normalize_title("Anchors Aweigh") == "anchors aweigh");  // not "An chors"

  CHECK(normalize_author("SMITH, John B.") == "smith, john b");
  CHECK(normalize_author("John B. Smith") == "smith, john b");
  CHECK(normalize_author("Voltaire") == "voltaire");
  CHECK(normalize_author("  Del Rio,   Maria ") == "del rio, maria");

  CHECK(normalize_reg_id("A- 123456") == "A123456");
  CHECK(normalize_reg_id("A123456") == "A123456");
  CHECK(normalize_reg_id("a.123-456") == "A123456");
  CHECK(normalize_reg_id("") == "");

  // Author and reg-id normal forms are stable under re-normalization.
  gen::Rng rng(0x90a11u);
  for (int i = 0; i < 500; ++i) {
    std::string author = pdgen::make_author(rng);
    std::string once = normalize_author(author);
    CHECK(normalize_author(once) == once);
    std::string id = gen::ascii_string(rng, 0, 12);
    std::string nid = normalize_reg_id(id);
    CHECK(normalize_reg_id(nid) == nid);
  }
}

TEST_CASE("normalize_biblio fills normalized fields, keeps originals") {
  auto reg = reg_of("A- 1", "The Big Sleep", "CHANDLER, Raymond", 1939);
  CHECK(reg.reg_id == "A- 1");
  CHECK(reg.title == "The Big Sleep");
  CHECK(reg.norm_reg_id == "A1");
  CHECK(reg.norm_title == "big sleep");
  CHECK(reg.norm_author == "chandler, raymond");

  auto ren = ren_of("R1", "a-1", "THE BIG SLEEP", "Raymond Chandler", "1967");
  CHECK(ren.norm_reg_id == "A1");
  CHECK(ren.norm_title == "big sleep");
  CHECK(ren.norm_author == "chandler, raymond");
}

TEST_CASE("similarity: edit-distance ratio") {
  CHECK(similarity("abc", "abc") == 1.0);
  CHECK(similarity("", "") == 1.0);
  CHECK(similarity("abc", "") == 0.0);
  CHECK(similarity("kitten", "sitting") == doctest::Approx(1.0 - 3.0 / 7.0));

  gen::Rng rng(0x5151u);
  for (int i = 0; i < 400; ++i) {
    std::string a = gen::word_string(rng, 0, 6);
    std::string b = gen::pick_bool(rng)
                        ? pdgen::ocr_noise(rng, a, gen::pick_int(rng, 0, 4))
                        : gen::word_string(rng, 0, 6);
    double full = similarity(a, b);
    CHECK(full == similarity(b, a));
    CHECK(full >= 0.0);
    CHECK(full <= 1.0);
    double floor_v = gen::pick_real(rng, 0.0, 1.0);
    double banded = similarity_at_least(a, b, floor_v);
    if (full >= floor_v) {
      CHECK(banded == full);
    } else {
      CHECK(banded < floor_v);
    }
  }
}

TEST_CASE("match: reg-id stage, corroboration, collisions") {
  MatchConfig cfg;
  std::vector<CopyrightRecord> regs = {
      reg_of("A123456", "The Silent River", "Mary Banks", 1950)};

  // Same id, near-identical title: confirmed at stage 1 with score 1.
  std::vector<RenewalRecord> rens = {
      ren_of("R1", "A- 123456", "The Silent Riverr", "M. Banks", "1977")};
  auto m = match_renewals(regs, rens, cfg);
  REQUIRE(m[0].size() == 1);
  CHECK(m[0][0].stage == MatchStage::RegIdExact);
  CHECK(m[0][0].score == 1.0);
  CHECK(m[0][0].confirmed);

  // Same id, unrelated title: a bare collision stays ambiguous.
  rens = {ren_of("R2", "A123456", "Mellow Harvest Rain", "Someone Else", "1977")};
  m = match_renewals(regs, rens, cfg);
  REQUIRE(m[0].size() == 1);
  CHECK(m[0][0].stage == MatchStage::RegIdExact);
  CHECK(m[0][0].score == 1.0);
  CHECK_FALSE(m[0][0].confirmed);
}

TEST_CASE("match: title-author stage needs no date window") {
  MatchConfig cfg;
  std::vector<CopyrightRecord> regs = {
      reg_of("", "The Glass Key", "HAMMETT, Dashiell", 1931)};
  std::vector<RenewalRecord> rens = {
      ren_of("R1", "", "Glass Key", "Dashiell Hammett", "1999")};  // gap 68
  auto m = match_renewals(regs, rens, cfg);
  REQUIRE(m[0].size() == 1);
  CHECK(m[0][0].stage == MatchStage::TitleAuthorExact);
  CHECK(m[0][0].confirmed);
  CHECK_FALSE(m[0][0].date_window_ok);
}

TEST_CASE("match: fuzzy confirmation, band, and ties") {
  MatchConfig cfg;  // theta 0.85, delta 0.05, window [19,29]
  std::string base = "abcdefghijklmnopqrstuvwxyzabcdefghijklmnopqrstuvwx";
  REQUIRE(base.size() == 50);
  auto vary = [&](std::size_t start, int n) {
    std::string s = base;
    for (int k = 0; k < n; ++k) s[start + static_cast<std::size_t>(k)] = '0' + k;
    return s;
  };

  // Unique candidate at 0.94 >= theta+delta: confirmed.
  std::vector<CopyrightRecord> regs = {reg_of("", base, "Some Body", 1950)};
  std::vector<RenewalRecord> rens = {
      ren_of("R1", "", vary(0, 3), "Other Person", "1972")};
  auto m = match_renewals(regs, rens, cfg);
  REQUIRE(m[0].size() == 1);
  CHECK(m[0][0].stage == MatchStage::Fuzzy);
  CHECK(m[0][0].score == doctest::Approx(0.94));
  CHECK(m[0][0].confirmed);

  // Two candidates at 0.86, inside [theta, theta+delta): both ambiguous.
  rens = {ren_of("R1", "", vary(0, 7), "P One", "1972"),
          ren_of("R2", "", vary(10, 7), "P Two", "1973")};
  m = match_renewals(regs, rens, cfg);
  REQUIRE(m[0].size() == 2);
  for (const auto& r : m[0]) {
    CHECK(r.score == doctest::Approx(0.86));
    CHECK_FALSE(r.confirmed);
  }

  // Two candidates tied at 0.94, above theta+delta: still ambiguous.
  rens = {ren_of("R1", "", vary(0, 3), "P One", "1972"),
          ren_of("R2", "", vary(10, 3), "P Two", "1973")};
  m = match_renewals(regs, rens, cfg);
  REQUIRE(m[0].size() == 2);
  for (const auto& r : m[0]) CHECK_FALSE(r.confirmed);

  // Clear best (0.94) over a distant second (0.86): best confirmed.
  rens = {ren_of("R1", "", vary(0, 3), "P One", "1972"),
          ren_of("R2", "", vary(10, 7), "P Two", "1973")};
  m = match_renewals(regs, rens, cfg);
  REQUIRE(m[0].size() == 2);
  CHECK(m[0][0].score == doctest::Approx(0.94));
  CHECK(m[0][0].confirmed);
  CHECK_FALSE(m[0][1].confirmed);

  // Outside the window nothing matches fuzzily.
  rens = {ren_of("R1", "", vary(0, 3), "P One", "1990")};
  m = match_renewals(regs, rens, cfg);
  CHECK(m[0].empty());

  // Empty renewal set: zero matches, no error.
  m = match_renewals(regs, {}, cfg);
  CHECK(m[0].empty());
}

TEST_CASE("match: staged matcher equals the exhaustive oracle") {
  gen::Rng rng(0x0e0c1eu);
  MatchConfig cfg;
  for (int trial = 0; trial < 40; ++trial) {
    auto corpus = pdgen::make_corpus(rng, gen::pick_int(rng, 0, 60),
                                     gen::pick_int(rng, 0, 40));
    auto got = match_renewals(corpus.regs, corpus.renewals, cfg);
    auto want = pdoracle::match_all(corpus.regs, corpus.renewals, cfg);
    CHECK(got == want);
  }
  // One denser corpus.
  auto corpus = pdgen::make_corpus(rng, 300, 150);
  CHECK(match_renewals(corpus.regs, corpus.renewals, cfg) ==
        pdoracle::match_all(corpus.regs, corpus.renewals, cfg));
}

TEST_CASE("match: parallel equals serial") {
  gen::Rng rng(0x9a7a11e1u);
  auto corpus = pdgen::make_corpus(rng, 200, 120);
  MatchConfig serial, parallel;
  parallel.threads = 4;
  CHECK(match_renewals(corpus.regs, corpus.renewals, serial) ==
        match_renewals(corpus.regs, corpus.renewals, parallel));
}

TEST_CASE("match result type invariants hold over random corpora") {
  gen::Rng rng(0x717e5u);
  MatchConfig cfg;
  for (int trial = 0; trial < 25; ++trial) {
    auto corpus = pdgen::make_corpus(rng, 40, 30);
    auto all = match_renewals(corpus.regs, corpus.renewals, cfg);
    for (const auto& per_reg : all) {
      for (const auto& m : per_reg) {
        if (m.stage == MatchStage::RegIdExact) CHECK(m.score == 1.0);
        if (m.stage == MatchStage::Fuzzy) CHECK(m.score >= cfg.theta);
      }
    }
  }
}

TEST_CASE("classify: year rules and match precedence") {
  RulesConfig rules;
  auto mk = [](bool confirmed) {
    return MatchResult{0, 0, MatchStage::Fuzzy, 0.95, true, confirmed};
  };

  auto pd1920 = classify(reg_of("A1", "Old Book", "A B", 1920), {}, rules);
  CHECK(pd1920.outcome == PdOutcome::BelievedPublicDomain);
  CHECK(pd1920.basis == PdBasis::PreCutoffYear);

  auto excl = classify(reg_of("A2", "Renewed Book", "A B", 1950), {mk(true)}, rules);
  CHECK(excl.outcome == PdOutcome::Excluded);
  CHECK(excl.basis == PdBasis::RenewalFound);
  CHECK(excl.evidence.size() == 1);

  auto ri = classify(reg_of("A3", "Maybe Book", "A B", 1950), {mk(false)}, rules);
  CHECK(ri.outcome == PdOutcome::RequiresInvestigation);
  CHECK(ri.basis == PdBasis::AmbiguousMatch);

  auto pd1950 = classify(reg_of("A4", "Quiet Book", "A B", 1950), {}, rules);
  CHECK(pd1950.outcome == PdOutcome::BelievedPublicDomain);
  CHECK(pd1950.basis == PdBasis::NoRenewalFound);

  // Out of the renewal-rule range and above the cutoff: excluded.
  auto modern = classify(reg_of("A5", "New Book", "A B", 1990), {}, rules);
  CHECK(modern.outcome == PdOutcome::Excluded);
  CHECK(modern.basis == PdBasis::OutOfRuleRange);

  // A confirmed renewal beats the pre-cutoff shortcut: never hand out a
  // renewed work.
  auto renewed_old =
      classify(reg_of("A6", "Old Renewed", "A B", 1925), {mk(true)}, rules);
  CHECK(renewed_old.outcome == PdOutcome::Excluded);
  CHECK(renewed_old.basis == PdBasis::RenewalFound);

  // Pre-cutoff with an ambiguous match still needs investigation.
  auto old_ambig =
      classify(reg_of("A7", "Old Maybe", "A B", 1925), {mk(false)}, rules);
  CHECK(old_ambig.outcome == PdOutcome::RequiresInvestigation);

  // Missing publication date never silently lands PD.
  auto undated = classify(reg_of("A8", "No Date", "A B", std::nullopt), {}, rules);
  CHECK(undated.outcome == PdOutcome::RequiresInvestigation);
  auto undated_ambig =
      classify(reg_of("A9", "No Date Either", "A B", std::nullopt),
               {mk(false)}, rules);
  CHECK(undated_ambig.outcome == PdOutcome::RequiresInvestigation);
  CHECK(undated_ambig.basis == PdBasis::AmbiguousMatch);
  auto undated_conf =
      classify(reg_of("A10", "No Date Renewed", "A B", std::nullopt),
               {mk(true)}, rules);
  CHECK(undated_conf.outcome == PdOutcome::Excluded);
}

TEST_CASE("classify: safety invariant over random corpora") {
  gen::Rng rng(0x5afe7u);
  MatchConfig mcfg;
  RulesConfig rules;
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto corpus = pdgen::make_corpus(rng, gen::pick_int(rng, 1, 50),
                                     gen::pick_int(rng, 0, 40));
    auto works = classify_corpus(corpus.regs, corpus.renewals, mcfg, rules);
    for (const auto& w : works) {
      ++checked;
      bool any_confirmed = false;
      for (const auto& m : w.classification.evidence) {
        any_confirmed = any_confirmed || m.confirmed;
      }
      if (any_confirmed) {
        CHECK(w.classification.outcome == PdOutcome::Excluded);
      }
      if (w.classification.outcome == PdOutcome::BelievedPublicDomain) {
        CHECK(w.classification.evidence.empty());
      }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("classify: author corruption never clears a work") {
  // Windowed corpus: every derived renewal lands inside the date window,
  // so losing author corroboration degrades to fuzzy or ambiguous rather
  // than vanishing.
  gen::Rng rng(0xa07a0u);
  MatchConfig mcfg;
  RulesConfig rules;
  for (int trial = 0; trial < 15; ++trial) {
    pdgen::Corpus corpus;
    int n = gen::pick_int(rng, 5, 40);
    for (int i = 0; i < n; ++i) {
      auto r = reg_of("A" + std::to_string(1000 + i), pdgen::make_title(rng),
                      pdgen::make_author(rng),
                      gen::pick_int(rng, 1925, 1964));
      corpus.regs.push_back(r);
    }
    int n_ren = gen::pick_int(rng, 0, 30);
    for (int j = 0; j < n_ren; ++j) {
      const auto& src = corpus.regs[gen::pick_size(rng, 0, corpus.regs.size() - 1)];
      auto ren = ren_of(
          "R" + std::to_string(j),
          gen::pick_int(rng, 0, 2) == 0 ? src.reg_id : std::string(),
          pdgen::ocr_noise(rng, src.title, gen::pick_int(rng, 0, 2)),
          pdgen::ocr_noise(rng, src.author, gen::pick_int(rng, 0, 1)),
          std::to_string(src.pub_date->year + gen::pick_int(rng, 19, 29)));
      corpus.renewals.push_back(ren);
    }

    auto baseline = classify_corpus(corpus.regs, corpus.renewals, mcfg, rules);

    auto corrupted_regs = corpus.regs;
    for (auto& r : corrupted_regs) {
      r.author = pdgen::ocr_noise(rng, r.author, gen::pick_int(rng, 1, 3));
      r = normalize_biblio(std::move(r));
    }
    auto after = classify_corpus(corrupted_regs, corpus.renewals, mcfg, rules);

    REQUIRE(baseline.size() == after.size());
    // classify_corpus sorts by normalized reg_id first; reg ids are
    // unique and untouched here, so rows align.
    for (std::size_t i = 0; i < baseline.size(); ++i) {
      REQUIRE(baseline[i].registration.reg_id == after[i].registration.reg_id);
      auto b = baseline[i].classification.outcome;
      auto a = after[i].classification.outcome;
      if (b == PdOutcome::Excluded || b == PdOutcome::RequiresInvestigation) {
        CHECK(a != PdOutcome::BelievedPublicDomain);
      }
      if (b == PdOutcome::BelievedPublicDomain) {
        CHECK(a != PdOutcome::Excluded);
      }
    }
  }
}

TEST_CASE("classify_corpus is independent of input row order") {
  gen::Rng rng(0x0de7e3u);
  auto corpus = pdgen::make_corpus(rng, 80, 50);
  MatchConfig mcfg;
  RulesConfig rules;

  auto works1 = classify_corpus(corpus.regs, corpus.renewals, mcfg, rules);

  auto regs2 = corpus.regs;
  auto rens2 = corpus.renewals;
  std::shuffle(regs2.begin(), regs2.end(), rng);
  std::shuffle(rens2.begin(), rens2.end(), rng);
  auto works2 = classify_corpus(regs2, rens2, mcfg, rules);

  REQUIRE(works1.size() == works2.size());
  std::string a, b;
  for (std::size_t i = 0; i < works1.size(); ++i) {
    a += jsonl_line(classified_work_json(works1[i], corpus.renewals));
    b += jsonl_line(classified_work_json(works2[i], rens2));
  }
  CHECK(a == b);
}

TEST_CASE("summarize tallies outcomes and bases") {
  gen::Rng rng(0x533a59u);
  auto corpus = pdgen::make_corpus(rng, 60, 40);
  auto works = classify_corpus(corpus.regs, corpus.renewals, MatchConfig{},
                               RulesConfig{});
  auto s = summarize(works);
  CHECK(s.total == works.size());
  std::uint64_t outcome_sum = 0, basis_sum = 0;
  for (const auto& [k, v] : s.by_outcome) outcome_sum += v;
  for (const auto& [k, v] : s.by_basis) basis_sum += v;
  CHECK(outcome_sum == s.total);
  CHECK(basis_sum == s.total);
}

TEST_CASE("estimate_misclassification reproduces the reference numbers") {
  FieldAccuracyProfile p;
  p.a_title = 0.9658;
  p.a_reg = 0.9720;
  p.a_author = 0.9025;
  p.a_date = 0.8766;
  p.n_works = 424059;

  auto e = estimate_misclassification(p);
  CHECK(e.p_exact == doctest::Approx((1.0 - 0.9658) * (1.0 - 0.9720)).epsilon(1e-12));
  CHECK(e.p_exact == doctest::Approx(0.0009576).epsilon(1e-9));
  CHECK(e.expected_wrong_exact == doctest::Approx(0.0342 * 0.028 * 424059.0));
  CHECK(e.p_rounded_pct == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(e.expected_wrong_paper_style == doctest::Approx(381.6531).epsilon(1e-9));

  FieldAccuracyProfile perfect;
  perfect.n_works = 1000;
  auto e2 = estimate_misclassification(perfect);
  CHECK(e2.p_exact == 0.0);
  CHECK(e2.expected_wrong_exact == 0.0);
  CHECK(e2.expected_wrong_paper_style == 0.0);

  FieldAccuracyProfile mid;
  mid.a_title = 0.9;
  mid.a_reg = 0.9;
  mid.n_works = 1000;
  auto e3 = estimate_misclassification(mid);
  CHECK(e3.p_exact == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(e3.expected_wrong_exact == doctest::Approx(10.0));
  CHECK(e3.p_rounded_pct == doctest::Approx(1.0));
  CHECK(e3.expected_wrong_paper_style == doctest::Approx(10.0));

  FieldAccuracyProfile bad;
  bad.a_title = 1.2;
  CHECK_THROWS_AS(estimate_misclassification(bad), Error);
  try {
    estimate_misclassification(bad);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("estimate_misclassification: p falls as accuracy rises") {
  gen::Rng rng(0xe57u);
  for (int i = 0; i < 300; ++i) {
    FieldAccuracyProfile p;
    p.a_title = gen::pick_real(rng, 0.5, 0.999);
    p.a_reg = gen::pick_real(rng, 0.5, 0.999);
    p.n_works = 1000;
    double h = gen::pick_real(rng, 1e-6, 0.0009);
    auto base = estimate_misclassification(p);
    auto bt = p;
    bt.a_title += h;
    auto br = p;
    br.a_reg += h;
    CHECK(estimate_misclassification(bt).p_exact < base.p_exact);
    CHECK(estimate_misclassification(br).p_exact < base.p_exact);
    // Author/date accuracies never enter p.
    auto ba = p;
    ba.a_author = gen::pick_real(rng, 0.0, 1.0);
    ba.a_date = gen::pick_real(rng, 0.0, 1.0);
    CHECK(estimate_misclassification(ba).p_exact == base.p_exact);
  }
}

TEST_CASE("evaluate_extractor counts normalized field agreement") {
  gen::Rng rng(0xe4a1u);
  std::vector<CopyrightRecord> truth;
  for (int i = 0; i < 100; ++i) {
    truth.push_back(reg_of("A" + std::to_string(9000 + i),
                           pdgen::make_title(rng), pdgen::make_author(rng),
                           gen::pick_int(rng, 1930, 1960)));
  }
  auto same = evaluate_extractor(truth, truth);
  CHECK(same.a_title == 1.0);
  CHECK(same.a_reg == 1.0);
  CHECK(same.a_author == 1.0);
  CHECK(same.a_date == 1.0);
  CHECK(same.n_works == 100);

  // Corrupt exact counts of each field, one field per slice.
  auto extracted = truth;
  for (int i = 0; i < 3; ++i) extracted[i].title += " zzz";
  for (int i = 10; i < 20; ++i) extracted[i].author = "Xx " + extracted[i].author;
  for (int i = 30; i < 35; ++i) extracted[i].reg_id += "9";
  for (int i = 40; i < 47; ++i) extracted[i].pub_date->year += 1;
  auto prof = evaluate_extractor(extracted, truth);
  CHECK(prof.a_title == doctest::Approx(0.97));
  CHECK(prof.a_author == doctest::Approx(0.90));
  CHECK(prof.a_reg == doctest::Approx(0.95));
  CHECK(prof.a_date == doctest::Approx(0.93));

  // Normalization-equivalent spellings count as agreement.
  std::vector<CopyrightRecord> g = {
      reg_of("A123456", "Great Gatsby", "SCOTT, F.", 1925)};
  std::vector<CopyrightRecord> x = {
      reg_of("A- 123456", "THE  Great   Gatsby!!!", "F. Scott", 1925)};
  auto norm = evaluate_extractor(x, g);
  CHECK(norm.a_title == 1.0);
  CHECK(norm.a_reg == 1.0);
  CHECK(norm.a_author == 1.0);  // both canonicalize to "scott, f"

  CHECK_THROWS_AS(evaluate_extractor({}, truth), Error);

  auto empty = evaluate_extractor({}, {});
  CHECK(empty.n_works == 0);
  CHECK(empty.a_title == 1.0);
}

TEST_CASE("ingest: csv rows, rejects, and reports") {
  auto path = tmp_path("regs.csv");
  write_file(path,
             "reg_id,title,author,pub_year\n"
             "A1,The First Book,John Smith,1950\n"
             "A2,,Jane Roe,1951\n"
             "A3,\"Third, Quoted \"\"Title\"\"\",Max Power,1952\n");
  auto [records, report] = ingest_registrations(path.string());
  CHECK(report.rows_read == 3);
  CHECK(report.accepted == 2);
  CHECK(report.rejected == 1);
  REQUIRE(records.size() == 2);
  CHECK(records[0].reg_id == "A1");
  CHECK(records[0].norm_title == "first book");
  CHECK(records[1].title == "Third, Quoted \"Title\"");
  REQUIRE(records[1].pub_date.has_value());
  CHECK(records[1].pub_date->year == 1952);

  auto rejects = read_jsonl_raw(report.reject_path);
  REQUIRE(rejects.size() == 1);
  CHECK(rejects[0]["row"] == 3);
  CHECK(rejects[0]["reason"].get<std::string>().find("title") !=
        std::string::npos);
}

TEST_CASE("ingest: csv and jsonl encodings agree") {
  auto csv = tmp_path("same.csv");
  auto jsonl = tmp_path("same.jsonl");
  write_file(csv,
             "reg_id,title,author,pub_year,pub_month\n"
             "A1,The First Book,\"Smith, John\",1950,7\n"
             "A2,Second Book,Jane Roe,1951,\n");
  write_file(jsonl,
             "{\"reg_id\":\"A1\",\"title\":\"The First Book\",\"author\":"
             "\"Smith, John\",\"pub_year\":1950,\"pub_month\":7}\n"
             "{\"reg_id\":\"A2\",\"title\":\"Second Book\",\"author\":"
             "\"Jane Roe\",\"pub_year\":1951}\n");
  auto [from_csv, r1] = ingest_registrations(csv.string());
  auto [from_jsonl, r2] = ingest_registrations(jsonl.string());
  CHECK(from_csv == from_jsonl);
  CHECK(r1.accepted == 2);
  CHECK(r2.accepted == 2);
  REQUIRE(from_csv.size() == 2);
  CHECK(from_csv[0].pub_date->month == 7);
  CHECK_FALSE(from_csv[1].pub_date->month.has_value());
}

TEST_CASE("ingest: header-only, missing column, unreadable, bad years") {
  auto empty = tmp_path("empty.csv");
  write_file(empty, "reg_id,title,author,pub_year\n");
  auto [records, report] = ingest_registrations(empty.string());
  CHECK(records.empty());
  CHECK(report.rows_read == 0);
  CHECK(report.rejected == 0);

  auto missing = tmp_path("missing.csv");
  write_file(missing, "reg_id,title,pub_year\nA1,X,1950\n");
  try {
    ingest_registrations(missing.string());
    FAIL("expected schema error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Schema);
    CHECK(std::string(e.what()).find("author") != std::string::npos);
  }

  try {
    ingest_registrations("/nonexistent/never/there.csv");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }

  auto bad = tmp_path("badyear.csv");
  write_file(bad,
             "reg_id,title,author,pub_year\n"
             "A1,Fine,X,1950\n"
             "A2,Garbage Year,X,19fifty\n"
             "A3,Out Of Range,X,1492\n"
             "A4,No Year At All,X,\n");
  auto [recs, rep] = ingest_registrations(bad.string());
  CHECK(rep.rows_read == 4);
  CHECK(rep.accepted == 2);  // A1 and A4 (date optional)
  CHECK(rep.rejected == 2);
  CHECK(rep.rows_read == rep.accepted + rep.rejected);
  REQUIRE(recs.size() == 2);
  CHECK_FALSE(recs[1].pub_date.has_value());
}

TEST_CASE("ingest: renewals require renewal_date") {
  auto path = tmp_path("renewals.csv");
  write_file(path,
             "renewal_id,title,author,renewal_date,original_reg_id\n"
             "R1,The First Book,John Smith,1977,A1\n"
             "R2,Second Book,Jane Roe,,A2\n"
             "R3,Third Book,Max Power,1978-03-02,\n");
  auto [records, report] = ingest_renewals(path.string());
  CHECK(report.accepted == 2);
  CHECK(report.rejected == 1);
  REQUIRE(records.size() == 2);
  CHECK(records[0].norm_reg_id == "A1");
  CHECK(renewal_year(records[1].renewal_date) == 1978);
  CHECK(records[1].norm_reg_id == "");
}

TEST_CASE("triage: export and manual resolution round trip") {
  RulesConfig rules;
  MatchConfig mcfg;
  // Bare id collision: ambiguous, so the work needs investigation.
  std::vector<CopyrightRecord> regs = {
      reg_of("A777", "The Hidden Garden", "Rose Law", 1950)};
  std::vector<RenewalRecord> rens = {
      ren_of("R9", "A777", "Completely Different Words", "Someone Else", "1977")};
  auto works = classify_corpus(regs, rens, mcfg, rules);
  REQUIRE(works.size() == 1);
  CHECK(works[0].classification.outcome == PdOutcome::RequiresInvestigation);

  std::string triage = export_triage(works, rens);
  auto lines = nlohmann::json::parse(triage.substr(0, triage.find('\n')));
  CHECK(lines["work_key"].get<std::string>().size() == 16);
  CHECK(lines["registration"]["reg_id"] == "A777");
  REQUIRE(lines["candidates"].size() == 1);
  CHECK(lines["candidates"][0]["renewal_id"] == "R9");
  CHECK(lines["candidates"][0]["confirmed"] == false);

  // Reviewer confirms the candidate: the work becomes excluded.
  ManualDecision confirm{lines["work_key"].get<std::string>(), "R9", true};
  auto works_a = works;
  auto rep_a = apply_manual_decisions(works_a, rens, {confirm}, rules);
  CHECK(rep_a.applied == 1);
  CHECK(works_a[0].classification.outcome == PdOutcome::Excluded);
  CHECK(works_a[0].classification.basis == PdBasis::RenewalFound);

  // Reviewer rejects it: no matches remain, the work clears.
  ManualDecision reject{lines["work_key"].get<std::string>(), "R9", false};
  auto works_b = works;
  auto rep_b = apply_manual_decisions(works_b, rens, {reject}, rules);
  CHECK(rep_b.applied == 1);
  CHECK(works_b[0].classification.outcome == PdOutcome::BelievedPublicDomain);
  CHECK(works_b[0].classification.basis == PdBasis::NoRenewalFound);
  CHECK(works_b[0].classification.evidence.empty());

  // Unknown keys are counted, not applied.
  auto works_c = works;
  auto rep_c = apply_manual_decisions(
      works_c, rens,
      {{"0000000000000000", "R9", true},
       {lines["work_key"].get<std::string>(), "R404", true}},
      rules);
  CHECK(rep_c.applied == 0);
  CHECK(rep_c.unknown_work == 1);
  CHECK(rep_c.unknown_renewal == 1);
  CHECK(works_c[0].classification.outcome == PdOutcome::RequiresInvestigation);

  // Decision rows serialize round-trip.
  nlohmann::json dj = confirm;
  auto back = dj.get<ManualDecision>();
  CHECK(back.work_key == confirm.work_key);
  CHECK(back.is_match);
}

TEST_CASE("pd record json round trips") {
  auto reg = reg_of("A- 55", "The Sample Title", "DOE, Jane", 1949);
  reg.field_confidence["title"] = 0.93;
  nlohmann::json j = reg;
  auto back = j.get<CopyrightRecord>();
  CHECK(back == reg);
  CHECK(nlohmann::json(back) == j);

  auto ren = ren_of("R5", "A55", "Sample Title", "Jane Doe", "1976-01-02");
  nlohmann::json rj = ren;
  CHECK(rj.get<RenewalRecord>() == ren);

  MatchResult m{3, 7, MatchStage::TitleAuthorExact, 1.0, true, true};
  nlohmann::json mj = m;
  CHECK(mj.get<MatchResult>() == m);
  CHECK(mj["stage"] == "title-author-exact");

  PdClassification c;
  c.outcome = PdOutcome::Excluded;
  c.basis = PdBasis::RenewalFound;
  c.evidence = {m};
  nlohmann::json cj = c;
  CHECK(cj["outcome"] == "Excluded");
  CHECK(cj["basis"] == "renewal-found");
  CHECK(cj.get<PdClassification>() == c);
  CHECK(c.status().outcome == PdOutcome::Excluded);
}
