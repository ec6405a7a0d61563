#include "curator/scanner/scan.hpp"

#include <algorithm>
#include <optional>
#include <thread>

#include "curator/core/error.hpp"
#include "curator/core/strings.hpp"
#include "curator/scanner/detect.hpp"
#include "curator/scanner/html.hpp"
#include "curator/scanner/sensitive.hpp"
#include "curator/scanner/warc.hpp"

namespace curator {

void ScanReport::merge(const ScanReport& other) {
  records_read += other.records_read;
  skipped_by_type += other.skipped_by_type;
  skipped_by_status += other.skipped_by_status;
  skipped_non_html += other.skipped_non_html;
  skipped_decode_error += other.skipped_decode_error;
  skipped_malformed += other.skipped_malformed;
  dropped_undetected += other.dropped_undetected;
  detected += other.detected;
  emitted += other.emitted;
  decode_errors.insert(decode_errors.end(), other.decode_errors.begin(),
                       other.decode_errors.end());
}

bool ScanReport::reconciles() const {
  return records_read == emitted + dropped_undetected + skipped_by_type +
                             skipped_by_status + skipped_non_html +
                             skipped_decode_error + skipped_malformed;
}

void to_json(nlohmann::json& j, const ScanReport& v) {
  j = {{"records_read", v.records_read},
       {"skipped_by_type", v.skipped_by_type},
       {"skipped_by_status", v.skipped_by_status},
       {"skipped_non_html", v.skipped_non_html},
       {"skipped_decode_error", v.skipped_decode_error},
       {"skipped_malformed", v.skipped_malformed},
       {"dropped_undetected", v.dropped_undetected},
       {"detected", v.detected},
       {"emitted", v.emitted},
       {"decode_errors", v.decode_errors}};
}

namespace {

enum class Outcome {
  Emitted,
  SkipType,
  SkipStatus,
  SkipNonHtml,
  SkipDecode,
  DroppedUndetected,
};

struct Processed {
  Outcome outcome = Outcome::SkipType;
  bool had_detection = false;
  std::optional<DocumentRecord> doc;
  std::string markup;
  std::string uri;
};

bool is_html_content_type(const HeaderList& headers) {
  for (const auto& [name, value] : headers) {
    if (to_lower_ascii(name) == "content-type") {
      std::string v = to_lower_ascii(value);
      return v.find("text/html") != std::string::npos ||
             v.find("application/xhtml") != std::string::npos;
    }
  }
  return false;
}

std::string_view http_content_type(const HeaderList& headers) {
  for (const auto& [name, value] : headers) {
    if (to_lower_ascii(name) == "content-type") return value;
  }
  return {};
}

Processed process_record(WarcRecordView&& rec, const ScanConfig& config) {
  Processed p;
  p.uri = rec.target_uri;
  if (rec.record_type != "response") {
    p.outcome = Outcome::SkipType;
    return p;
  }
  if (rec.http_status != 200) {
    p.outcome = Outcome::SkipStatus;
    return p;
  }
  if (!is_html_content_type(rec.http_headers)) {
    p.outcome = Outcome::SkipNonHtml;
    return p;
  }

  std::string charset = sniff_charset(http_content_type(rec.http_headers),
                                      rec.http_body);
  auto decoded = decode_html(rec.http_body, charset);
  if (!decoded) {
    p.outcome = Outcome::SkipDecode;
    return p;
  }
  p.markup = std::move(*decoded);

  auto detections = detect_cc_license(p.markup, rec.target_uri);
  p.had_detection = !detections.empty();
  if (detections.empty() && !config.keep_undetected) {
    p.outcome = Outcome::DroppedUndetected;
    return p;
  }

  auto extracted = extract_text(p.markup);
  auto verdict = apply_quality_rules(extracted.text, config.quality);
  auto findings = screen_sensitive(extracted.text);

  std::string text = std::move(extracted.text);
  if (config.redact && !findings.empty()) text = redact_text(text, findings);

  ProvenanceRecord prov;
  prov.source_url = rec.target_uri;
  prov.crawl_date = rec.warc_date;
  prov.http_headers = std::move(rec.http_headers);
  prov.html_metadata = std::move(extracted.html_metadata);
  prov.acquisition_method = AcquisitionMethod::WarcCrawl;
  prov.pipeline_config_hash = config.pipeline_config_hash;

  DocumentRecord doc = DocumentRecord::make(std::move(text), std::move(prov));
  doc.licenses = std::move(detections);
  if (!verdict.passed) doc.flags.insert("quality-rejected");
  if (!findings.empty()) {
    doc.flags.insert("sensitive-data-found");
    if (config.redact) doc.flags.insert("sensitive-redacted");
  }
  std::set<std::string> distinct_ids;
  for (const auto& d : doc.licenses) distinct_ids.insert(d.tag.spdx_id);
  if (distinct_ids.size() > 1) doc.flags.insert("license-ambiguous");

  p.doc = std::move(doc);
  p.outcome = Outcome::Emitted;
  return p;
}

void account(ScanReport& report, Processed& p, const ScanSink& sink) {
  ++report.records_read;
  if (p.had_detection) ++report.detected;
  switch (p.outcome) {
    case Outcome::SkipType: ++report.skipped_by_type; break;
    case Outcome::SkipStatus: ++report.skipped_by_status; break;
    case Outcome::SkipNonHtml: ++report.skipped_non_html; break;
    case Outcome::SkipDecode:
      ++report.skipped_decode_error;
      report.decode_errors.push_back(p.uri);
      break;
    case Outcome::DroppedUndetected: ++report.dropped_undetected; break;
    case Outcome::Emitted:
      ++report.emitted;
      sink(std::move(*p.doc), std::move(p.markup));
      break;
  }
}

}  // namespace

ScanReport scan_warc(InputStream& in, const ScanConfig& config, ScanSink sink) {
  WarcReader reader(in);
  ScanReport report;
  unsigned threads = std::max(1u, config.threads);
  std::size_t batch_size = threads == 1 ? 1 : threads * 8;

  std::vector<WarcRecordView> batch;
  batch.reserve(batch_size);
  bool stream_truncated = false;
  std::string truncation_message;

  for (;;) {
    batch.clear();
    try {
      while (batch.size() < batch_size) {
        auto rec = reader.next();
        if (!rec) break;
        batch.push_back(std::move(*rec));
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Stream) throw;
      // Deliver the complete records gathered so far, then re-raise.
      stream_truncated = true;
      truncation_message = e.what();
    }
    if (batch.empty()) break;

    std::vector<Processed> results(batch.size());
    if (threads == 1 || batch.size() == 1) {
      for (std::size_t i = 0; i < batch.size(); ++i) {
        results[i] = process_record(std::move(batch[i]), config);
      }
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < batch.size(); i += threads) {
            results[i] = process_record(std::move(batch[i]), config);
          }
        });
      }
      for (auto& th : pool) th.join();
    }
    for (auto& p : results) account(report, p, sink);
    if (stream_truncated) break;
  }

  report.records_read += reader.malformed_count();
  report.skipped_malformed = reader.malformed_count();
  if (stream_truncated) {
    throw Error(ErrorKind::Stream, truncation_message);
  }
  return report;
}

ScanReport scan_warc_files(const std::vector<std::filesystem::path>& paths,
                           const ScanConfig& config, ScanSink sink) {
  ScanReport total;
  for (const auto& path : paths) {
    auto in = open_input(path);
    ScanReport one = scan_warc(*in, config, sink);
    total.merge(one);
  }
  return total;
}

}  // namespace curator
