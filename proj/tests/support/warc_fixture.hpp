#pragma once

#include <string>
#include <vector>

#include "curator/scanner/stream.hpp"

// Builds WARC 1.0 bytes for scanner tests. Every helper produces complete,
// spec-shaped records so fixtures stay readable at the call site.
namespace warcfix {

struct Page {
  std::string url;
  std::string html;
  std::string date = "2024-03-01T12:00:00Z";
  int status = 200;
  std::string content_type = "text/html; charset=utf-8";
  std::string record_type = "response";
};

inline std::string http_response(const Page& p) {
  std::string reason = p.status == 200 ? "OK" : "Error";
  std::string msg = "HTTP/1.1 " + std::to_string(p.status) + " " + reason + "\r\n";
  msg += "Content-Type: " + p.content_type + "\r\n";
  msg += "Content-Length: " + std::to_string(p.html.size()) + "\r\n";
  msg += "\r\n";
  msg += p.html;
  return msg;
}

inline std::string record(const Page& p) {
  std::string block = p.record_type == "response"
                          ? http_response(p)
                          : "GET / HTTP/1.1\r\nHost: x\r\n\r\n";
  std::string rec = "WARC/1.0\r\n";
  rec += "WARC-Type: " + p.record_type + "\r\n";
  rec += "WARC-Target-URI: " + p.url + "\r\n";
  rec += "WARC-Date: " + p.date + "\r\n";
  rec += "Content-Type: application/http; msgtype=" + p.record_type + "\r\n";
  rec += "Content-Length: " + std::to_string(block.size()) + "\r\n";
  rec += "\r\n";
  rec += block;
  rec += "\r\n\r\n";
  return rec;
}

inline std::string archive(const std::vector<Page>& pages) {
  std::string out;
  for (const auto& p : pages) out += record(p);
  return out;
}

// Per-record gzip members, the conventional .warc.gz layout.
inline std::string gzip_archive(const std::vector<Page>& pages) {
  std::string out;
  for (const auto& p : pages) out += curator::gzip_compress(record(p));
  return out;
}

// A page body long enough to pass the default quality rules.
inline std::string article_body(const std::string& marker_html,
                                int paragraphs = 6) {
  std::string body = "<html><head><title>Sample article</title></head><body>";
  for (int i = 0; i < paragraphs; ++i) {
    body += "<p>Paragraph " + std::to_string(i) +
            " discusses the long history of community archives and the slow "
            "careful work of cataloguing what previous generations left "
            "behind for scholars and readers everywhere.</p>";
  }
  body += marker_html;
  body += "</body></html>";
  return body;
}

}  // namespace warcfix
