#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "curator/core/types.hpp"
#include "curator/scanner/stream.hpp"

namespace curator {

// One parsed archive record. Only response records with HTTP 200 and an
// HTML content type proceed to license detection.
struct WarcRecordView {
  std::string target_uri;
  std::string warc_date;
  std::string record_type;      // lowercase: response, request, warcinfo, ...
  std::string content_type;     // the WARC-level Content-Type header
  uint64_t offset = 0;          // byte offset of the record in the archive
  int http_status = 0;          // 0 when the payload is not an HTTP message
  HeaderList http_headers;
  std::string payload;          // raw record block
  std::string http_body;        // payload minus HTTP envelope (dechunked)
};

// Streaming parser for WARC 1.0/1.1. Malformed records are skipped and
// counted (the reader resyncs on the next version line); truncation mid-
// record raises Error(Stream) after every complete record has been
// returned.
class WarcReader {
 public:
  explicit WarcReader(InputStream& in) : in_(in) {}

  // Returns the next record, or nullopt at clean end of input.
  std::optional<WarcRecordView> next();

  uint64_t malformed_count() const { return malformed_; }

 private:
  bool fill(std::size_t want);
  bool read_line(std::string& line);

  InputStream& in_;
  std::string buf_;
  std::size_t pos_ = 0;
  uint64_t consumed_ = 0;  // bytes handed out of buf_ so far
  bool eof_ = false;
  uint64_t malformed_ = 0;
};

// Splits an HTTP response payload into status + headers + body. Returns
// false when the payload does not start with an HTTP status line.
bool parse_http_response(const std::string& payload, int& status,
                         HeaderList& headers, std::string& body);

}  // namespace curator
