#include "curator/scanner/warc.hpp"

#include <algorithm>
#include <cstdlib>

#include "curator/core/error.hpp"
#include "curator/core/strings.hpp"

namespace curator {

namespace {

std::string_view header_value(const HeaderList& headers, std::string_view name) {
  for (const auto& [n, v] : headers) {
    if (n.size() == name.size() && starts_with_ci(n, name)) return v;
  }
  return {};
}

// Chunked transfer encoding: size lines in hex, chunk, CRLF, ... 0-chunk.
std::string dechunk(const std::string& body) {
  std::string out;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t eol = body.find("\r\n", pos);
    if (eol == std::string::npos) break;
    char* end = nullptr;
    unsigned long len = std::strtoul(body.c_str() + pos, &end, 16);
    if (end == body.c_str() + pos) break;  // not a chunk size: give up
    pos = eol + 2;
    if (len == 0) break;
    if (pos + len > body.size()) {
      out.append(body, pos, body.size() - pos);
      break;
    }
    out.append(body, pos, len);
    pos += len + 2;  // skip chunk CRLF
  }
  return out;
}

}  // namespace

bool parse_http_response(const std::string& payload, int& status,
                         HeaderList& headers, std::string& body) {
  if (!starts_with_ci(payload, "HTTP/")) return false;
  std::size_t line_end = payload.find("\r\n");
  if (line_end == std::string::npos) return false;
  std::string_view status_line(payload.data(), line_end);
  std::size_t sp = status_line.find(' ');
  if (sp == std::string_view::npos || sp + 4 > status_line.size()) return false;
  status = std::atoi(payload.c_str() + sp + 1);

  std::size_t pos = line_end + 2;
  std::size_t blank = payload.find("\r\n\r\n", line_end);
  std::size_t header_end = blank == std::string::npos ? payload.size() : blank;
  while (pos < header_end) {
    std::size_t eol = payload.find("\r\n", pos);
    if (eol == std::string::npos || eol > header_end) eol = header_end;
    std::string_view line(payload.data() + pos, eol - pos);
    std::size_t colon = line.find(':');
    if (colon != std::string_view::npos) {
      headers.emplace_back(std::string(trim(line.substr(0, colon))),
                           std::string(trim(line.substr(colon + 1))));
    }
    pos = eol + 2;
  }
  body = blank == std::string::npos ? std::string() : payload.substr(blank + 4);

  auto te = header_value(headers, "Transfer-Encoding");
  if (te.find("chunked") != std::string_view::npos) body = dechunk(body);
  return true;
}

bool WarcReader::fill(std::size_t want) {
  while (buf_.size() - pos_ < want && !eof_) {
    char chunk[1 << 16];
    std::size_t got = in_.read(chunk, sizeof chunk);
    if (got == 0) {
      eof_ = true;
      break;
    }
    buf_.append(chunk, got);
  }
  return buf_.size() - pos_ >= want;
}

bool WarcReader::read_line(std::string& line) {
  for (;;) {
    std::size_t nl = buf_.find('\n', pos_);
    if (nl != std::string::npos) {
      line.assign(buf_, pos_, nl - pos_);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      pos_ = nl + 1;
      return true;
    }
    if (eof_) return false;
    fill(buf_.size() - pos_ + 1);
  }
}

std::optional<WarcRecordView> WarcReader::next() {
  for (;;) {
    // Compact the buffer now and then so long archives stream in constant
    // memory.
    if (pos_ > (1 << 20)) {
      consumed_ += pos_;
      buf_.erase(0, pos_);
      pos_ = 0;
    }

    std::string line;
    uint64_t line_start;
    // Skip inter-record blank lines, then require a version line.
    do {
      line_start = consumed_ + pos_;
      if (!read_line(line)) {
        if (pos_ < buf_.size()) {
          throw Error(ErrorKind::Stream, "truncated record header");
        }
        return std::nullopt;  // clean end of input
      }
    } while (line.empty());

    uint64_t record_offset = line_start;
    if (line != "WARC/1.0" && line != "WARC/1.1") {
      // Resync: swallow lines until the next version line.
      ++malformed_;
      for (;;) {
        line_start = consumed_ + pos_;
        if (!read_line(line)) {
          if (pos_ < buf_.size()) {
            throw Error(ErrorKind::Stream, "truncated record header");
          }
          return std::nullopt;
        }
        if (line == "WARC/1.0" || line == "WARC/1.1") break;
      }
      record_offset = line_start;
    }

    WarcRecordView rec;
    rec.offset = record_offset;
    long long content_length = -1;
    bool header_ok = true;
    for (;;) {
      if (!read_line(line)) {
        throw Error(ErrorKind::Stream, "truncated record header");
      }
      if (line.empty()) break;
      std::size_t colon = line.find(':');
      if (colon == std::string::npos) {
        header_ok = false;
        continue;
      }
      std::string name(trim(std::string_view(line).substr(0, colon)));
      std::string value(trim(std::string_view(line).substr(colon + 1)));
      std::string lower = to_lower_ascii(name);
      if (lower == "warc-type") rec.record_type = to_lower_ascii(value);
      else if (lower == "warc-target-uri") rec.target_uri = value;
      else if (lower == "warc-date") rec.warc_date = value;
      else if (lower == "content-type") rec.content_type = value;
      else if (lower == "content-length") content_length = std::atoll(value.c_str());
    }

    if (!header_ok || content_length < 0 || rec.record_type.empty()) {
      ++malformed_;
      if (content_length >= 0) {
        // Skip the block so the resync does not reparse payload bytes.
        if (!fill(static_cast<std::size_t>(content_length))) {
          throw Error(ErrorKind::Stream, "truncated record payload");
        }
        pos_ += static_cast<std::size_t>(content_length);
      }
      continue;
    }

    if (!fill(static_cast<std::size_t>(content_length))) {
      throw Error(ErrorKind::Stream, "truncated record payload");
    }
    rec.payload.assign(buf_, pos_, static_cast<std::size_t>(content_length));
    pos_ += static_cast<std::size_t>(content_length);

    if (rec.record_type == "response") {
      parse_http_response(rec.payload, rec.http_status, rec.http_headers,
                          rec.http_body);
    }
    return rec;
  }
}

}  // namespace curator
