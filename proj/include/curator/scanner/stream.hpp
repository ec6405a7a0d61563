#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace curator {

// Pull-based byte source. read() returns the number of bytes produced;
// 0 means end of stream.
class InputStream {
 public:
  virtual ~InputStream() = default;
  virtual std::size_t read(char* buf, std::size_t n) = 0;
};

class FileStream : public InputStream {
 public:
  explicit FileStream(const std::filesystem::path& path);
  ~FileStream() override;
  std::size_t read(char* buf, std::size_t n) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class MemoryStream : public InputStream {
 public:
  explicit MemoryStream(std::string data) : data_(std::move(data)) {}
  std::size_t read(char* buf, std::size_t n) override;

 private:
  std::string data_;
  std::size_t pos_ = 0;
};

// Streaming gzip decompressor. Handles concatenated members (the normal
// layout of per-record-compressed web archives). Throws Error(Stream) on
// corrupt or truncated input.
class GzipStream : public InputStream {
 public:
  explicit GzipStream(std::unique_ptr<InputStream> inner);
  ~GzipStream() override;
  std::size_t read(char* buf, std::size_t n) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Opens a file, transparently unwrapping gzip when the magic bytes match.
std::unique_ptr<InputStream> open_input(const std::filesystem::path& path);

// One-shot helpers, used for fixtures and small payloads.
std::string gzip_compress(std::string_view data);
std::string gzip_decompress(std::string_view data);

}  // namespace curator
