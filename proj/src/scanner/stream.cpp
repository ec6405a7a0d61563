#include "curator/scanner/stream.hpp"

#include <zlib.h>

#include <cstdio>
#include <cstring>
#include <vector>

#include "curator/core/error.hpp"

namespace curator {

struct FileStream::Impl {
  std::FILE* f = nullptr;
};

FileStream::FileStream(const std::filesystem::path& path) : impl_(new Impl) {
  impl_->f = std::fopen(path.c_str(), "rb");
  if (!impl_->f) throw io_error("cannot open: " + path.string());
}

FileStream::~FileStream() {
  if (impl_->f) std::fclose(impl_->f);
}

std::size_t FileStream::read(char* buf, std::size_t n) {
  std::size_t got = std::fread(buf, 1, n, impl_->f);
  if (got < n && std::ferror(impl_->f)) {
    throw io_error("read failed");
  }
  return got;
}

std::size_t MemoryStream::read(char* buf, std::size_t n) {
  std::size_t avail = data_.size() - pos_;
  std::size_t take = n < avail ? n : avail;
  std::memcpy(buf, data_.data() + pos_, take);
  pos_ += take;
  return take;
}

struct GzipStream::Impl {
  std::unique_ptr<InputStream> inner;
  z_stream zs{};
  std::vector<char> inbuf;
  bool inner_eof = false;
  bool done = false;

  explicit Impl(std::unique_ptr<InputStream> in) : inner(std::move(in)), inbuf(1 << 16) {
    // 15+16: gzip framing only.
    if (inflateInit2(&zs, 15 + 16) != Z_OK) {
      throw Error(ErrorKind::Stream, "inflateInit failed");
    }
  }
  ~Impl() { inflateEnd(&zs); }
};

GzipStream::GzipStream(std::unique_ptr<InputStream> inner)
    : impl_(new Impl(std::move(inner))) {}

GzipStream::~GzipStream() = default;

std::size_t GzipStream::read(char* buf, std::size_t n) {
  auto& s = *impl_;
  if (s.done) return 0;
  s.zs.next_out = reinterpret_cast<Bytef*>(buf);
  s.zs.avail_out = static_cast<uInt>(n);
  while (s.zs.avail_out > 0) {
    if (s.zs.avail_in == 0 && !s.inner_eof) {
      std::size_t got = s.inner->read(s.inbuf.data(), s.inbuf.size());
      s.zs.next_in = reinterpret_cast<Bytef*>(s.inbuf.data());
      s.zs.avail_in = static_cast<uInt>(got);
      if (got == 0) s.inner_eof = true;
    }
    if (s.zs.avail_in == 0 && s.inner_eof) {
      // Mid-member EOF is a truncated archive.
      throw Error(ErrorKind::Stream, "truncated gzip stream");
    }
    int rc = inflate(&s.zs, Z_NO_FLUSH);
    if (rc == Z_STREAM_END) {
      // Member boundary: continue with the next member if bytes remain.
      if (s.zs.avail_in == 0) {
        char probe;
        std::size_t got = s.inner->read(&probe, 1);
        if (got == 0) {
          s.inner_eof = true;
          s.done = true;
          break;
        }
        s.inbuf[0] = probe;
        s.zs.next_in = reinterpret_cast<Bytef*>(s.inbuf.data());
        s.zs.avail_in = 1;
      }
      if (inflateReset(&s.zs) != Z_OK) {
        throw Error(ErrorKind::Stream, "inflateReset failed");
      }
      continue;
    }
    if (rc != Z_OK && rc != Z_BUF_ERROR) {
      throw Error(ErrorKind::Stream,
                  std::string("corrupt gzip stream: ") +
                      (s.zs.msg ? s.zs.msg : "inflate error"));
    }
    if (rc == Z_BUF_ERROR && s.zs.avail_in == 0 && s.inner_eof) {
      throw Error(ErrorKind::Stream, "truncated gzip stream");
    }
  }
  return n - s.zs.avail_out;
}

std::unique_ptr<InputStream> open_input(const std::filesystem::path& path) {
  // Sniff the gzip magic, then reopen fresh so no bytes are lost.
  char magic[2];
  std::size_t got = FileStream(path).read(magic, 2);
  bool gz = got == 2 && static_cast<unsigned char>(magic[0]) == 0x1f &&
            static_cast<unsigned char>(magic[1]) == 0x8b;
  auto file = std::make_unique<FileStream>(path);
  if (gz) return std::make_unique<GzipStream>(std::move(file));
  return file;
}

std::string gzip_compress(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(ErrorKind::Stream, "deflateInit failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  std::string out;
  std::vector<char> buf(1 << 16);
  int rc;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = deflate(&zs, Z_FINISH);
    out.append(buf.data(), buf.size() - zs.avail_out);
  } while (rc == Z_OK);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error(ErrorKind::Stream, "deflate failed");
  return out;
}

std::string gzip_decompress(std::string_view data) {
  GzipStream gz(std::make_unique<MemoryStream>(std::string(data)));
  std::string out;
  std::vector<char> buf(1 << 16);
  for (;;) {
    std::size_t got = gz.read(buf.data(), buf.size());
    if (got == 0) break;
    out.append(buf.data(), got);
  }
  return out;
}

}  // namespace curator
