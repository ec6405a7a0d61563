#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "curator/core/error.hpp"

namespace curator {

// One compact JSON object per line.  nlohmann::json keeps object keys in
// sorted order, so dump() is already canonical and byte-stable.
inline std::string jsonl_line(const nlohmann::json& j) {
  return j.dump() + "\n";
}

template <typename T>
void write_jsonl(const std::filesystem::path& path, const std::vector<T>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  for (const auto& rec : records) {
    nlohmann::json j = rec;
    out << jsonl_line(j);
  }
  if (!out) throw io_error("write failed: " + path.string());
}

// Parses every non-empty line; reports the 1-based line number on failure.
inline std::vector<nlohmann::json> read_jsonl_raw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open: " + path.string());
  std::vector<nlohmann::json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw schema_error(path.string() + ":" + std::to_string(lineno) + ": " +
                         e.what());
    }
  }
  return out;
}

template <typename T>
std::vector<T> read_jsonl(const std::filesystem::path& path) {
  std::vector<T> out;
  std::size_t lineno = 0;
  for (const auto& j : read_jsonl_raw(path)) {
    ++lineno;
    try {
      out.push_back(j.get<T>());
    } catch (const nlohmann::json::exception& e) {
      throw schema_error(path.string() + ": record " + std::to_string(lineno) +
                         ": " + e.what());
    }
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open: " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return data;
}

inline void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw io_error("write failed: " + path.string());
}

}  // namespace curator
