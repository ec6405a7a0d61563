#include "curator/gate/optout.hpp"

#include <cctype>
#include <filesystem>

#include "curator/core/jsonl.hpp"
#include "curator/gate/url.hpp"

namespace curator {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Comments start at line begin or after whitespace, so URL fragments
// ("...page#section") survive.
std::string_view strip_comment(std::string_view line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] != '#') continue;
    if (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t') {
      return line.substr(0, i);
    }
  }
  return line;
}

bool all_hex(std::string_view s) {
  for (char c : s) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
  }
  return !s.empty();
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

OptoutList parse_optout_list(std::string_view text, std::string_view source_id) {
  OptoutList list;
  list.source_id.assign(source_id);

  std::size_t lineno = 0;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t eol = text.find('\n', line_start);
    if (eol == std::string_view::npos) {
      if (line_start == text.size()) break;
      eol = text.size();
    }
    ++lineno;
    std::string_view line = text.substr(line_start, eol - line_start);
    line_start = eol + 1;

    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view entry = trim(strip_comment(line));
    if (entry.empty()) continue;

    if (all_hex(entry)) {
      if (entry.size() == 64) {
        list.hashes.insert(to_lower(entry));
      } else {
        list.rejected.push_back({lineno, std::string(entry),
                                 "doc_id hash must be 64 hex characters"});
      }
      continue;
    }
    if (split_url(entry)) {
      if (entry.back() == '/') {
        list.prefixes.emplace(entry);
      } else {
        list.urls.emplace(entry);
      }
      continue;
    }
    list.rejected.push_back(
        {lineno, std::string(entry),
         "not an absolute URL, URL prefix ending in /, or doc_id hash"});
  }
  return list;
}

OptoutList load_optout_list(const std::string& path) {
  std::string text = read_file(path);
  return parse_optout_list(text, std::filesystem::path(path).filename().string());
}

void to_json(nlohmann::json& j, const MalformedEntry& v) {
  j = {{"line", v.line}, {"entry", v.text}, {"reason", v.reason}};
}

}  // namespace curator
