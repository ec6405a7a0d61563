#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include "json.hpp"

namespace curator {

// A list line that is none of the three entry forms.  The run continues;
// rejected lines are surfaced with their 1-based line number.
struct MalformedEntry {
  std::size_t line = 0;
  std::string text;
  std::string reason;
  bool operator==(const MalformedEntry&) const = default;
};

// Parsed opt-out list.  Three entry forms: an absolute URL (exact match),
// an absolute URL ending in '/' (prefix match), or a 64-char hex doc_id.
struct OptoutList {
  std::string source_id;  // list file id; becomes the signals' source field
  std::set<std::string> urls;
  std::set<std::string> prefixes;
  std::set<std::string> hashes;  // normalized to lowercase
  std::vector<MalformedEntry> rejected;

  std::size_t entries() const {
    return urls.size() + prefixes.size() + hashes.size();
  }
};

// One entry per line; blank lines skipped; '#' at line start (or preceded
// by whitespace) starts a comment.  Malformed entries are collected, never
// fatal.
OptoutList parse_optout_list(std::string_view text, std::string_view source_id);

// Reads the file and parses it with source_id = the file's basename.
OptoutList load_optout_list(const std::string& path);

void to_json(nlohmann::json& j, const MalformedEntry& v);

}  // namespace curator
