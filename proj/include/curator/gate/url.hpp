#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace curator {

// Split of an absolute URL into the origin robots.txt snapshots are keyed
// by and the byte string robots rules match against.
struct UrlParts {
  std::string origin;      // scheme://authority, lowercased
  std::string path_query;  // path plus ?query, fragment dropped, "/" if empty
  bool operator==(const UrlParts&) const = default;
};

// Byte-wise split; no percent-decoding and no default-port folding.  Returns
// nullopt unless the URL has a valid scheme, "://", and a non-empty
// authority.
std::optional<UrlParts> split_url(std::string_view url);

}  // namespace curator
