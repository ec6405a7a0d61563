#include "curator/gate/url.hpp"

#include <cctype>

namespace curator {

namespace {

bool scheme_char(char c, bool first) {
  if (std::isalpha(static_cast<unsigned char>(c))) return true;
  if (first) return false;
  return std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
         c == '.';
}

char lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

std::optional<UrlParts> split_url(std::string_view url) {
  std::size_t colon = url.find("://");
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  for (std::size_t i = 0; i < colon; ++i) {
    if (!scheme_char(url[i], i == 0)) return std::nullopt;
  }
  std::size_t auth_begin = colon + 3;
  std::size_t auth_end = auth_begin;
  while (auth_end < url.size() && url[auth_end] != '/' &&
         url[auth_end] != '?' && url[auth_end] != '#') {
    ++auth_end;
  }
  if (auth_end == auth_begin) return std::nullopt;

  UrlParts parts;
  parts.origin.reserve(auth_end);
  for (std::size_t i = 0; i < auth_end; ++i) parts.origin += lower(url[i]);

  std::size_t frag = url.find('#', auth_end);
  std::size_t rest_end = frag == std::string_view::npos ? url.size() : frag;
  parts.path_query.assign(url.substr(auth_end, rest_end - auth_end));
  if (parts.path_query.empty() || parts.path_query[0] == '?') {
    parts.path_query.insert(0, "/");
  }
  return parts;
}

}  // namespace curator
