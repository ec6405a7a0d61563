#include "curator/scanner/detect.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>

#include "curator/core/license.hpp"
#include "curator/core/strings.hpp"

namespace curator {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

struct Candidate {
  std::size_t offset;
  std::size_t length;
  LicenseTag tag;
  DetectionMethod method;
};

int method_priority(DetectionMethod m) {
  switch (m) {
    case DetectionMethod::RelLicenseLink: return 0;
    case DetectionMethod::MetaTag: return 1;
    case DetectionMethod::CcUrlRegex: return 2;
    default: return 3;
  }
}

// Attribute scan over a tag body; returns the verbatim value.
std::string_view find_attr(std::string_view tag_body, std::string_view name) {
  std::size_t i = 0;
  while (i < tag_body.size()) {
    while (i < tag_body.size() && (is_space(tag_body[i]) || tag_body[i] == '/')) ++i;
    std::size_t name_start = i;
    while (i < tag_body.size() && !is_space(tag_body[i]) && tag_body[i] != '=' &&
           tag_body[i] != '/') {
      ++i;
    }
    if (i == name_start) {
      ++i;
      continue;
    }
    std::string attr = to_lower_ascii(tag_body.substr(name_start, i - name_start));
    while (i < tag_body.size() && is_space(tag_body[i])) ++i;
    std::string_view value;
    if (i < tag_body.size() && tag_body[i] == '=') {
      ++i;
      while (i < tag_body.size() && is_space(tag_body[i])) ++i;
      if (i < tag_body.size() && (tag_body[i] == '"' || tag_body[i] == '\'')) {
        char q = tag_body[i++];
        std::size_t vstart = i;
        while (i < tag_body.size() && tag_body[i] != q) ++i;
        value = tag_body.substr(vstart, i - vstart);
        if (i < tag_body.size()) ++i;
      } else {
        std::size_t vstart = i;
        while (i < tag_body.size() && !is_space(tag_body[i])) ++i;
        value = tag_body.substr(vstart, i - vstart);
      }
    }
    if (attr == name) return value;
  }
  return {};
}

bool rel_contains_license(std::string_view rel) {
  std::string lowered = to_lower_ascii(rel);
  std::size_t pos = 0;
  while (pos < lowered.size()) {
    while (pos < lowered.size() && is_space(lowered[pos])) ++pos;
    std::size_t start = pos;
    while (pos < lowered.size() && !is_space(lowered[pos])) ++pos;
    if (lowered.substr(start, pos - start) == "license") return true;
  }
  return false;
}

bool is_url_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) ||
         std::strchr("-._~:/?#[]@!$&'()*+,;=%", c) != nullptr;
}

// Tags whose name matches one the detectors care about; case-insensitive.
bool tag_name_is(std::string_view markup, std::size_t tag_start,
                 std::string_view name, std::size_t& body_start) {
  std::size_t i = tag_start + 1;
  if (i + name.size() > markup.size()) return false;
  for (std::size_t k = 0; k < name.size(); ++k) {
    if (std::tolower(static_cast<unsigned char>(markup[i + k])) != name[k]) {
      return false;
    }
  }
  std::size_t after = i + name.size();
  if (after < markup.size() && !is_space(markup[after]) && markup[after] != '>' &&
      markup[after] != '/') {
    return false;  // e.g. <linkage>
  }
  body_start = after;
  return true;
}

bool meta_key_names_license(std::string_view key) {
  std::string k = to_lower_ascii(key);
  if (k.find("license") != std::string::npos) return true;
  return k == "dc.rights" || k == "dcterms.rights" || k == "copyright" ||
         k == "rights";
}

}  // namespace

std::vector<LicenseDetection> detect_cc_license(std::string_view markup,
                                                std::string_view base_url) {
  (void)base_url;  // all CC hrefs are absolute in practice; kept for context
  std::vector<Candidate> candidates;

  // Detector a: <a rel="license" href=...> and <link rel="license" href=...>,
  // and detector c: <meta name|property~license content=...>.
  std::size_t i = 0;
  while ((i = markup.find('<', i)) != std::string_view::npos) {
    std::size_t close = markup.find('>', i);
    if (close == std::string_view::npos) break;
    std::size_t body_start = 0;
    bool anchorish = tag_name_is(markup, i, "a", body_start) ||
                     tag_name_is(markup, i, "link", body_start);
    if (anchorish) {
      std::string_view body = markup.substr(body_start, close - body_start);
      if (rel_contains_license(find_attr(body, "rel"))) {
        std::string_view href = find_attr(body, "href");
        if (!trim(href).empty()) {
          LicenseTag tag = normalize_license(href);
          if (tag.family != LicenseFamily::Unknown) {
            candidates.push_back(
                {i, close - i + 1, tag, DetectionMethod::RelLicenseLink});
          }
        }
      }
    } else if (tag_name_is(markup, i, "meta", body_start)) {
      std::string_view body = markup.substr(body_start, close - body_start);
      std::string_view key = find_attr(body, "name");
      if (key.empty()) key = find_attr(body, "property");
      if (!key.empty() && meta_key_names_license(key)) {
        std::string_view content = find_attr(body, "content");
        if (!trim(content).empty()) {
          LicenseTag tag = normalize_license(content);
          if (tag.family != LicenseFamily::Unknown) {
            candidates.push_back({i, close - i + 1, tag, DetectionMethod::MetaTag});
          }
        }
      }
    }
    i = close + 1;
  }

  // Detector b: creativecommons.org license/publicdomain URLs anywhere.
  static const std::string kHost = "creativecommons.org";
  std::size_t pos = 0;
  for (;;) {
    std::size_t hit = std::string::npos;
    // Case-insensitive substring scan, keyed on the leading 'c'.
    for (std::size_t k = pos; k + kHost.size() <= markup.size(); ++k) {
      char c0 = markup[k];
      if (c0 != 'c' && c0 != 'C') continue;
      std::size_t m = 1;
      while (m < kHost.size() &&
             std::tolower(static_cast<unsigned char>(markup[k + m])) == kHost[m]) {
        ++m;
      }
      if (m == kHost.size()) {
        hit = k;
        break;
      }
    }
    if (hit == std::string::npos) break;

    std::size_t start = hit;
    while (start > 0 && is_url_char(markup[start - 1])) --start;
    std::size_t end = hit + kHost.size();
    while (end < markup.size() && is_url_char(markup[end])) ++end;
    // Trailing sentence punctuation is not part of the URL.
    while (end > hit + kHost.size() &&
           std::strchr(".,;:!)'\"", markup[end - 1]) != nullptr) {
      --end;
    }
    std::string_view url = markup.substr(start, end - start);
    LicenseTag tag = normalize_license(url);
    if (tag.family != LicenseFamily::Unknown) {
      candidates.push_back({start, end - start, tag, DetectionMethod::CcUrlRegex});
    }
    pos = end;
  }

  // Dedup: the same license id reported over overlapping spans is one
  // declaration; the containing element wins over the bare URL inside it.
  std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
    if (x.offset != y.offset) return x.offset < y.offset;
    return method_priority(x.method) < method_priority(y.method);
  });
  std::vector<Candidate> kept;
  for (const auto& c : candidates) {
    bool dup = false;
    for (const auto& k : kept) {
      bool overlap = c.offset < k.offset + k.length && k.offset < c.offset + c.length;
      if (overlap && k.tag.spdx_id == c.tag.spdx_id) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(c);
  }

  std::vector<LicenseDetection> out;
  out.reserve(kept.size());
  for (const auto& c : kept) {
    LicenseDetection d;
    d.tag = c.tag;
    d.method = c.method;
    d.evidence.snippet = std::string(markup.substr(c.offset, c.length));
    d.evidence.offset = c.offset;
    d.scope_confidence = c.method == DetectionMethod::MetaTag
                             ? ScopeConfidence::PageLevel
                             : ScopeConfidence::AssetLevelUncertain;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace curator
