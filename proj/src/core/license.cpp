#include "curator/core/license.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "curator/core/error.hpp"
#include "curator/core/strings.hpp"

namespace curator {

const char kLicenseTableVersion[] = "1";

std::string to_string(LicenseFamily f) {
  switch (f) {
    case LicenseFamily::Cc: return "cc";
    case LicenseFamily::PublicDomainDedication: return "public-domain-dedication";
    case LicenseFamily::OtherOpen: return "other-open";
    case LicenseFamily::Unknown: return "unknown";
  }
  return "unknown";
}

LicenseFamily license_family_from_string(std::string_view s) {
  if (s == "cc") return LicenseFamily::Cc;
  if (s == "public-domain-dedication") return LicenseFamily::PublicDomainDedication;
  if (s == "other-open") return LicenseFamily::OtherOpen;
  return LicenseFamily::Unknown;
}

namespace {

const char* kCcModules[] = {"BY",    "BY-SA",    "BY-NC",
                            "BY-ND", "BY-NC-SA", "BY-NC-ND"};
const char* kCcVersions[] = {"1.0", "2.0", "2.1", "2.5", "3.0", "4.0"};

bool cc_modules_open(std::string_view modules) {
  return modules.find("NC") == std::string_view::npos &&
         modules.find("ND") == std::string_view::npos;
}

std::vector<LicenseTableEntry> build_table() {
  std::vector<LicenseTableEntry> t;
  for (const char* m : kCcModules) {
    // Unversioned declaration ("CC BY-SA" with no version knowable).
    t.push_back({std::string("CC-") + m, LicenseFamily::Cc, cc_modules_open(m)});
    for (const char* v : kCcVersions) {
      t.push_back({std::string("CC-") + m + "-" + v, LicenseFamily::Cc,
                   cc_modules_open(m)});
    }
  }
  t.push_back({"CC0-1.0", LicenseFamily::PublicDomainDedication, true});
  t.push_back({"PDM-1.0", LicenseFamily::PublicDomainDedication, true});
  t.push_back({"CC-PDDC", LicenseFamily::PublicDomainDedication, true});
  // Dataset-level and declared-by-source ids seen in this domain.
  t.push_back({"ODC-By-1.0", LicenseFamily::OtherOpen, true});
  t.push_back({"ODbL-1.0", LicenseFamily::OtherOpen, true});
  t.push_back({"CDLA-Permissive-2.0", LicenseFamily::OtherOpen, true});
  t.push_back({"Apache-2.0", LicenseFamily::OtherOpen, true});
  t.push_back({"MIT", LicenseFamily::OtherOpen, true});
  t.push_back({"BSD-3-Clause", LicenseFamily::OtherOpen, true});
  t.push_back({"GFDL-1.3", LicenseFamily::OtherOpen, true});
  return t;
}

const std::map<std::string, const LicenseTableEntry*>& table_by_lower_id() {
  static std::map<std::string, const LicenseTableEntry*> idx = [] {
    std::map<std::string, const LicenseTableEntry*> m;
    for (const auto& e : license_table()) m[to_lower_ascii(e.spdx_id)] = &e;
    return m;
  }();
  return idx;
}

// Free-text spelling → table id. Keys are the collapsed lowercase form
// with punctuation stripped (see text_key).
const std::map<std::string, std::string>& spelling_map() {
  static std::map<std::string, std::string> m = [] {
    std::map<std::string, std::string> s;
    auto add_cc = [&](const std::string& key, const char* modules) {
      s[key] = std::string("CC-") + modules;
    };
    add_cc("cc by", "BY");
    add_cc("cc by sa", "BY-SA");
    add_cc("cc by nc", "BY-NC");
    add_cc("cc by nd", "BY-ND");
    add_cc("cc by nc sa", "BY-NC-SA");
    add_cc("cc by nc nd", "BY-NC-ND");
    add_cc("creative commons attribution", "BY");
    add_cc("creative commons attribution sharealike", "BY-SA");
    add_cc("creative commons attribution share alike", "BY-SA");
    add_cc("creative commons attribution noncommercial", "BY-NC");
    add_cc("creative commons attribution non commercial", "BY-NC");
    add_cc("creative commons attribution noderivatives", "BY-ND");
    add_cc("creative commons attribution noncommercial sharealike", "BY-NC-SA");
    add_cc("creative commons attribution noncommercial noderivatives", "BY-NC-ND");
    add_cc("attribution", "BY");
    add_cc("attribution sharealike", "BY-SA");
    s["cc0"] = "CC0-1.0";
    s["cc zero"] = "CC0-1.0";
    s["creative commons zero"] = "CC0-1.0";
    s["public domain"] = "PDM-1.0";
    s["public domain mark"] = "PDM-1.0";
    s["apache license 2 0"] = "Apache-2.0";
    s["apache 2 0"] = "Apache-2.0";
    s["mit license"] = "MIT";
    return s;
  }();
  return m;
}

// Lowercase, strip ASCII punctuation to spaces, collapse whitespace.
std::string text_key(std::string_view raw) {
  std::string lowered = to_lower_ascii(trim(raw));
  for (char& c : lowered) {
    if (std::ispunct(static_cast<unsigned char>(c))) c = ' ';
  }
  return collapse_ws(lowered);
}

bool valid_cc_version(std::string_view v) {
  for (const char* k : kCcVersions)
    if (v == k) return true;
  return false;
}

// Canonical module order: BY first, then NC, then ND/SA (matches the table
// ids). Pre-4.0 URLs sometimes carry nd-nc order.
std::optional<std::string> canonical_modules(std::string_view path_modules) {
  auto parts = split(std::string(path_modules), '-');
  bool by = false, nc = false, nd = false, sa = false;
  for (auto& p : parts) {
    std::string q = to_lower_ascii(p);
    if (q == "by") by = true;
    else if (q == "nc") nc = true;
    else if (q == "nd") nd = true;
    else if (q == "sa") sa = true;
    else return std::nullopt;
  }
  if (!by || (nd && sa)) return std::nullopt;
  std::string out = "BY";
  if (nc) out += "-NC";
  if (nd) out += "-ND";
  if (sa) out += "-SA";
  return out;
}

const LicenseTableEntry* lookup_id(std::string_view id) {
  auto& idx = table_by_lower_id();
  auto it = idx.find(to_lower_ascii(id));
  return it == idx.end() ? nullptr : it->second;
}

// Parses a creativecommons.org URL path. Returns a table id or nullopt.
std::optional<std::string> cc_url_to_id(std::string_view raw) {
  std::string lowered = to_lower_ascii(raw);
  size_t host = lowered.find("creativecommons.org");
  if (host == std::string::npos) return std::nullopt;
  size_t path_start = lowered.find('/', host);
  if (path_start == std::string::npos) return std::nullopt;
  std::string_view path = std::string_view(lowered).substr(path_start);
  // Drop query/fragment and deed suffixes.
  size_t cut = path.find_first_of("?#");
  if (cut != std::string_view::npos) path = path.substr(0, cut);

  auto segs_raw = split(path, '/');
  std::vector<std::string> segs;
  for (auto& s : segs_raw) {
    if (s.empty()) continue;
    if (starts_with_ci(s, "deed")) continue;
    if (s == "legalcode") continue;
    segs.push_back(s);
  }
  if (segs.empty()) return std::nullopt;

  if (segs[0] == "licenses") {
    if (segs.size() >= 2 && segs[1] == "publicdomain") return std::string("CC-PDDC");
    if (segs.size() < 3) return std::nullopt;
    auto modules = canonical_modules(segs[1]);
    if (!modules) return std::nullopt;
    if (!valid_cc_version(segs[2])) return std::nullopt;
    // segs[3], when present, is a jurisdiction port; ports map to the base id.
    return "CC-" + *modules + "-" + segs[2];
  }
  if (segs[0] == "publicdomain") {
    if (segs.size() >= 2 && segs[1] == "zero") return std::string("CC0-1.0");
    if (segs.size() >= 2 && segs[1] == "mark") return std::string("PDM-1.0");
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

const std::vector<LicenseTableEntry>& license_table() {
  static std::vector<LicenseTableEntry> t = build_table();
  return t;
}

nlohmann::json license_table_json() {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : license_table()) {
    entries.push_back({{"spdx_id", e.spdx_id},
                       {"family", to_string(e.family)},
                       {"open", e.open}});
  }
  return nlohmann::json{{"version", kLicenseTableVersion},
                        {"entries", entries}};
}

LicenseTag normalize_license(std::string_view raw,
                             std::optional<std::string_view> version_hint) {
  if (trim(raw).empty()) throw invalid_argument("normalize_license: empty input");

  std::string_view trimmed = trim(raw);

  // Canonical id, case-insensitively.
  if (const auto* e = lookup_id(trimmed)) {
    LicenseTag tag{e->spdx_id, e->family};
    if (version_hint && e->family == LicenseFamily::Cc &&
        e->spdx_id.find_last_of("0123456789") == std::string::npos) {
      std::string versioned = e->spdx_id + "-" + std::string(*version_hint);
      if (const auto* ve = lookup_id(versioned)) return {ve->spdx_id, ve->family};
    }
    return tag;
  }

  // creativecommons.org URL.
  if (auto id = cc_url_to_id(trimmed)) {
    if (const auto* e = lookup_id(*id)) return {e->spdx_id, e->family};
  }

  // Free-text spelling, optionally with an inline version ("CC BY-SA 3.0"
  // keys as "cc by sa 3 0").
  auto& spellings = spelling_map();
  std::string key = text_key(trimmed);
  std::string inline_version;
  {
    auto toks = split(key, ' ');
    if (toks.size() >= 3 && toks[toks.size() - 1].size() == 1 &&
        toks[toks.size() - 2].size() == 1 &&
        std::isdigit(static_cast<unsigned char>(toks[toks.size() - 1][0])) &&
        std::isdigit(static_cast<unsigned char>(toks[toks.size() - 2][0]))) {
      inline_version = toks[toks.size() - 2] + "." + toks[toks.size() - 1];
      std::string stripped;
      for (size_t i = 0; i + 2 < toks.size(); ++i) {
        if (i) stripped += ' ';
        stripped += toks[i];
      }
      if (spellings.count(stripped)) key = stripped;
      else inline_version.clear();
    }
  }
  auto it = spellings.find(key);
  if (it != spellings.end()) {
    const auto* e = lookup_id(it->second);
    if (e) {
      std::string version;
      if (!inline_version.empty()) version = inline_version;
      else if (version_hint) version = std::string(*version_hint);
      if (!version.empty() && e->family == LicenseFamily::Cc &&
          e->spdx_id.find_last_of("0123456789") == std::string::npos) {
        std::string versioned = e->spdx_id + "-" + version;
        if (const auto* ve = lookup_id(versioned)) return {ve->spdx_id, ve->family};
      }
      return {e->spdx_id, e->family};
    }
  }

  return LicenseTag{std::string(raw), LicenseFamily::Unknown};
}

bool is_open_license(const LicenseTag& tag) {
  if (tag.family == LicenseFamily::Unknown) return false;
  const auto* e = lookup_id(tag.spdx_id);
  return e != nullptr && e->open;
}

}  // namespace curator
