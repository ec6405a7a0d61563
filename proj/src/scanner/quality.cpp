#include "curator/scanner/quality.hpp"

#include <cctype>
#include <set>

#include "curator/core/error.hpp"
#include "curator/core/strings.hpp"

namespace curator {

QualityConfig QualityConfig::defaults() {
  return {{{"min-word-count", 50},
           {"max-bullet-line-fraction", 0.9},
           {"max-duplicate-line-fraction", 0.5},
           {"min-alpha-fraction", 0.6}}};
}

void to_json(nlohmann::json& j, const QualityRule& v) {
  j = {{"id", v.id}, {"threshold", v.threshold}};
}
void from_json(const nlohmann::json& j, QualityRule& v) {
  v.id = j.at("id").get<std::string>();
  v.threshold = j.at("threshold").get<double>();
}
void to_json(nlohmann::json& j, const QualityConfig& v) {
  j = {{"rules", v.rules}};
}
void from_json(const nlohmann::json& j, QualityConfig& v) {
  v.rules = j.at("rules").get<std::vector<QualityRule>>();
}
void to_json(nlohmann::json& j, const QualityVerdict& v) {
  j = {{"passed", v.passed},
       {"failed_rules", v.failed_rules},
       {"measurements", v.measurements}};
}

namespace {

struct TextStats {
  std::size_t words = 0;
  std::size_t lines = 0;
  std::size_t bullet_lines = 0;
  std::size_t duplicate_lines = 0;
  std::size_t alpha_chars = 0;
  std::size_t nonspace_chars = 0;
};

bool is_bullet_line(std::string_view line) {
  std::string_view t = trim(line);
  if (t.empty()) return false;
  unsigned char c0 = static_cast<unsigned char>(t[0]);
  if (c0 == '-' || c0 == '*') return true;
  if (t.size() >= 3 && t.compare(0, 3, "\xe2\x80\xa2") == 0) return true;  // bullet
  if (t.size() >= 2 && t.compare(0, 2, "\xc2\xb7") == 0) return true;      // middot
  // Numbered list marker: digits then '.' or ')'.
  std::size_t i = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  return i > 0 && i < t.size() && (t[i] == '.' || t[i] == ')');
}

TextStats measure(std::string_view text) {
  TextStats s;
  std::set<std::string_view> seen;
  std::size_t pos = 0;
  bool in_word = false;
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    bool space = std::isspace(u) != 0;
    if (!space) {
      ++s.nonspace_chars;
      if (std::isalpha(u) || u >= 0x80) ++s.alpha_chars;
      if (!in_word) {
        ++s.words;
        in_word = true;
      }
    } else {
      in_word = false;
    }
  }
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = nl == std::string_view::npos
                                ? text.substr(pos)
                                : text.substr(pos, nl - pos);
    if (!trim(line).empty()) {
      ++s.lines;
      if (is_bullet_line(line)) ++s.bullet_lines;
      if (!seen.insert(trim(line)).second) ++s.duplicate_lines;
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return s;
}

}  // namespace

QualityVerdict apply_quality_rules(std::string_view text,
                                   const QualityConfig& config) {
  TextStats s = measure(text);
  QualityVerdict v;
  for (const auto& rule : config.rules) {
    double value = 0;
    bool failed = false;
    if (rule.id == "min-word-count") {
      value = static_cast<double>(s.words);
      failed = value < rule.threshold;
    } else if (rule.id == "max-bullet-line-fraction") {
      value = s.lines ? static_cast<double>(s.bullet_lines) / s.lines : 0.0;
      failed = s.lines > 0 && value > rule.threshold;
    } else if (rule.id == "max-duplicate-line-fraction") {
      value = s.lines ? static_cast<double>(s.duplicate_lines) / s.lines : 0.0;
      failed = s.lines > 0 && value > rule.threshold;
    } else if (rule.id == "min-alpha-fraction") {
      value = s.nonspace_chars
                  ? static_cast<double>(s.alpha_chars) / s.nonspace_chars
                  : 1.0;
      failed = s.nonspace_chars > 0 && value < rule.threshold;
    } else {
      throw invalid_argument("unknown quality rule: " + rule.id);
    }
    v.measurements[rule.id] = value;
    if (failed) v.failed_rules.push_back(rule.id);
  }
  v.passed = v.failed_rules.empty();
  return v;
}

}  // namespace curator
