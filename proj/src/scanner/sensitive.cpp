#include "curator/scanner/sensitive.hpp"

#include <cctype>

namespace curator {

std::string to_string(SensitiveKind k) {
  return k == SensitiveKind::Email ? "email" : "phone";
}

void to_json(nlohmann::json& j, const SensitiveFinding& v) {
  j = {{"kind", to_string(v.kind)},
       {"begin", v.begin},
       {"end", v.end},
       {"redacted_preview", v.redacted_preview}};
}

namespace {

bool is_local_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) ||
         c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
}

bool is_domain_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

// Masks everything but the first and last character.
std::string mask(std::string_view match) {
  std::string out(match);
  for (std::size_t i = 1; i + 1 < out.size(); ++i) out[i] = '*';
  if (out.size() == 2) out[1] = '*';
  if (out.size() == 1) out[0] = '*';
  return out;
}

// jane.doe@example.org — local@labels.tld, final label alphabetic, >= 2.
bool match_email(std::string_view text, std::size_t at, std::size_t& begin,
                 std::size_t& end) {
  if (text[at] != '@') return false;
  std::size_t lo = at;
  while (lo > 0 && is_local_char(text[lo - 1])) --lo;
  if (lo == at) return false;
  if (lo > 0 && (std::isalnum(static_cast<unsigned char>(text[lo - 1])) ||
                 text[lo - 1] == '@')) {
    return false;  // glued to a larger token
  }
  std::size_t hi = at + 1;
  std::size_t label_len = 0, labels = 0, last_label_start = hi;
  bool last_alpha_only = true;
  while (hi < text.size()) {
    char c = text[hi];
    if (is_domain_char(c)) {
      if (label_len == 0) last_label_start = hi;
      ++label_len;
      ++hi;
    } else if (c == '.' && label_len > 0 && hi + 1 < text.size() &&
               is_domain_char(text[hi + 1])) {
      ++labels;
      label_len = 0;
      ++hi;
    } else {
      break;
    }
  }
  if (labels == 0 || label_len < 2) return false;
  for (std::size_t k = last_label_start; k < hi; ++k) {
    if (!std::isalpha(static_cast<unsigned char>(text[k]))) {
      last_alpha_only = false;
    }
  }
  if (!last_alpha_only) return false;
  begin = lo;
  end = hi;
  return true;
}

bool is_sep(char c) { return c == ' ' || c == '-' || c == '.'; }

// North American: [+1 or 1, separated]? (ddd) ddd-dddd / ddd-ddd-dddd with
// -, ., space separators, or bare E.164: + followed by 8..15 digits.
bool match_phone(std::string_view text, std::size_t at, std::size_t& begin,
                 std::size_t& end) {
  std::size_t p = at;
  bool plus = text[p] == '+';
  if (plus) {
    ++p;
    std::size_t d = p, n = 0;
    while (d < text.size() && is_digit(text[d])) {
      ++n;
      ++d;
    }
    if (n == 1 && text[p] == '1') {
      // "+1 ..." or "+1(..." continues as a North-American form.
      p = d;
      if (p < text.size() && is_sep(text[p])) ++p;
      else if (!(p < text.size() && text[p] == '(')) return false;
    } else {
      // Bare E.164: one unbroken digit run.
      if (n >= 8 && n <= 15 &&
          (d >= text.size() || !std::isalnum(static_cast<unsigned char>(text[d])))) {
        begin = at;
        end = d;
        return true;
      }
      return false;
    }
  } else if (text[p] == '1' && p + 1 < text.size() && is_sep(text[p + 1])) {
    p += 2;  // bare country code, "1-555-..."
  }

  // Area code: (ddd) or ddd.
  std::size_t q = p;
  bool paren = q < text.size() && text[q] == '(';
  if (paren) ++q;
  std::size_t area = 0;
  while (q < text.size() && is_digit(text[q]) && area < 3) {
    ++area;
    ++q;
  }
  if (area != 3) return false;
  if (paren) {
    if (q >= text.size() || text[q] != ')') return false;
    ++q;
    if (q < text.size() && text[q] == ' ') ++q;
  } else {
    if (q >= text.size() || (text[q] != '-' && text[q] != '.' && text[q] != ' '))
      return false;
    ++q;
  }

  std::size_t mid = 0;
  while (q < text.size() && is_digit(text[q]) && mid < 3) {
    ++mid;
    ++q;
  }
  if (mid != 3) return false;
  if (q >= text.size() || (text[q] != '-' && text[q] != '.' && text[q] != ' '))
    return false;
  ++q;
  std::size_t tail = 0;
  while (q < text.size() && is_digit(text[q]) && tail < 4) {
    ++tail;
    ++q;
  }
  if (tail != 4) return false;
  if (q < text.size() && std::isalnum(static_cast<unsigned char>(text[q])))
    return false;

  begin = at;
  end = q;
  return true;
}

}  // namespace

std::vector<SensitiveFinding> screen_sensitive(std::string_view text) {
  std::vector<SensitiveFinding> findings;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '@') {
      std::size_t begin, end;
      if (match_email(text, i, begin, end)) {
        // The '@' scan can land inside a span that started earlier; make
        // sure spans never overlap a previous finding.
        if (findings.empty() || findings.back().end <= begin) {
          findings.push_back({SensitiveKind::Email, begin, end,
                              mask(text.substr(begin, end - begin))});
        }
        i = end;
        continue;
      }
    }
    bool phone_start =
        (c == '+' || c == '(' || is_digit(c)) &&
        (i == 0 || (!std::isalnum(static_cast<unsigned char>(text[i - 1])) &&
                    text[i - 1] != '+' && text[i - 1] != '-'));
    if (phone_start) {
      std::size_t begin, end;
      if (match_phone(text, i, begin, end)) {
        if (findings.empty() || findings.back().end <= begin) {
          findings.push_back({SensitiveKind::Phone, begin, end,
                              mask(text.substr(begin, end - begin))});
        }
        i = end;
        continue;
      }
    }
    ++i;
  }
  return findings;
}

std::string redact_text(std::string_view text,
                        const std::vector<SensitiveFinding>& findings) {
  std::string out(text);
  for (const auto& f : findings) {
    if (f.end <= out.size() && f.begin < f.end) {
      out.replace(f.begin, f.end - f.begin, f.redacted_preview);
    }
  }
  return out;
}

}  // namespace curator
