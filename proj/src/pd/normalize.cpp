#include "curator/pd/normalize.hpp"

#include <cctype>

#include "curator/core/strings.hpp"

namespace curator {

namespace {

// Decodes one UTF-8 codepoint; returns U+FFFD and advances one byte on
// malformed input so OCR garbage cannot wedge the loop.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
  unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = (b0 >= 0xf0) ? 4 : (b0 >= 0xe0) ? 3 : (b0 >= 0xc0) ? 2 : 0;
  if (len == 0 || i + len > s.size()) {
    ++i;
    return 0xfffd;
  }
  char32_t cp = b0 & (0x7f >> len);
  for (int k = 1; k < len; ++k) {
    unsigned char b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xc0) != 0x80) {
      ++i;
      return 0xfffd;
    }
    cp = (cp << 6) | (b & 0x3f);
  }
  i += len;
  return cp;
}

// Latin letters with diacritics fold to their base letter; anything else
// non-ASCII is treated as punctuation (a space). Catalog data is
// ASCII-dominant, so the fold only needs the common accented ranges.
char fold_latin(char32_t cp) {
  struct Range {
    char32_t lo, hi;
    char base;
  };
  static const Range kRanges[] = {
      {0xc0, 0xc5, 'a'}, {0xc8, 0xcb, 'e'}, {0xcc, 0xcf, 'i'},
      {0xd2, 0xd6, 'o'}, {0xd9, 0xdc, 'u'}, {0xe0, 0xe5, 'a'},
      {0xe8, 0xeb, 'e'}, {0xec, 0xef, 'i'}, {0xf2, 0xf6, 'o'},
      {0xf9, 0xfc, 'u'},
  };
  for (const auto& r : kRanges) {
    if (cp >= r.lo && cp <= r.hi) return r.base;
  }
  switch (cp) {
    case 0xc7: case 0xe7: return 'c';
    case 0xd1: case 0xf1: return 'n';
    case 0xdd: case 0xfd: case 0xff: return 'y';
    default: return 0;
  }
}

// Lowercase ASCII words separated by single spaces; accents folded,
// punctuation and unknown codepoints treated as separators.
std::string base_clean(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    char32_t cp = next_codepoint(raw, i);
    char c;
    if (cp < 0x80) {
      unsigned char a = static_cast<unsigned char>(cp);
      c = std::isalnum(a) ? static_cast<char>(std::tolower(a)) : ' ';
    } else {
      char folded = fold_latin(cp);
      c = folded ? folded : ' ';
    }
    if (c == ' ') {
      if (!out.empty() && out.back() != ' ') out += ' ';
    } else {
      out += c;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string strip_leading_article(std::string cleaned) {
  for (std::string_view article : {"a ", "an ", "the "}) {
    if (cleaned.size() > article.size() &&
        cleaned.compare(0, article.size(), article) == 0) {
      return cleaned.substr(article.size());
    }
  }
  return cleaned;
}

}  // namespace

std::string normalize_title(std::string_view raw) {
  return strip_leading_article(base_clean(raw));
}

std::string normalize_author(std::string_view raw) {
  // A comma in the raw string marks an already-inverted name.
  auto comma = raw.find(',');
  std::string surname, given;
  if (comma != std::string_view::npos) {
    surname = base_clean(raw.substr(0, comma));
    given = base_clean(raw.substr(comma + 1));
  } else {
    std::string cleaned = base_clean(raw);
    auto last_space = cleaned.rfind(' ');
    if (last_space == std::string::npos) return cleaned;
    surname = cleaned.substr(last_space + 1);
    given = cleaned.substr(0, last_space);
  }
  if (surname.empty()) return given;
  if (given.empty()) return surname;
  return surname + ", " + given;
}

std::string normalize_reg_id(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char ch : raw) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) out += static_cast<char>(std::toupper(c));
  }
  return out;
}

CopyrightRecord normalize_biblio(CopyrightRecord record) {
  record.norm_reg_id = normalize_reg_id(record.reg_id);
  record.norm_title = normalize_title(record.title);
  record.norm_author = normalize_author(record.author);
  return record;
}

RenewalRecord normalize_biblio(RenewalRecord record) {
  record.norm_reg_id = normalize_reg_id(record.original_reg_id);
  record.norm_title = normalize_title(record.title);
  record.norm_author = normalize_author(record.author);
  return record;
}

}  // namespace curator
