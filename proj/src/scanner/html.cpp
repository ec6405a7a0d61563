#include "curator/scanner/html.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "curator/core/strings.hpp"

namespace curator {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

// Extracts charset=... from a content-type style string.
std::string charset_param(std::string_view content_type) {
  std::string lowered = to_lower_ascii(content_type);
  std::size_t pos = lowered.find("charset=");
  if (pos == std::string::npos) return {};
  pos += 8;
  if (pos < lowered.size() && (lowered[pos] == '"' || lowered[pos] == '\'')) ++pos;
  std::size_t end = pos;
  while (end < lowered.size() && lowered[end] != ';' && lowered[end] != '"' &&
         lowered[end] != '\'' && !is_space(lowered[end])) {
    ++end;
  }
  return lowered.substr(pos, end - pos);
}

struct Attr {
  std::string name;   // lowercase
  std::string value;  // verbatim
};

// Parses the attributes of a tag body (the text between the tag name and
// the closing '>').
std::vector<Attr> parse_attrs(std::string_view body) {
  std::vector<Attr> attrs;
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() && (is_space(body[i]) || body[i] == '/')) ++i;
    if (i >= body.size()) break;
    std::size_t name_start = i;
    while (i < body.size() && !is_space(body[i]) && body[i] != '=' &&
           body[i] != '/' && body[i] != '>') {
      ++i;
    }
    if (i == name_start) {
      ++i;
      continue;
    }
    Attr a;
    a.name = to_lower_ascii(body.substr(name_start, i - name_start));
    while (i < body.size() && is_space(body[i])) ++i;
    if (i < body.size() && body[i] == '=') {
      ++i;
      while (i < body.size() && is_space(body[i])) ++i;
      if (i < body.size() && (body[i] == '"' || body[i] == '\'')) {
        char quote = body[i++];
        std::size_t vstart = i;
        while (i < body.size() && body[i] != quote) ++i;
        a.value = std::string(body.substr(vstart, i - vstart));
        if (i < body.size()) ++i;
      } else {
        std::size_t vstart = i;
        while (i < body.size() && !is_space(body[i]) && body[i] != '>') ++i;
        a.value = std::string(body.substr(vstart, i - vstart));
      }
    }
    attrs.push_back(std::move(a));
  }
  return attrs;
}

std::string_view attr_value(const std::vector<Attr>& attrs, std::string_view name) {
  for (const auto& a : attrs) {
    if (a.name == name) return a.value;
  }
  return {};
}

const std::map<std::string_view, std::string_view>& named_entities() {
  static const std::map<std::string_view, std::string_view> m = {
      {"amp", "&"},    {"lt", "<"},      {"gt", ">"},     {"quot", "\""},
      {"apos", "'"},   {"nbsp", "\xc2\xa0"},              {"copy", "\xc2\xa9"},
      {"reg", "\xc2\xae"},               {"trade", "\xe2\x84\xa2"},
      {"mdash", "\xe2\x80\x94"},         {"ndash", "\xe2\x80\x93"},
      {"hellip", "\xe2\x80\xa6"},        {"lsquo", "\xe2\x80\x98"},
      {"rsquo", "\xe2\x80\x99"},         {"ldquo", "\xe2\x80\x9c"},
      {"rdquo", "\xe2\x80\x9d"},
  };
  return m;
}

void append_codepoint(std::string& out, unsigned long cp) {
  if (cp == 0 || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) {
    out += "\xef\xbf\xbd";  // replacement character
    return;
  }
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

bool is_block_tag(std::string_view name) {
  static const std::set<std::string_view> kBlocks = {
      "p",       "div",   "br",     "li",     "ul",    "ol",      "dl",
      "dt",      "dd",    "h1",     "h2",     "h3",    "h4",      "h5",
      "h6",      "tr",    "table",  "thead",  "tbody", "caption", "blockquote",
      "pre",     "section", "article", "header", "footer", "nav",  "aside",
      "form",    "hr",    "fieldset", "figure", "figcaption", "main", "address",
      "title",
  };
  return kBlocks.count(name) > 0;
}

}  // namespace

std::string sniff_charset(std::string_view http_content_type,
                          std::string_view raw_bytes) {
  std::string cs = charset_param(http_content_type);
  if (!cs.empty()) return cs;

  // Meta scan over the document head only, per the usual prescan convention.
  std::string head = to_lower_ascii(raw_bytes.substr(0, std::min<std::size_t>(
                                                            raw_bytes.size(), 2048)));
  std::size_t pos = 0;
  while ((pos = head.find("<meta", pos)) != std::string::npos) {
    std::size_t end = head.find('>', pos);
    if (end == std::string::npos) break;
    std::string_view tag(head.data() + pos, end - pos);
    auto attrs = parse_attrs(tag.substr(5));
    auto direct = attr_value(attrs, "charset");
    if (!direct.empty()) return to_lower_ascii(direct);
    if (to_lower_ascii(attr_value(attrs, "http-equiv")) == "content-type") {
      std::string fromment = charset_param(attr_value(attrs, "content"));
      if (!fromment.empty()) return fromment;
    }
    pos = end + 1;
  }
  return "utf-8";
}

std::optional<std::string> decode_html(std::string_view raw_bytes,
                                       std::string_view charset) {
  std::string cs = to_lower_ascii(charset);
  if (cs == "utf-8" || cs == "utf8" || cs == "us-ascii" || cs == "ascii") {
    if (!is_valid_utf8(raw_bytes)) return std::nullopt;
    return std::string(raw_bytes);
  }
  if (cs == "iso-8859-1" || cs == "latin-1" || cs == "latin1" ||
      cs == "iso8859-1") {
    return latin1_to_utf8(raw_bytes, /*cp1252=*/false);
  }
  if (cs == "windows-1252" || cs == "cp1252" || cs == "cp-1252") {
    return latin1_to_utf8(raw_bytes, /*cp1252=*/true);
  }
  // Unsupported label: accept only if the bytes already are valid UTF-8.
  if (is_valid_utf8(raw_bytes)) return std::string(raw_bytes);
  return std::nullopt;
}

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(s[i++]);
      continue;
    }
    std::string_view body = s.substr(i + 1, semi - i - 1);
    if (!body.empty() && body[0] == '#') {
      unsigned long cp = 0;
      bool ok = body.size() > 1;
      if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
        for (std::size_t k = 2; k < body.size() && ok; ++k) {
          if (!std::isxdigit(static_cast<unsigned char>(body[k]))) ok = false;
          else cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(body[k]))
                                   ? body[k] - '0'
                                   : (std::tolower(body[k]) - 'a' + 10));
        }
      } else {
        for (std::size_t k = 1; k < body.size() && ok; ++k) {
          if (!std::isdigit(static_cast<unsigned char>(body[k]))) ok = false;
          else cp = cp * 10 + (body[k] - '0');
        }
      }
      if (ok) {
        append_codepoint(out, cp);
        i = semi + 1;
        continue;
      }
    } else {
      auto it = named_entities().find(body);
      if (it != named_entities().end()) {
        out.append(it->second);
        i = semi + 1;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

ExtractedText extract_text(std::string_view markup) {
  ExtractedText result;
  std::string raw;  // text content with '\n' at block boundaries
  raw.reserve(markup.size() / 2);

  std::size_t i = 0;
  while (i < markup.size()) {
    char c = markup[i];
    if (c != '<') {
      raw.push_back(c);
      ++i;
      continue;
    }
    // Comment?
    if (markup.compare(i, 4, "<!--") == 0) {
      std::size_t end = markup.find("-->", i + 4);
      i = end == std::string_view::npos ? markup.size() : end + 3;
      continue;
    }
    std::size_t close = markup.find('>', i);
    if (close == std::string_view::npos) break;  // dangling '<' at EOF
    std::string_view tag = markup.substr(i + 1, close - i - 1);
    bool closing = !tag.empty() && tag[0] == '/';
    std::string_view rest = closing ? tag.substr(1) : tag;
    std::size_t name_end = 0;
    while (name_end < rest.size() && !is_space(rest[name_end]) &&
           rest[name_end] != '/' && rest[name_end] != '>') {
      ++name_end;
    }
    std::string name = to_lower_ascii(rest.substr(0, name_end));

    if (!closing && (name == "script" || name == "style")) {
      // Swallow content up to the matching close tag.
      std::string close_tag = "</" + name;
      std::size_t end = i;
      std::string lowered;  // search case-insensitively
      for (end = close + 1; end < markup.size(); ++end) {
        if (markup[end] == '<' && end + close_tag.size() <= markup.size()) {
          std::string cand = to_lower_ascii(markup.substr(end, close_tag.size()));
          if (cand == close_tag) break;
        }
      }
      (void)lowered;
      std::size_t after = markup.find('>', end);
      i = after == std::string_view::npos ? markup.size() : after + 1;
      raw.push_back('\n');
      continue;
    }

    if (!closing && name == "meta") {
      auto attrs = parse_attrs(rest.substr(name_end));
      std::string_view key = attr_value(attrs, "name");
      if (key.empty()) key = attr_value(attrs, "property");
      if (key.empty()) key = attr_value(attrs, "http-equiv");
      if (!key.empty()) {
        result.html_metadata.emplace_back(std::string(key),
                                          std::string(attr_value(attrs, "content")));
      } else {
        auto cs = attr_value(attrs, "charset");
        if (!cs.empty()) result.html_metadata.emplace_back("charset", std::string(cs));
      }
    } else if (!closing && name == "link") {
      auto attrs = parse_attrs(rest.substr(name_end));
      auto rel = attr_value(attrs, "rel");
      if (!rel.empty()) {
        result.html_metadata.emplace_back("link:" + to_lower_ascii(rel),
                                          std::string(attr_value(attrs, "href")));
      }
    }

    if (is_block_tag(name)) raw.push_back('\n');
    i = close + 1;
  }

  // Collapse whitespace within lines; drop empty lines.
  std::string decoded = decode_entities(raw);
  std::string& text = result.text;
  text.reserve(decoded.size());
  std::string line;
  std::size_t pos = 0;
  while (pos <= decoded.size()) {
    std::size_t nl = decoded.find('\n', pos);
    std::string_view piece = nl == std::string::npos
                                 ? std::string_view(decoded).substr(pos)
                                 : std::string_view(decoded).substr(pos, nl - pos);
    line = collapse_ws(std::string(trim(piece)));
    if (!line.empty()) {
      if (!text.empty()) text.push_back('\n');
      text += line;
    }
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  return result;
}

}  // namespace curator
