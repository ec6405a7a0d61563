#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "curator/core/types.hpp"

namespace curator {

// Charset resolution order: HTTP Content-Type header, then a meta tag in
// the document head, then UTF-8. Returns the lowercase charset label.
std::string sniff_charset(std::string_view http_content_type,
                          std::string_view raw_bytes);

// Decodes raw bytes to UTF-8 under the given charset label. Supported:
// utf-8 (validated), us-ascii, iso-8859-1 / latin-1, windows-1252. Returns
// nullopt when the bytes are not valid under the charset or the charset is
// unsupported and the bytes are not valid UTF-8 — never transcodes lossily.
std::optional<std::string> decode_html(std::string_view raw_bytes,
                                       std::string_view charset);

struct ExtractedText {
  std::string text;          // tag-stripped, block boundaries as newlines
  HeaderList html_metadata;  // meta tags and link relations, document order
};

// Conservative markup-to-text pass: scripts/styles/comments dropped,
// block-level elements produce line breaks, entities decoded, whitespace
// collapsed within lines, empty lines squeezed out.
ExtractedText extract_text(std::string_view markup);

// Decodes the common named entities plus numeric references; unknown
// entities pass through verbatim.
std::string decode_entities(std::string_view s);

}  // namespace curator
