#pragma once

#include <string>
#include <string_view>

namespace curator {

// SHA-256 of the exact bytes, as lowercase hex.
std::string sha256_hex(std::string_view bytes);

// Canonical text form used for content addressing: CRLF and lone CR
// become '\n'. No other transformation.
std::string canonical_text(std::string_view text);

// doc_id = sha256 over the canonical text bytes. Callers that store the
// text must store the canonical form so that id equality tracks byte
// equality of what is stored.
std::string compute_doc_id(std::string_view canonical);

}  // namespace curator
