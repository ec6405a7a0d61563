#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace curator {

enum class SensitiveKind { Email, Phone };

std::string to_string(SensitiveKind k);

struct SensitiveFinding {
  SensitiveKind kind;
  std::size_t begin = 0;  // byte offsets into the screened text
  std::size_t end = 0;
  std::string redacted_preview;  // interior characters masked
};

void to_json(nlohmann::json& j, const SensitiveFinding& v);

// Returns every email and phone match in document order. The grammars are
// fixed: emails are local@domain.tld; phones are North-American forms
// (optionally +1/1-prefixed) and bare E.164 (+ then 8-15 digits).
std::vector<SensitiveFinding> screen_sensitive(std::string_view text);

// Replaces each finding's span with its length-preserving masked preview.
std::string redact_text(std::string_view text,
                        const std::vector<SensitiveFinding>& findings);

}  // namespace curator
