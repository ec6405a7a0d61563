#pragma once

#include <string>
#include <string_view>

#include "curator/pd/types.hpp"

namespace curator {

// Lowercases, transliterates common accented Latin to ASCII, maps
// punctuation to spaces, drops leading articles (a/an/the), collapses
// whitespace. Built for OCR'd catalog strings.
std::string normalize_title(std::string_view raw);

// Same base cleanup, then canonicalizes to "surname, given" when a comma
// or an inversion pattern (trailing surname token) is detectable.
std::string normalize_author(std::string_view raw);

// Uppercases and strips separator characters so spacing/hyphen variants
// of one identifier collide.
std::string normalize_reg_id(std::string_view raw);

// Fill the norm_* fields from the raw ones; originals stay untouched.
CopyrightRecord normalize_biblio(CopyrightRecord record);
RenewalRecord normalize_biblio(RenewalRecord record);

}  // namespace curator
