#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace curator {

std::string to_lower_ascii(std::string_view s);
std::string_view trim(std::string_view s);
bool starts_with_ci(std::string_view s, std::string_view prefix);

// Splits on a single character; keeps empty fields.
std::vector<std::string> split(std::string_view s, char sep);

// Collapses runs of ASCII whitespace to single spaces and trims the ends.
std::string collapse_ws(std::string_view s);

bool is_hex_lower(std::string_view s);

// True when every byte forms valid UTF-8.
bool is_valid_utf8(std::string_view s);

// Latin-1 / Windows-1252 bytes to UTF-8. Always succeeds.
std::string latin1_to_utf8(std::string_view s, bool cp1252);

// Current wall-clock time as "YYYY-MM-DDTHH:MM:SSZ". Run reports only;
// hashed artifacts must never contain it.
std::string now_utc_iso();

}  // namespace curator
