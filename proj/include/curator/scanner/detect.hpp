#pragma once

#include <string_view>
#include <vector>

#include "curator/core/types.hpp"

namespace curator {

// Finds Creative Commons license declarations in decoded HTML markup using
// three detectors: rel="license" anchors/links, creativecommons.org URLs
// anywhere in the markup, and meta tags naming a license. Evidence offsets
// index into `markup`. Results are deduplicated (a URL inside a rel-link or
// meta tag is one declaration, not two) and sorted by offset.
std::vector<LicenseDetection> detect_cc_license(std::string_view markup,
                                                std::string_view base_url);

}  // namespace curator
