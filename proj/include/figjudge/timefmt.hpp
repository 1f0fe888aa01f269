#pragma once

#include <string>

namespace figjudge {

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string iso8601_utc_now();

// Compact variant for directory names: "YYYYmmdd-HHMMSS".
std::string utc_timestamp_compact();

} // namespace figjudge
