#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace netdec {

// A UTC calendar date, represented as days since the Unix epoch.
using CivilDay = std::chrono::sys_days;

// Accepts "YYYY-MM-DD HH:MM:SS" with an optional " UTC", "Z" or "+00:00"
// suffix, a "T" separator, and an ignored fractional-seconds part.
// Returns Unix seconds.
std::optional<std::int64_t> parse_timestamp_utc(std::string_view text);

std::optional<CivilDay> parse_day(std::string_view text);  // "YYYY-MM-DD"
std::string format_day(CivilDay day);

// UTC calendar date containing the given instant.
CivilDay day_of(std::int64_t unix_seconds);

// Day count with both endpoints included.
std::int64_t inclusive_day_span(CivilDay first, CivilDay last);

}  // namespace netdec
