#include "netdec/timeutil.hpp"

#include <charconv>
#include <cstdio>

namespace netdec {

namespace {

bool parse_uint_field(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) {
        return false;
    }
    auto res = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return res.ec == std::errc{} && res.ptr == text.data() + pos + len;
}

std::optional<std::chrono::year_month_day> parse_ymd(std::string_view text) {
    // strict "YYYY-MM-DD"
    int y = 0, m = 0, d = 0;
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    if (!parse_uint_field(text, 0, 4, y) || !parse_uint_field(text, 5, 2, m) ||
        !parse_uint_field(text, 8, 2, d)) {
        return std::nullopt;
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return ymd;
}

}  // namespace

std::optional<std::int64_t> parse_timestamp_utc(std::string_view text) {
    // trim surrounding spaces
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

    auto ymd = parse_ymd(text);
    if (!ymd || text.size() < 19) {
        return std::nullopt;
    }
    if (text[10] != ' ' && text[10] != 'T') {
        return std::nullopt;
    }
    int hh = 0, mm = 0, ss = 0;
    if (text[13] != ':' || text[16] != ':' || !parse_uint_field(text, 11, 2, hh) ||
        !parse_uint_field(text, 14, 2, mm) || !parse_uint_field(text, 17, 2, ss)) {
        return std::nullopt;
    }
    if (hh > 23 || mm > 59 || ss > 60) {
        return std::nullopt;
    }

    std::string_view rest = text.substr(19);
    if (!rest.empty() && rest[0] == '.') {  // fractional seconds, ignored
        std::size_t i = 1;
        while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') ++i;
        if (i == 1) {
            return std::nullopt;
        }
        rest.remove_prefix(i);
    }
    if (!(rest.empty() || rest == "Z" || rest == "z" || rest == " UTC" || rest == "UTC" ||
          rest == "+00:00" || rest == "+0000" || rest == "+00")) {
        return std::nullopt;
    }

    const CivilDay days{*ymd};
    return static_cast<std::int64_t>(days.time_since_epoch().count()) * 86400 + hh * 3600 +
           mm * 60 + ss;
}

std::optional<CivilDay> parse_day(std::string_view text) {
    if (text.size() != 10) {
        return std::nullopt;
    }
    auto ymd = parse_ymd(text);
    if (!ymd) {
        return std::nullopt;
    }
    return CivilDay{*ymd};
}

std::string format_day(CivilDay day) {
    const std::chrono::year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

CivilDay day_of(std::int64_t unix_seconds) {
    std::int64_t days = unix_seconds / 86400;
    if (unix_seconds % 86400 < 0) {
        --days;  // floor for pre-epoch instants
    }
    return CivilDay{std::chrono::days{days}};
}

std::int64_t inclusive_day_span(CivilDay first, CivilDay last) {
    return (last - first).count() + 1;
}

}  // namespace netdec
