#include "netdec/common.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace netdec {

std::optional<u256> parse_u256(std::string_view text) {
    if (text.empty() || text.size() > 78) {  // 2^256-1 has 78 decimal digits
        return std::nullopt;
    }
    for (char c : text) {
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
    }
    // Parse through an unbounded integer so overflow is an explicit check
    // rather than silent modular wrap.
    const boost::multiprecision::cpp_int wide{std::string(text)};
    const boost::multiprecision::cpp_int bound{(std::numeric_limits<u256>::max)()};
    if (wide > bound) {
        return std::nullopt;
    }
    return u256(wide);
}

std::string to_decimal(const u256& v) {
    return v.str();
}

std::string to_scientific(const u256& v) {
    std::string digits = v.str();
    const int exponent = static_cast<int>(digits.size()) - 1;
    if (digits.size() <= 4) {
        return digits;
    }
    // Round to 4 significant digits, half away from zero.
    std::string head = digits.substr(0, 4);
    if (digits[4] >= '5') {
        int i = 3;
        while (i >= 0 && head[i] == '9') {
            head[i] = '0';
            --i;
        }
        if (i < 0) {
            head.insert(head.begin(), '1');
            head.pop_back();
            return std::string(1, head[0]) + "." + head.substr(1) + "e+" +
                   std::to_string(exponent + 1);
        }
        head[i] = static_cast<char>(head[i] + 1);
    }
    return std::string(1, head[0]) + "." + head.substr(1) + "e+" + std::to_string(exponent);
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string to_hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf, 16);
}

}  // namespace netdec
