#include "netdec/address.hpp"

namespace netdec {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::optional<Address> parse_address(std::string_view text) {
    if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        text.remove_prefix(2);
    }
    if (text.size() != 40) {
        return std::nullopt;
    }
    Address a;
    for (std::size_t i = 0; i < 20; ++i) {
        const int hi = hex_value(text[2 * i]);
        const int lo = hex_value(text[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            return std::nullopt;
        }
        a.bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return a;
}

std::string to_string(const Address& a) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(42);
    out += "0x";
    for (std::uint8_t b : a.bytes) {
        out += kHex[b >> 4];
        out += kHex[b & 0x0f];
    }
    return out;
}

}  // namespace netdec
