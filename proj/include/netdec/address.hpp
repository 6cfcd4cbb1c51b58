#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace netdec {

// 20-byte Ethereum address. Canonical textual form is 0x + 40 lowercase
// hex digits; parsing is case-insensitive.
struct Address {
    std::array<std::uint8_t, 20> bytes{};

    auto operator<=>(const Address&) const = default;
};

inline constexpr Address kNullAddress{};

inline bool is_null(const Address& a) {
    return a == kNullAddress;
}

std::optional<Address> parse_address(std::string_view text);
std::string to_string(const Address& a);

}  // namespace netdec

template <>
struct std::hash<netdec::Address> {
    std::size_t operator()(const netdec::Address& a) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint8_t b : a.bytes) {
            h = (h ^ b) * 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};
