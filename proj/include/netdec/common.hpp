#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netdec {

// 256-bit unsigned used for all Wei-scale value arithmetic. Totals reach
// 10^30, past both uint64 and exact-double range.
using u256 = boost::multiprecision::uint256_t;

// Malformed or contract-violating input data.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem or transport failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a non-negative decimal integer that fits in 256 bits.
// Rejects signs, whitespace, exponents and anything non-digit.
std::optional<u256> parse_u256(std::string_view text);

std::string to_decimal(const u256& v);

// 4-significant-digit form, e.g. "2.823e+28". Display only.
std::string to_scientific(const u256& v);

// Shortest round-trip decimal via std::to_chars.
std::string format_double(double v);

// Seed-derivation mixer. Stateless; same input, same output.
std::uint64_t splitmix64(std::uint64_t x);

// FNV-1a over bytes; used for config digests.
std::uint64_t fnv1a64(std::string_view bytes);
std::string to_hex64(std::uint64_t v);

// Unbiased uniform draw in [0, n), independent of stdlib distribution
// internals so that seeded runs replay identically.
template <class Rng>
std::uint64_t bounded_rand(Rng& rng, std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("bounded_rand: n must be positive");
    }
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x = rng();
    while (x < threshold) {
        x = rng();
    }
    return x % n;
}

}  // namespace netdec
