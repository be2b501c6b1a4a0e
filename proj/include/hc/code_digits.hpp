// Shared digit alphabet of the Goedel coding.
//
// Codes are base-64 digit strings read as naturals with a leading sentinel
// digit 1, i.e. code(d1...dn) = value of (1 d1 ... dn) in base 64.  Every
// object is rendered as a bracket-balanced digit string, which makes the
// encoding of distinct objects prefix-free and hence decodable.  The arena
// caches digit lengths per node using the same constants, so the length
// arithmetic here and the emission in coding.cpp must agree.
#pragma once

#include <cstdint>

namespace hc::digits {

inline constexpr std::uint8_t OPEN = 2, CLOSE = 3;
inline constexpr std::uint8_t ZERO = 4;  // bare leaf digit for the constant 0
inline constexpr std::uint8_t SUCC = 5, ADD = 6, MUL = 7, VAR = 8, SKOLEM = 9;
inline constexpr std::uint8_t NAT_BEGIN = 10, NAT_END = 11;
inline constexpr std::uint8_t EQ = 12, LE = 13, NOT = 14, AND = 15, OR = 16,
                              IMPLIES = 17, FORALL = 18, EXISTS = 19,
                              BFORALL = 20, BEXISTS = 21;
inline constexpr std::uint8_t SEQ = 22, SET = 23;
inline constexpr std::uint8_t SEP_EQ = 24, SEP_LT = 25;  // sequence separators
inline constexpr std::uint8_t NAT_DIGIT_BASE = 32;       // payload digits 32..47

// naturals are written MSB-first in base 16 between NAT_BEGIN/NAT_END;
// zero has an empty payload
inline std::uint64_t nat_payload_len(std::uint64_t k) {
    std::uint64_t n = 0;
    while (k > 0) { ++n; k >>= 4; }
    return n;
}
inline std::uint64_t nat_len(std::uint64_t k) { return 2 + nat_payload_len(k); }

}  // namespace hc::digits
