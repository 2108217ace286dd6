#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace prunedec {

// Fixed-length bit sequence over {0,1}. Length is n or k depending on context.
using Bits = std::vector<std::uint8_t>;

// Packs bits into an unsigned integer, first bit most significant.
// Canonical hash key for codewords (n <= 16 fits comfortably).
inline std::uint32_t pack_bits(const Bits& bits) {
    std::uint32_t v = 0;
    for (std::uint8_t b : bits) v = (v << 1) | (b & 1u);
    return v;
}

inline Bits unpack_bits(std::uint32_t v, int len) {
    Bits out(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) out[i] = static_cast<std::uint8_t>((v >> (len - 1 - i)) & 1u);
    return out;
}

inline void check_bits(const Bits& bits, std::size_t expected_len, const char* where) {
    if (bits.size() != expected_len)
        throw std::invalid_argument(std::string(where) + ": expected length " +
                                    std::to_string(expected_len) + ", got " +
                                    std::to_string(bits.size()));
    for (std::uint8_t b : bits)
        if (b > 1) throw std::invalid_argument(std::string(where) + ": bit value out of {0,1}");
}

inline int hamming_distance(const Bits& a, const Bits& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

}  // namespace prunedec
