#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "prunedec/bits.hpp"

namespace prunedec {

enum class CodeName { Hamming74, Polar168 };

inline const char* code_name_str(CodeName name) {
    return name == CodeName::Hamming74 ? "hamming74" : "polar168";
}

inline CodeName code_name_from_str(const std::string& s) {
    if (s == "hamming74") return CodeName::Hamming74;
    if (s == "polar168") return CodeName::Polar168;
    throw std::invalid_argument("unknown code name: " + s);
}

struct invalid_codeword_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Systematic Hamming (7,4) generator [I4 | P], P rows: 110, 101, 011, 111.
// Parity equations follow from the columns of P.
inline Bits hamming_encode(const Bits& m) {
    check_bits(m, 4, "hamming_encode");
    Bits c(7);
    c[0] = m[0];
    c[1] = m[1];
    c[2] = m[2];
    c[3] = m[3];
    c[4] = m[0] ^ m[1] ^ m[3];
    c[5] = m[0] ^ m[2] ^ m[3];
    c[6] = m[1] ^ m[2] ^ m[3];
    return c;
}

namespace detail {

// F^{(x)m} for F = [[1,0],[1,1]], built by repeated Kronecker products.
inline std::vector<std::vector<std::uint8_t>> kronecker_power_f(int m) {
    std::vector<std::vector<std::uint8_t>> cur{{1}};
    const std::vector<std::vector<std::uint8_t>> f{{1, 0}, {1, 1}};
    for (int s = 0; s < m; ++s) {
        const std::size_t rb = cur.size();
        std::vector<std::vector<std::uint8_t>> next(2 * rb, std::vector<std::uint8_t>(2 * rb, 0));
        for (std::size_t ia = 0; ia < 2; ++ia)
            for (std::size_t ja = 0; ja < 2; ++ja) {
                if (!f[ia][ja]) continue;
                for (std::size_t ib = 0; ib < rb; ++ib)
                    for (std::size_t jb = 0; jb < rb; ++jb)
                        next[ia * rb + ib][ja * rb + jb] = cur[ib][jb];
            }
        cur = std::move(next);
    }
    return cur;
}

inline const std::vector<std::vector<std::uint8_t>>& polar_transform16() {
    static const auto m = kronecker_power_f(4);
    return m;
}

// x = u * F^{(x)4} over GF(2); the transform is its own inverse.
inline Bits polar_transform_apply(const Bits& u) {
    const auto& f4 = polar_transform16();
    Bits x(16, 0);
    for (int i = 0; i < 16; ++i) {
        if (!u[i]) continue;
        for (int j = 0; j < 16; ++j) x[j] ^= f4[i][j];
    }
    return x;
}

}  // namespace detail

// Information set for Polar (16,8) from the Bhattacharyya parameter
// recursion on BEC(0.5): z -> 2z - z^2 (upper), z -> z^2 (lower), bits of
// the channel index processed most-significant first. The 8 most reliable
// indices, ascending: {7, 9, 10, 11, 12, 13, 14, 15}.
inline std::array<int, 8> polar_info_set_16() {
    std::array<double, 16> z{};
    for (int i = 0; i < 16; ++i) {
        double zi = 0.5;
        for (int bit = 3; bit >= 0; --bit) {
            if ((i >> bit) & 1)
                zi = zi * zi;
            else
                zi = 2.0 * zi - zi * zi;
        }
        z[i] = zi;
    }
    std::array<int, 16> order{};
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return z[a] < z[b]; });
    std::array<int, 8> info{};
    std::copy_n(order.begin(), 8, info.begin());
    std::sort(info.begin(), info.end());
    return info;
}

inline Bits polar_encode(const Bits& m) {
    check_bits(m, 8, "polar_encode");
    static const std::array<int, 8> info = polar_info_set_16();
    Bits u(16, 0);
    for (int i = 0; i < 8; ++i) u[info[i]] = m[i];
    return detail::polar_transform_apply(u);
}

// A linear block code with its full codebook enumerated and a hash-keyed
// membership index. Immutable after construction; safe to share across
// threads.
struct CodeSpec {
    CodeName name;
    int n = 0;
    int k = 0;
    double rate = 0.0;
    std::vector<Bits> codebook;                               // 2^k entries, lexicographic message order
    std::unordered_map<std::uint32_t, std::uint32_t> codeword_index;  // packed codeword -> codebook slot

    Bits encode(const Bits& m) const {
        return name == CodeName::Hamming74 ? hamming_encode(m) : polar_encode(m);
    }
};

inline CodeSpec build_codebook(CodeName name) {
    CodeSpec spec;
    spec.name = name;
    spec.n = name == CodeName::Hamming74 ? 7 : 16;
    spec.k = name == CodeName::Hamming74 ? 4 : 8;
    spec.rate = static_cast<double>(spec.k) / spec.n;
    const std::uint32_t count = 1u << spec.k;
    spec.codebook.reserve(count);
    spec.codeword_index.reserve(count * 2);
    for (std::uint32_t v = 0; v < count; ++v) {
        Bits m = unpack_bits(v, spec.k);
        Bits c = spec.encode(m);
        spec.codeword_index.emplace(pack_bits(c), v);
        spec.codebook.push_back(std::move(c));
    }
    return spec;
}

inline bool is_codeword(const CodeSpec& spec, const Bits& c) {
    if (c.size() != static_cast<std::size_t>(spec.n))
        throw std::invalid_argument("is_codeword: wrong length");
    return spec.codeword_index.count(pack_bits(c)) != 0;
}

// Recovers the message from a valid codeword. Hamming74 is systematic;
// for Polar168 the transform is applied again (self-inverse over GF(2))
// and the info positions are read off.
inline Bits extract_message(const CodeSpec& spec, const Bits& c) {
    check_bits(c, static_cast<std::size_t>(spec.n), "extract_message");
    if (!is_codeword(spec, c))
        throw invalid_codeword_error("extract_message: not a codeword of " +
                                     std::string(code_name_str(spec.name)));
    if (spec.name == CodeName::Hamming74) return Bits(c.begin(), c.begin() + spec.k);
    static const std::array<int, 8> info = polar_info_set_16();
    Bits u = detail::polar_transform_apply(c);
    Bits m(8);
    for (int i = 0; i < 8; ++i) m[i] = u[info[i]];
    return m;
}

}  // namespace prunedec
