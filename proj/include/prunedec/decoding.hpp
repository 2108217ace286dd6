#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "prunedec/channel.hpp"
#include "prunedec/codec.hpp"

namespace prunedec {

struct SemiSoftConfig {
    int b = 0;  // number of least-confident positions enumerated, 0 <= b <= n (<= 16)
};

// Threshold decoding at tau = 0.5; the boundary decodes to 1 (fixed convention).
inline Bits hard_decide(std::span<const double> p) {
    Bits out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] >= 0.5 ? 1 : 0;
    return out;
}

// The b indices whose probabilities are closest to 0.5, ties broken by
// ascending index; result sorted ascending.
inline std::vector<int> least_confident(std::span<const double> p, int b) {
    const int n = static_cast<int>(p.size());
    if (b < 0 || b > n) throw std::invalid_argument("least_confident: b out of [0, n]");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int c) { return std::fabs(p[a] - 0.5) < std::fabs(p[c] - 0.5); });
    idx.resize(b);
    std::sort(idx.begin(), idx.end());
    return idx;
}

// Semi-soft decision decoding: hard-decide everything except the b least
// confident positions, enumerate the 2^b completions, keep those that are
// codewords (hash lookup), and return the one closest in Euclidean distance
// to the reference pattern (hard bits as 0/1, soft values at the free
// positions). No valid completion falls back to plain hard decision.
inline Bits semi_soft_decode(std::span<const double> p, const CodeSpec& spec, const SemiSoftConfig& cfg) {
    if (p.size() != static_cast<std::size_t>(spec.n))
        throw std::invalid_argument("semi_soft_decode: length mismatch");
    if (cfg.b < 0 || cfg.b > spec.n || cfg.b > 16)
        throw std::invalid_argument("semi_soft_decode: b out of range");

    const std::vector<int> free_pos = least_confident(p, cfg.b);
    Bits hard = hard_decide(p);

    Bits cand = hard;
    Bits best;
    double best_d2 = 0.0;
    bool found = false;
    const std::uint32_t combos = 1u << cfg.b;
    // MSB-first assignment over ascending positions enumerates candidates in
    // lexicographic order, so the first minimum wins ties.
    for (std::uint32_t a = 0; a < combos; ++a) {
        for (int j = 0; j < cfg.b; ++j)
            cand[free_pos[j]] = static_cast<std::uint8_t>((a >> (cfg.b - 1 - j)) & 1u);
        if (!is_codeword(spec, cand)) continue;
        double d2 = 0.0;
        for (int j = 0; j < cfg.b; ++j) {
            const double diff = static_cast<double>(cand[free_pos[j]]) - p[free_pos[j]];
            d2 += diff * diff;
        }
        if (!found || d2 < best_d2) {
            found = true;
            best_d2 = d2;
            best = cand;
        }
    }
    return found ? best : hard;
}

// Exhaustive maximum-likelihood decoding: the codeword whose BPSK image is
// closest to r in Euclidean distance, i.e. the one maximizing the
// correlation sum_i r_i s_i. Ties go to the lexicographically smallest
// codeword.
inline Bits ml_decode(std::span<const double> r, const CodeSpec& spec) {
    if (r.size() != static_cast<std::size_t>(spec.n))
        throw std::invalid_argument("ml_decode: length mismatch");
    const Bits* best = nullptr;
    double best_score = 0.0;
    for (const Bits& c : spec.codebook) {
        double score = 0.0;
        for (int i = 0; i < spec.n; ++i) score += c[i] ? -r[i] : r[i];
        if (best == nullptr || score > best_score ||
            (score == best_score && std::lexicographical_compare(c.begin(), c.end(), best->begin(), best->end()))) {
            best = &c;
            best_score = score;
        }
    }
    return *best;
}

}  // namespace prunedec
