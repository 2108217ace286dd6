#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "prunedec/codec.hpp"
#include "prunedec/rng.hpp"

namespace prunedec {

// BPSK symbol map, shared by every module: bit 0 -> +1, bit 1 -> -1.
inline constexpr double kBpskZero = 1.0;
inline constexpr double kBpskOne = -1.0;

// AWGN channel parameterized by Eb/N0. With unit symbol energy the per-
// dimension noise std is sigma = sqrt(1 / (2 R Eb/N0)). ebn0_db = +inf is
// the documented noiseless limit (sigma = 0).
struct ChannelParams {
    double ebn0_db = 0.0;
    double rate = 0.0;
    double sigma = 0.0;

    ChannelParams() = default;

    ChannelParams(double ebn0_db_, double rate_) : ebn0_db(ebn0_db_), rate(rate_) {
        if (!(rate > 0.0) || rate > 1.0) throw std::invalid_argument("ChannelParams: rate must be in (0,1]");
        if (std::isinf(ebn0_db) && ebn0_db > 0) {
            sigma = 0.0;
        } else {
            const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
            sigma = std::sqrt(1.0 / (2.0 * rate * ebn0));
        }
    }

    static ChannelParams noiseless(double rate_) {
        return ChannelParams(std::numeric_limits<double>::infinity(), rate_);
    }
};

inline std::vector<double> modulate(const Bits& c) {
    std::vector<double> s(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) s[i] = c[i] ? kBpskOne : kBpskZero;
    return s;
}

inline void awgn_inplace(std::vector<double>& s, const ChannelParams& params, SplitRng& rng) {
    if (params.sigma == 0.0) return;
    for (double& x : s) x += params.sigma * rng.next_gaussian();
}

inline std::vector<double> awgn(const std::vector<double>& s, const ChannelParams& params, SplitRng& rng) {
    std::vector<double> r = s;
    awgn_inplace(r, params, rng);
    return r;
}

// One Monte Carlo batch of transmissions. `received` is row-major
// (count x n) so it can feed the batched decoder forward pass directly.
struct Batch {
    std::vector<Bits> messages;
    std::vector<Bits> codewords;
    std::vector<double> received;
    int n = 0;

    const double* word(int i) const { return received.data() + static_cast<std::size_t>(i) * n; }
};

inline Batch sample_batch(const CodeSpec& spec, const ChannelParams& params, int count, SplitRng& rng) {
    if (count < 1) throw std::invalid_argument("sample_batch: count must be >= 1");
    Batch batch;
    batch.n = spec.n;
    batch.messages.reserve(count);
    batch.codewords.reserve(count);
    batch.received.resize(static_cast<std::size_t>(count) * spec.n);
    for (int w = 0; w < count; ++w) {
        // One u64 per word; message bits are i.i.d. uniform.
        const std::uint64_t v = rng.next_u64();
        Bits m(spec.k);
        for (int i = 0; i < spec.k; ++i) m[i] = static_cast<std::uint8_t>((v >> (spec.k - 1 - i)) & 1u);
        Bits c = spec.encode(m);
        double* r = batch.received.data() + static_cast<std::size_t>(w) * spec.n;
        for (int i = 0; i < spec.n; ++i) r[i] = c[i] ? kBpskOne : kBpskZero;
        if (params.sigma != 0.0)
            for (int i = 0; i < spec.n; ++i) r[i] += params.sigma * rng.next_gaussian();
        batch.messages.push_back(std::move(m));
        batch.codewords.push_back(std::move(c));
    }
    return batch;
}

}  // namespace prunedec
