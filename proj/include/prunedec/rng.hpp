#pragma once

#include <cmath>
#include <cstdint>

namespace prunedec {

// Counter-based random stream (splitmix64). The whole stream is a pure
// function of (seed, stream id, draw index), so independent sub-streams can
// be split off for parallel Monte Carlo workers and replayed exactly.
class SplitRng {
public:
    SplitRng() : SplitRng(0) {}

    explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(seed + kGolden) ^ mix(stream * 0x94d049bb133111ebull + 0xbf58476d1ce4e5b9ull)) {}

    // Independent stream derived from the current key; does not advance *this.
    SplitRng split(std::uint64_t substream) const {
        SplitRng r;
        r.state_ = mix(state_ ^ mix(substream + 0x9e3779b97f4a7c15ull));
        r.have_spare_ = false;
        return r;
    }

    std::uint64_t next_u64() { return mix(state_ += kGolden); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    std::uint8_t next_bit() { return static_cast<std::uint8_t>(next_u64() >> 63); }

    // Standard normal via Box-Muller; second deviate of each pair is cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_unit();  // (0, 1], keeps log finite
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace prunedec
