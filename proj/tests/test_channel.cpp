#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "prunedec/channel.hpp"

using namespace prunedec;

TEST_CASE("modulate maps 0 to +1 and 1 to -1 with unit energy", "[channel]") {
    CHECK(modulate(Bits{0, 0, 0, 0, 0, 0, 0}) == std::vector<double>(7, 1.0));
    CHECK(modulate(Bits{1, 0, 1, 0}) == std::vector<double>{-1.0, 1.0, -1.0, 1.0});
    SplitRng rng(3);
    for (int t = 0; t < 100; ++t) {
        Bits c(11);
        for (auto& b : c) b = rng.next_bit();
        const auto s = modulate(c);
        double e = 0;
        for (double x : s) e += x * x;
        CHECK(e == Catch::Approx(11.0).epsilon(0));
    }
}

TEST_CASE("sigma follows the Eb/N0 formula", "[channel]") {
    CHECK(ChannelParams(0.0, 4.0 / 7.0).sigma == Catch::Approx(std::sqrt(7.0 / 8.0)).epsilon(1e-14));
    CHECK(ChannelParams(0.0, 4.0 / 7.0).sigma == Catch::Approx(0.93541434669348533).epsilon(1e-12));
    CHECK(ChannelParams(2.0, 0.5).sigma == Catch::Approx(0.79432823472428149).epsilon(1e-12));
    CHECK(ChannelParams::noiseless(0.5).sigma == 0.0);
    CHECK_THROWS_AS(ChannelParams(0.0, 0.0), std::invalid_argument);

    // Monotone decreasing in Eb/N0 at fixed rate.
    double prev = ChannelParams(-5.0, 0.5).sigma;
    for (double snr = -4.5; snr <= 10.0; snr += 0.5) {
        const double cur = ChannelParams(snr, 0.5).sigma;
        REQUIRE(cur < prev);
        prev = cur;
    }
}

TEST_CASE("noiseless channel is exact", "[channel]") {
    const CodeSpec spec = build_codebook(CodeName::Hamming74);
    SplitRng rng(5);
    const auto params = ChannelParams::noiseless(spec.rate);
    const Batch batch = sample_batch(spec, params, 64, rng);
    for (int w = 0; w < 64; ++w) {
        const auto s = modulate(batch.codewords[w]);
        for (int i = 0; i < spec.n; ++i) REQUIRE(batch.word(w)[i] == s[i]);
        REQUIRE(batch.codewords[w] == spec.encode(batch.messages[w]));
    }
}

TEST_CASE("noise statistics match sigma", "[channel]") {
    const CodeSpec spec = build_codebook(CodeName::Hamming74);
    const ChannelParams params(0.0, spec.rate);
    SplitRng rng(7);
    const int words = 150000;  // > 1e6 noise samples
    const Batch batch = sample_batch(spec, params, words, rng);

    const long long n_samp = static_cast<long long>(words) * spec.n;
    double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
    for (int w = 0; w < words; ++w) {
        const auto s = modulate(batch.codewords[w]);
        for (int i = 0; i < spec.n; ++i) {
            const double e = batch.word(w)[i] - s[i];
            m1 += e;
            m2 += e * e;
            m3 += e * e * e;
            m4 += e * e * e * e;
        }
    }
    m1 /= n_samp;
    m2 /= n_samp;
    m3 /= n_samp;
    m4 /= n_samp;

    const double sigma = params.sigma;
    CHECK(std::fabs(m1) < 3.0 * sigma / 1000.0);          // CLT bound at 1e6 samples
    CHECK(std::fabs(m2 - sigma * sigma) / (sigma * sigma) < 0.01);
    const double var = m2 - m1 * m1;
    const double skew = (m3 - 3 * m1 * var - m1 * m1 * m1) / std::pow(var, 1.5);
    const double kurt = m4 / (var * var) - 3.0;
    CHECK(std::fabs(skew) < 0.02);
    CHECK(std::fabs(kurt) < 0.05);
}

TEST_CASE("streams are reproducible and decorrelated", "[channel]") {
    SplitRng a(99, 4), b(99, 4), c(100, 4);
    double corr = 0, va = 0, vc = 0;
    for (int t = 0; t < 100000; ++t) {
        const double xa = a.next_gaussian();
        const double xb = b.next_gaussian();
        const double xc = c.next_gaussian();
        REQUIRE(xa == xb);
        corr += xa * xc;
        va += xa * xa;
        vc += xc * xc;
    }
    CHECK(std::fabs(corr / std::sqrt(va * vc)) < 0.01);
}

TEST_CASE("split streams are independent of parent draws", "[channel]") {
    SplitRng parent(123, 1);
    SplitRng child_before = parent.split(42);
    (void)parent.next_u64();
    // split() is const and keyed off the state at call time; a fresh parent
    // reproduces the same child.
    SplitRng parent2(123, 1);
    SplitRng child2 = parent2.split(42);
    for (int i = 0; i < 100; ++i) REQUIRE(child_before.next_u64() == child2.next_u64());
}

TEST_CASE("message bits are uniform", "[channel]") {
    const CodeSpec spec = build_codebook(CodeName::Polar168);
    SplitRng rng(21);
    const Batch batch = sample_batch(spec, ChannelParams(2.0, spec.rate), 50000, rng);
    std::vector<long> ones(spec.k, 0);
    for (const Bits& m : batch.messages)
        for (int i = 0; i < spec.k; ++i) ones[i] += m[i];
    for (int i = 0; i < spec.k; ++i) {
        const double p = static_cast<double>(ones[i]) / 50000.0;
        CHECK(std::fabs(p - 0.5) < 0.01);  // ~4.5 sigma at n=5e4
    }
}
