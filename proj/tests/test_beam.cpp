#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"

using namespace spinstat;

namespace {

BeamResult run(std::uint64_t atoms, Hypothesis h, std::uint64_t seed, unsigned threads = 1) {
    return simulate_beam({atoms, h, seed, threads});
}

BeamResult exact_counts(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    BeamResult r;
    r.atoms = a + b + c;
    r.counts = {a, b, c};
    return r;
}

}  // namespace

TEST(Rng, PinnedStream) {
    // splitmix64 reference: the first output for state 0 is 0xe220a8397b1dcdaf.
    EXPECT_EQ(CounterRng::mix(0x9e3779b97f4a7c15ULL), 0xe220a8397b1dcdafULL);
    CounterRng a(42), b(42), c(43);
    EXPECT_EQ(a.draw(7), b.draw(7));
    EXPECT_NE(a.draw(7), c.draw(7));
}

TEST(Beam, ZeroAtoms) {
    BeamResult r = run(0, Hypothesis::Binomial, 1);
    EXPECT_EQ(r.counts, (std::array<std::uint64_t, 3>{0, 0, 0}));
}

TEST(Beam, ProportionsWithinFourStandardErrors) {
    for (Hypothesis h : {Hypothesis::Binomial, Hypothesis::Uniform}) {
        const std::uint64_t n = 100000;
        BeamResult r = run(n, h, 2024, 0);
        const auto law = hypothesis_distribution(h);
        std::uint64_t total = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            const double p = law.probs()[k].to_double();
            EXPECT_NEAR(r.proportions[k], p, 4 * std::sqrt(p * (1 - p) / n));
            total += r.counts[k];
        }
        EXPECT_EQ(total, n);
    }
}

TEST(Beam, PropertyDeterministicAcrossThreadCounts) {
    gen::Rng rng(61);
    for (int i = 0; i < 10; ++i) {
        const std::uint64_t seed = rng();
        const std::uint64_t n = static_cast<std::uint64_t>(gen::uniform_int(rng, 0, 300000));
        const Hypothesis h = gen::uniform_int(rng, 0, 1) ? Hypothesis::Binomial : Hypothesis::Uniform;
        BeamResult a = run(n, h, seed, 1);
        EXPECT_EQ(a.counts, run(n, h, seed, 1).counts);
        EXPECT_EQ(a.counts, run(n, h, seed, 3).counts);
        EXPECT_EQ(a.counts, run(n, h, seed, 8).counts);
    }
}

TEST(ChiSquare, PinnedStatistics) {
    ChiSquareResult same = chi_square_discriminate(exact_counts(250, 500, 250), Hypothesis::Binomial);
    EXPECT_EQ(same.statistic, 0.0);
    EXPECT_FALSE(same.reject);
    ChiSquareResult diff = chi_square_discriminate(exact_counts(250, 500, 250), Hypothesis::Uniform);
    EXPECT_NEAR(diff.statistic, 125.0, 1e-9);
    EXPECT_TRUE(diff.reject);
    EXPECT_EQ(diff.degrees_of_freedom, 2);
}

TEST(ChiSquare, InsufficientSample) {
    try {
        chi_square_discriminate(exact_counts(3, 4, 3), Hypothesis::Uniform);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientSample);
    }
}

TEST(ChiSquare, SmallSampleNullRarelyRejects) {
    int rejections = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed)
        rejections += chi_square_discriminate(run(30, Hypothesis::Uniform, seed), Hypothesis::Uniform).reject;
    EXPECT_LE(rejections, 50);
}
