#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "generators.hpp"

using namespace spinstat;
using boost::multiprecision::cpp_rational;

namespace {

HalfInt h(int v) { return HalfInt(v); }

using Poly = std::vector<cpp_rational>;  // coefficients, lowest degree first

Poly mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly add(Poly a, const Poly& b, const cpp_rational& scale = 1) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
    return a;
}

}  // namespace

TEST(Conditional, UniformPrior) {
    ConditionalTable t = conditional_given_total(SpinDistribution::uniform(h(1)), SpinDistribution::uniform(h(1)), h(0));
    ASSERT_EQ(t.cells.size(), 3u);
    for (const auto& c : t.cells) EXPECT_EQ(c.p, Rational(1, 3));
}

TEST(Conditional, BinomialPrior) {
    const auto d = SpinDistribution::binomial();
    ConditionalTable t = conditional_given_total(d, d, h(0));
    EXPECT_EQ(t.at(h(0), h(0)), Rational(2, 3));
    EXPECT_EQ(t.at(h(1), h(-1)), Rational(1, 6));
    EXPECT_EQ(t.at(h(-1), h(1)), Rational(1, 6));
}

TEST(Conditional, TopTotalIsDeterministic) {
    gen::Rng rng(51);
    for (int i = 0; i < 20; ++i) {
        auto d1 = gen::spin_one_law(rng);
        auto d2 = gen::spin_one_law(rng);
        if (d1.probs()[0].is_zero() || d2.probs()[0].is_zero()) continue;
        ConditionalTable t = conditional_given_total(d1, d2, h(2));
        ASSERT_EQ(t.cells.size(), 1u);
        EXPECT_EQ(t.cells[0].p, Rational(1));
    }
}

TEST(Conditional, UndefinedWhenEventImpossible) {
    SpinDistribution only_up(h(1), {Rational(1), Rational(0), Rational(0)});
    try {
        conditional_given_total(only_up, only_up, h(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UndefinedConditional);
    }
    EXPECT_THROW(SpinDistribution(h(1), {Rational(1, 2), Rational(1, 2)}), Error);
    EXPECT_THROW(SpinDistribution(h(1), {Rational(1, 2), Rational(1, 2), Rational(1, 2)}), Error);
}

TEST(Conditional, PropertyExactSumAndSymmetry) {
    gen::Rng rng(52);
    for (int i = 0; i < 300; ++i) {
        auto d = gen::spin_one_law(rng);
        auto e = gen::spin_one_law(rng);
        for (int total = -2; total <= 2; ++total) {
            try {
                ConditionalTable t = conditional_given_total(d, e, h(total));
                Rational sum(0);
                for (const auto& c : t.cells) {
                    sum += c.p;
                    EXPECT_EQ(c.m1 + c.m2, h(total));
                    EXPECT_GE(c.p.sign(), 0);
                }
                EXPECT_EQ(sum, Rational(1));
                ConditionalTable s = conditional_given_total(d, d, h(total));
                for (const auto& c : s.cells) EXPECT_EQ(c.p, s.at(c.m2, c.m1));
            } catch (const Error& err) {
                EXPECT_EQ(err.code(), ErrorCode::UndefinedConditional);
            }
        }
    }
}

TEST(CompareCg, BinomialAndUniform) {
    CgComparison binomial = compare_with_cg(SpinDistribution::binomial(), h(0));
    EXPECT_EQ(binomial.max_deviation, Rational(0));
    CgComparison uniform = compare_with_cg(SpinDistribution::uniform(h(1)), h(0));
    EXPECT_EQ(uniform.max_deviation, Rational(1, 3));
    CgComparison m1 = compare_with_cg(SpinDistribution::binomial(), h(1));
    EXPECT_EQ(m1.max_deviation, Rational(0));
    for (const auto& c : m1.cells) EXPECT_EQ(c.cg_squared, Rational(1, 2));
    CgComparison lower = compare_with_cg(SpinDistribution::binomial(), h(0), h(0));
    EXPECT_EQ(lower.block, h(0));
}

// Symmetric family p(+1) = p(-1) = a, p(0) = 1 - 2a. Matching the (0,0) cell of
// the M = 0 conditional to 2/3 is 3 (1-2a)^2 = 2 ((1-2a)^2 + 2 a^2). Expand the
// polynomial independently and solve it.
TEST(CompareCg, AlgebraForcesQuarter) {
    const Poly zero_cell = mul(Poly{1, -2}, Poly{1, -2});
    const Poly event = add(zero_cell, mul(Poly{0, 1}, Poly{0, 1}), 2);
    Poly f = add(Poly{}, zero_cell, 3);
    f = add(f, event, -2);
    while (f.size() > 1 && f.back() == 0) f.pop_back();

    std::vector<cpp_rational> roots;
    if (f.size() == 2) {
        roots.push_back(-f[0] / f[1]);
    } else {
        ASSERT_EQ(f.size(), 3u);
        cpp_rational disc = f[1] * f[1] - 4 * f[2] * f[0];
        ASSERT_EQ(disc, 0) << "irrational roots not expected";
        roots.push_back(-f[1] / (2 * f[2]));
    }
    std::vector<cpp_rational> admissible;
    for (const auto& r : roots)
        if (r > 0 && r < cpp_rational(1, 2)) admissible.push_back(r);
    ASSERT_EQ(admissible.size(), 1u);
    EXPECT_EQ(admissible[0], cpp_rational(1, 4));

    auto library_match = [](Rational a) {
        SpinDistribution d(h(1), {a, Rational(1) - a - a, a});
        return compare_with_cg(d, h(0)).max_deviation.is_zero();
    };
    EXPECT_TRUE(library_match(Rational(1, 4)));
    for (int k = 1; k < 50; ++k)
        if (Rational(k, 100) != Rational(1, 4)) EXPECT_FALSE(library_match(Rational(k, 100))) << k;
}
