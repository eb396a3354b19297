#include <gtest/gtest.h>

#include "generators.hpp"

using namespace spinstat;

namespace {

ExactScalar root(int num, int den = 1) { return ExactScalar::sqrt(Rational(num, den)); }
HalfInt half(int twice) { return HalfInt::from_twice(twice); }

ExactMatrix scalar_identity(int dim, const Rational& r) {
    ExactMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i).re = r;
    return m;
}

}  // namespace

TEST(AngularMomentum, PinnedMatrices) {
    AngularMomentumSet s = angular_momentum_matrices(half(1));
    EXPECT_EQ(s.lz.at(0, 0).re, RadicalSum(Rational(1, 2)));
    EXPECT_EQ(s.lz.at(1, 1).re, RadicalSum(Rational(-1, 2)));
    EXPECT_EQ(s.lplus.at(0, 1).re, RadicalSum(Rational(1)));
    AngularMomentumSet one = angular_momentum_matrices(HalfInt(1));
    EXPECT_EQ(one.lz.at(0, 0).re, RadicalSum(Rational(1)));
    EXPECT_TRUE(one.lz.at(1, 1).is_zero());
    EXPECT_EQ(one.lz.at(2, 2).re, RadicalSum(Rational(-1)));
    EXPECT_EQ(one.lminus.at(1, 0).re, RadicalSum(root(2)));
    EXPECT_EQ(angular_momentum_matrices(half(3)).casimir(), scalar_identity(4, Rational(15, 4)));
    EXPECT_THROW(angular_momentum_matrices(half(-1)), Error);
}

TEST(AngularMomentum, PropertyCasimirAndCommutators) {
    for (int twice = 0; twice <= 8; ++twice) {
        AngularMomentumSet s = angular_momentum_matrices(half(twice));
        const int dim = twice + 1;
        const Rational jj = half(twice).to_rational() * (half(twice).to_rational() + Rational(1));
        EXPECT_EQ(s.casimir(), scalar_identity(dim, jj));
        const ExactComplex i{{}, RadicalSum(Rational(1))};
        EXPECT_TRUE((commutator(s.lx, s.ly) - i * s.lz).is_zero());
        EXPECT_TRUE((commutator(s.lz, s.lplus) - s.lplus).is_zero());
    }
}

TEST(RescaledAlgebra, PinnedCases) {
    for (auto [n, twice] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{4, 4}}) {
        RescaledAlgebraCheck c = verify_rescaled_algebra(n, half(twice));
        EXPECT_TRUE(c.residual_exactly_zero) << n;
        EXPECT_EQ(c.max_residual, 0.0);
        EXPECT_TRUE(c.ladder_identity);
    }
    EXPECT_EQ(verify_rescaled_algebra(2, HalfInt(1)).ladder_factor, Rational(4));
    EXPECT_THROW(verify_rescaled_algebra(0, HalfInt(1)), Error);
}

TEST(RescaledAlgebra, PropertyZeroResidualSmallCases) {
    for (int n = 1; n <= 4; ++n)
        for (int twice = 0; twice <= 4; ++twice) EXPECT_TRUE(verify_rescaled_algebra(n, half(twice)).residual_exactly_zero);
}

TEST(Ladder, PhotonLoweringFromTop) {
    const ConstituentBasis photon = ConstituentBasis::photon();
    CoupledState top{HalfInt(2), HalfInt(2), Ket::basis({2, 2}, {0, 0})};
    CoupledState lowered = ladder_apply(LadderDirection::Lower, top, photon, photon);
    EXPECT_EQ(lowered.m, HalfInt(0));
    Ket expected({2, 2}, Mode::Exact, {{{0, 1}, root(1, 2)}, {{1, 0}, root(1, 2)}});
    EXPECT_EQ(lowered.expansion, expected.scaled(ExactScalar(4)));

    CoupledState bottom{HalfInt(2), HalfInt(-2), Ket::basis({2, 2}, {1, 1})};
    EXPECT_TRUE(ladder_apply(LadderDirection::Lower, bottom, photon, photon).expansion.is_zero());
}

TEST(Ladder, SpinHalfTripletLowering) {
    const ConstituentBasis b = ConstituentBasis::standard(half(1));
    CoupledState top{HalfInt(1), HalfInt(1), Ket::basis({2, 2}, {0, 0})};
    CoupledState l = ladder_apply(LadderDirection::Lower, top, b, b);
    EXPECT_EQ(l.expansion, make_state(NamedState::parse("triplet(0)")).scaled(root(2)));
}

TEST(Cg, DeuteronTopBlock) {
    CgTable t = cg_decompose(HalfInt(1), HalfInt(1));
    EXPECT_EQ(t.rows.size(), 9u);
    auto c = [&](int s, int m, int m1, int m2) { return t.find(HalfInt(s), HalfInt(m))->coefficient(t.basis1, t.basis2, HalfInt(m1), HalfInt(m2)); };
    EXPECT_EQ(c(2, 2, 1, 1), ExactScalar(1));
    EXPECT_EQ(c(2, 1, 1, 0), root(1, 2));
    EXPECT_EQ(c(2, 1, 0, 1), root(1, 2));
    EXPECT_EQ(c(2, 0, 0, 0), root(2, 3));
    EXPECT_EQ(c(2, 0, 1, -1), root(1, 6));
    EXPECT_EQ(c(2, 0, -1, 1), root(1, 6));
    EXPECT_EQ(c(2, -1, -1, 0), root(1, 2));
    EXPECT_EQ(c(2, -1, 0, -1), root(1, 2));
    EXPECT_EQ(c(2, -2, -1, -1), ExactScalar(1));
    EXPECT_EQ(c(0, 0, 1, -1), root(1, 3));
    EXPECT_EQ(c(0, 0, 0, 0), -root(1, 3));
    EXPECT_EQ(c(1, 0, 1, -1), root(1, 2));
}

TEST(Cg, SpinHalfPair) {
    CgTable t = cg_decompose(half(1), half(1));
    EXPECT_EQ(t.find(HalfInt(0), HalfInt(0))->expansion, make_state(NamedState{}));
    EXPECT_EQ(t.find(HalfInt(1), HalfInt(0))->expansion, make_state(NamedState::parse("triplet(0)")));
    EXPECT_THROW(cg_decompose(HalfInt(4), HalfInt(1)), Error);
}

TEST(Cg, PropertyTablesAreOrthonormalEigenstates) {
    for (int a = 0; a <= 6; ++a) {
        for (int b = 0; b <= 4; ++b) {
            CgTable t = cg_decompose(half(a), half(b));
            EXPECT_EQ(t.rows.size(), static_cast<std::size_t>((a + 1) * (b + 1)));
            for (const auto& r : t.rows) {
                EXPECT_EQ(*r.expansion.norm_squared_exact(), Rational(1));
                for (const auto& [label, v] : r.expansion.amplitudes())
                    EXPECT_EQ(t.basis1.m_of(label[0]) + t.basis2.m_of(label[1]), r.m);
                // Highest m1 coefficient positive.
                EXPECT_GT(r.expansion.amplitudes().begin()->second.exact().sign(), 0);
                for (const auto& q : t.rows) {
                    InnerProduct ip = inner_product(r.expansion, q.expansion);
                    ASSERT_FALSE(ip.inexact_fallback);
                    EXPECT_EQ(ip.value.exact(), ExactScalar(&r == &q ? 1 : 0));
                }
            }
        }
    }
}

TEST(Cg, PropertyCasimirEigenvalue) {
    // S^2 = S-S+ + Sz^2 + Sz, evaluated through the ladders.
    for (int a = 1; a <= 4; ++a) {
        CgTable t = cg_decompose(half(a), half(a));
        for (const auto& r : t.rows) {
            CoupledState up = ladder_apply(LadderDirection::Raise, CoupledState{half(100), r.m, r.expansion}, t.basis1, t.basis2);
            CoupledState back = ladder_apply(LadderDirection::Lower, CoupledState{half(100), up.m, up.expansion}, t.basis1, t.basis2);
            const Rational m = r.m.to_rational();
            Ket casimir = back.expansion + r.expansion.scaled(ExactScalar(m * m + m));
            const Rational s = r.s.to_rational();
            EXPECT_EQ(casimir, r.expansion.scaled(ExactScalar(s * (s + Rational(1)))));
        }
    }
}

TEST(Cg, PhotonTableMatchesRestrictedDeuteron) {
    CgTable photon = rescaled_ladder_table(ConstituentBasis::photon());
    ASSERT_EQ(photon.rows.size(), 4u);
    const CoupledState* p20 = photon.find(HalfInt(2), HalfInt(0));
    const CoupledState* p00 = photon.find(HalfInt(0), HalfInt(0));
    ASSERT_TRUE(p20 && p00);
    auto pc = [&](const CoupledState* r, int m1, int m2) { return r->coefficient(photon.basis1, photon.basis2, HalfInt(m1), HalfInt(m2)); };
    EXPECT_EQ(pc(p20, 1, -1), root(1, 2));
    EXPECT_EQ(pc(p20, -1, 1), root(1, 2));
    EXPECT_EQ(pc(p00, 1, -1), root(1, 2));
    EXPECT_EQ(pc(p00, -1, 1), -root(1, 2));

    // Restricting the deuteron |2,0> to m1, m2 in {1, -1} and renormalizing
    // gives the photon row.
    CgTable d = cg_decompose(HalfInt(1), HalfInt(1));
    const CoupledState* d20 = d.find(HalfInt(2), HalfInt(0));
    ExactScalar a = d20->coefficient(d.basis1, d.basis2, HalfInt(1), HalfInt(-1));
    ExactScalar b = d20->coefficient(d.basis1, d.basis2, HalfInt(-1), HalfInt(1));
    Ket restricted = Ket({2, 2}, Mode::Exact, {{{0, 1}, a}, {{1, 0}, b}}).normalized();
    EXPECT_EQ(restricted, p20->expansion);
}

TEST(Cg, PropertyPairSingletMatchesSpinJSinglet) {
    for (int twice = 1; twice <= 4; ++twice) {
        CgTable t = cg_decompose(half(twice), half(twice));
        NamedState s{StateTag::SpinJSinglet, 0, half(twice)};
        EXPECT_TRUE(t.find(HalfInt(0), HalfInt(0))->expansion.equal_up_to_sign(make_state(s))) << twice;
    }
}
