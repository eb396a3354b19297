#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"

using namespace spinstat;

namespace {

const ExactScalar kHalfRoot = ExactScalar::sqrt(Rational(1, 2));

Ket named(const char* tag) { return make_state(NamedState::parse(tag)); }

}  // namespace

TEST(RotationMatrix, PinnedValues) {
    EXPECT_EQ(rotation_matrix({Angle::pi_times(Rational(1)), kSpinHalfRate}),
              Operator(2, {ExactScalar(0), ExactScalar(1), ExactScalar(-1), ExactScalar(0)}));
    EXPECT_EQ(rotation_matrix({Angle::pi_times(Rational(1)), kPhotonRate}),
              Operator(2, {ExactScalar(-1), ExactScalar(0), ExactScalar(0), ExactScalar(-1)}));
    EXPECT_EQ(rotation_matrix({Angle::pi_times(Rational(0)), kSpinHalfRate}), Operator::identity(2));
    EXPECT_THROW(rotation_matrix({Angle::pi_times(Rational(1)), Rational(0)}), Error);
}

TEST(RotationMatrix, PropertyOrthogonalUnitDeterminant) {
    for (const Rational& c : {kSpinHalfRate, kPhotonRate, Rational(3, 2)}) {
        for (const Angle& theta : invariance_grid(360)) {
            Operator r = rotation_matrix({theta, c}).to_float();
            Operator rtr = r.transpose() * r;
            EXPECT_LT(rtr.max_abs_diff(Operator::identity(2, Mode::Float)), 1e-14);
            double det = r.at(0, 0).to_complex().real() * r.at(1, 1).to_complex().real() -
                         r.at(0, 1).to_complex().real() * r.at(1, 0).to_complex().real();
            EXPECT_NEAR(det, 1.0, 1e-14);
        }
    }
}

TEST(MakeState, PinnedAmplitudes) {
    EXPECT_EQ(named("singlet"), Ket({2, 2}, Mode::Exact, {{{0, 1}, kHalfRoot}, {{1, 0}, -kHalfRoot}}));
    const ExactScalar q(Rational(1, 2));
    EXPECT_EQ(named("excluded_combination"),
              Ket({2, 2}, Mode::Exact, {{{0, 0}, q}, {{1, 1}, q}, {{0, 1}, q}, {{1, 0}, -q}}));
    const Ket s2 = named("spin_j_singlet(2)");
    const ExactScalar r5 = ExactScalar::sqrt(Rational(1, 5));
    EXPECT_EQ(s2, Ket({5, 5}, Mode::Exact,
                      {{{0, 4}, r5}, {{1, 3}, -r5}, {{2, 2}, r5}, {{3, 1}, -r5}, {{4, 0}, r5}}));
    EXPECT_THROW(NamedState::parse("doublet"), Error);
}

TEST(MakeState, PropertyCatalogExactlyNormalized) {
    for (const char* tag : {"singlet", "improper_singlet", "excluded_combination", "triplet(+1)", "triplet(0)",
                            "triplet(-1)", "spin_j_singlet(1/2)", "spin_j_singlet(1)", "spin_j_singlet(3/2)",
                            "spin_j_singlet(3)"}) {
        Ket k = named(tag);
        ASSERT_TRUE(k.norm_squared_exact()) << tag;
        EXPECT_EQ(*k.norm_squared_exact(), Rational(1)) << tag;
        EXPECT_EQ(NamedState::parse(tag).name(), NamedState::parse(NamedState::parse(tag).name()).name());
    }
}

TEST(Invariance, SingletExactlyInvariant) {
    InvarianceResult r = is_rotationally_invariant(named("singlet"));
    EXPECT_TRUE(r.invariant);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.max_deviation, 0.0);
    InvarianceResult f = is_rotationally_invariant(named("singlet").to_float());
    EXPECT_TRUE(f.invariant);
    EXPECT_LT(f.max_deviation, 1e-12);
}

TEST(Invariance, ExcludedCombinationInvariant) {
    EXPECT_TRUE(is_rotationally_invariant(named("excluded_combination")).invariant);
}

TEST(Invariance, ProductStateNotInvariant) {
    InvarianceResult r = is_rotationally_invariant(named("triplet(+1)"));
    EXPECT_FALSE(r.invariant);
    EXPECT_GE(r.max_deviation, 1.0);
    // At theta = pi the half-angle rotation maps |++> to |-->.
    Ket pp = named("triplet(+1)");
    Operator rot = rotation_matrix({Angle::pi_times(Rational(1)), kSpinHalfRate});
    std::array<Operator, 2> ops{rot, rot};
    EXPECT_NEAR(apply_local(pp, ops).distance(pp), std::sqrt(2.0), 1e-12);
}

TEST(Invariance, ShapeErrors) {
    try {
        is_rotationally_invariant(Ket::basis({2, 2, 2}, {0, 0, 0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
    }
    EXPECT_THROW(is_isc(Ket::basis({3, 3}, {0, 0})), Error);
}

TEST(Isc, Catalog) {
    EXPECT_TRUE(is_isc(named("singlet")).isc);
    EXPECT_TRUE(is_isc(named("improper_singlet"), kPhotonRate).isc);
    IscResult excluded = is_isc(named("excluded_combination"));
    EXPECT_TRUE(excluded.rotationally_invariant);
    EXPECT_FALSE(excluded.isc);
    ASSERT_TRUE(excluded.witness);

    IscResult t0 = is_isc(named("triplet(0)"));
    EXPECT_FALSE(t0.isc);
    ASSERT_TRUE(t0.witness);
    EXPECT_NEAR(t0.witness->to_radians(), M_PI / 4, 1e-12);
}

TEST(Isc, PropertyIscImpliesInvariance) {
    for (const char* tag : {"singlet", "improper_singlet", "excluded_combination", "triplet(+1)", "triplet(0)",
                            "triplet(-1)"}) {
        for (const Rational& c : {kSpinHalfRate, kPhotonRate}) {
            Ket k = named(tag);
            if (is_isc(k, c, 120).isc) EXPECT_TRUE(is_rotationally_invariant(k, c, 120).invariant) << tag;
        }
    }
    gen::Rng rng(21);
    for (int i = 0; i < 30; ++i) {
        Ket k = gen::exact_qubit_pair(rng);
        if (is_isc(k, kSpinHalfRate, 60).isc) EXPECT_TRUE(is_rotationally_invariant(k, kSpinHalfRate, 60).invariant);
    }
}

TEST(Conjugation, MapsImproperSingletToSinglet) {
    auto sign = conjugate_spinor_slot(named("improper_singlet"), 1).equal_up_to_sign(named("singlet"));
    ASSERT_TRUE(sign);
    auto back = conjugate_spinor_slot(named("singlet"), 1).equal_up_to_sign(named("improper_singlet"));
    ASSERT_TRUE(back);
    EXPECT_THROW(conjugate_spinor_slot(named("singlet"), 2), Error);
    EXPECT_THROW(conjugate_spinor_slot(named("spin_j_singlet(1)"), 0), Error);
}

TEST(Conjugation, PropertyTwiceIsMinusIdentity) {
    gen::Rng rng(22);
    for (int i = 0; i < 100; ++i) {
        Ket k = gen::exact_qubit_pair(rng);
        std::size_t slot = static_cast<std::size_t>(gen::uniform_int(rng, 0, 1));
        EXPECT_EQ(conjugate_spinor_slot(conjugate_spinor_slot(k, slot), slot), -k);
    }
}

TEST(Conjugation, PropertyUnitaryUpToSign) {
    gen::Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        Ket a = gen::float_ket(rng, {2, 2});
        Ket b = gen::float_ket(rng, {2, 2});
        Ket ca = conjugate_spinor_slot(a, 1);
        Ket cb = conjugate_spinor_slot(b, 1);
        EXPECT_NEAR(ca.norm_squared(), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(inner_product(ca, cb).value.to_complex()),
                    std::abs(inner_product(a, b).value.to_complex()), 1e-12);
    }
}

TEST(Decomposition, PinnedShapes) {
    SingletDecomposition d2 = decompose_spin_j_singlet(HalfInt(2));
    ASSERT_EQ(d2.pairs.size(), 2u);
    EXPECT_EQ(d2.pairs[0].m, HalfInt(2));
    EXPECT_EQ(d2.pairs[1].m, HalfInt(1));
    EXPECT_TRUE(d2.center);

    SingletDecomposition half = decompose_spin_j_singlet(HalfInt::from_twice(1));
    ASSERT_EQ(half.pairs.size(), 1u);
    EXPECT_TRUE(half.pairs[0].antisymmetric);
    EXPECT_FALSE(half.center);

    SingletDecomposition one = decompose_spin_j_singlet(HalfInt(1));
    EXPECT_EQ(one.pairs.size(), 1u);
    EXPECT_TRUE(one.center);
    EXPECT_THROW(decompose_spin_j_singlet(HalfInt(0)), Error);
}

TEST(Decomposition, PropertyResumsExactly) {
    for (int twice = 1; twice <= 6; ++twice) {
        HalfInt j = HalfInt::from_twice(twice);
        NamedState s{StateTag::SpinJSinglet, 0, j};
        EXPECT_EQ(decompose_spin_j_singlet(j).resum(), make_state(s)) << j.to_string();
    }
}
