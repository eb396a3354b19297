// Acceptance harness: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "generators.hpp"

using namespace spinstat;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Verdict&)>& body) {
    Verdict o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0) o.require(secs < budget_s, "runtime " + std::to_string(secs) + " s over budget");
    if (!o.pass) ++failures;
    const std::string budget = budget_s > 0 ? ", budget " + std::to_string(static_cast<int>(budget_s)) + " s" : "";
    std::printf("%s criterion %d: %s (%.3f s%s)%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs, budget.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
}

Angle pi(int num, int den = 1) { return Angle::pi_times(Rational(num, den)); }
ExactScalar root(int num, int den = 1) { return ExactScalar::sqrt(Rational(num, den)); }

std::vector<SingleParticleState> orbitals(int n) {
    std::vector<SingleParticleState> out;
    for (int i = 0; i < n; ++i) out.push_back({"q" + std::to_string(i), Ket::basis({2}, {0})});
    return out;
}

// Brute-force signed sum over every basis label; sign by inversion count.
bool matches_signed_sum(const Ket& k, const std::vector<Ket>& states) {
    const int n = static_cast<int>(states.size());
    const int dim = states.front().dims().front();
    Rational fact(1);
    for (int i = 2; i <= n; ++i) fact *= Rational(i);
    const ExactScalar norm = root(1) / ExactScalar::sqrt(fact);

    BasisLabel label(static_cast<std::size_t>(n), 0);
    for (;;) {
        std::vector<int> sigma(static_cast<std::size_t>(n));
        std::iota(sigma.begin(), sigma.end(), 0);
        RadicalSum sum;
        do {
            int inversions = 0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) inversions += sigma[a] > sigma[b];
            ExactScalar term(inversions % 2 ? -1 : 1);
            for (int slot = 0; slot < n && !term.is_zero(); ++slot)
                term = term * states[static_cast<std::size_t>(sigma[slot])].amplitude({label[slot]}).exact();
            sum += term;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        const auto single = sum.as_single();
        if (!single) return false;
        if (k.amplitude(label).exact() != *single * norm) return false;

        int pos = n - 1;
        while (pos >= 0 && ++label[pos] == dim) label[pos--] = 0;
        if (pos < 0) return true;
    }
}

}  // namespace

int main(int argc, char** argv) {
    const std::string unit_tests = argc > 1 ? argv[1] : "";

    criterion(1, "singlet rotational invariance and ISC catalog", 1.0, [](Verdict& o) {
        const Ket singlet = make_state(NamedState::parse("singlet"));
        InvarianceResult exact = is_rotationally_invariant(singlet, kSpinHalfRate, 360);
        o.require(exact.invariant && exact.exact && exact.max_deviation == 0.0, "exact invariance with deviation 0");
        InvarianceResult flt = is_rotationally_invariant(singlet.to_float(), kSpinHalfRate, 360);
        o.require(flt.invariant && flt.max_deviation < 1e-12, "float invariance below 1e-12");
        const Ket excluded = make_state(NamedState::parse("excluded_combination"));
        o.require(is_rotationally_invariant(excluded).invariant, "excluded combination invariant");
        o.require(!is_isc(excluded).isc, "excluded combination not ISC");
        o.require(is_isc(singlet).isc, "singlet ISC");
        o.detail << " float max deviation " << flt.max_deviation;
    });

    criterion(2, "three-direction inequality violated at pi/3, pi/3, 2pi/3", 1.0, [](Verdict& o) {
        BellEvaluation e = bell_inequality(pi(1, 3), pi(1, 3), pi(2, 3));
        o.require(e.lhs.exact == Rational(3, 8) && e.rhs.exact == Rational(1, 4), "lhs 3/8, rhs 1/4");
        o.require(e.violated, "violated");
        o.require(*e.lhs.exact * Rational(2) == Rational(3, 4) && *e.rhs.exact * Rational(2) == Rational(1, 2),
                  "doubled form 3/4 vs 1/2");
        BellSearch s = bell_grid_search(24);
        bool found = false;
        for (const auto& v : s.violations)
            found = found || (v.gaps[0] == pi(1, 3) && v.gaps[1] == pi(1, 3) && v.gaps[2] == pi(2, 3));
        o.require(found, "grid search finds the triple");
        o.detail << " grid violations " << s.violations.size() << " of " << s.directions_checked << " direction triples";
    });

    criterion(3, "antisymmetrizer equals brute-force signed sum; duplicates vanish", 5.0, [](Verdict& o) {
        gen::Rng rng(20240603);
        int checked = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = gen::uniform_int(rng, 2, 5);
            const int dim = gen::uniform_int(rng, n, n + 2);
            auto states = gen::orthonormal_states(rng, n, dim);
            checked += matches_signed_sum(antisymmetrize(states), states);
        }
        o.require(checked == 100, "oracle agreement " + std::to_string(checked) + "/100");
        int vanished = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = gen::uniform_int(rng, 2, 5);
            auto states = gen::orthonormal_states(rng, n, gen::uniform_int(rng, n, n + 2));
            const int a = gen::uniform_int(rng, 0, n - 1);
            int b = gen::uniform_int(rng, 0, n - 2);
            b += b >= a;
            states[static_cast<std::size_t>(b)] = states[static_cast<std::size_t>(a)];
            vanished += antisymmetrize(states).is_zero();
        }
        o.require(vanished == 100, "duplicates vanish " + std::to_string(vanished) + "/100");
        o.detail << " oracle " << checked << "/100, duplicates " << vanished << "/100";
    });

    criterion(4, "statistics trichotomy and the coincident-lambda check", 0, [](Verdict& o) {
        for (int n = 2; n <= 4; ++n) {
            const std::string tag = " n=" + std::to_string(n);
            o.require(classify_statistics(PermutationExpansion::fermi_dirac(orbitals(n))).tag == StatisticsTag::FermiDirac,
                      "FD" + tag);
            o.require(classify_statistics(PermutationExpansion::bose_einstein(orbitals(n))).tag ==
                          StatisticsTag::BoseEinstein,
                      "BE" + tag);
            // Two particles admit no third class: sign-flipping one of two terms is FD.
            if (n >= 3)
                o.require(classify_statistics(PermutationExpansion::mixed(orbitals(n))).tag == StatisticsTag::Neither,
                          "mixed" + tag);
        }
        auto states = orbitals(3);
        states[1] = states[0];
        const Ket k = PermutationExpansion::mixed(states).realize();
        // Local basis index = orbital * 2 + spinor: q0+ -> 0, q2+ -> 2.
        o.require(!k.amplitude({0, 0, 2}).is_zero() && !k.amplitude({0, 2, 0}).is_zero(), "surviving terms");
        o.require(k.amplitude({2, 0, 0}).is_zero(), "cancelled term");
        bool invariant = true;
        for (const auto& [p, s] : invariance_signature(k)) invariant = invariant && s == 1;
        o.require(!invariant, "coincident mixed ket not permutation invariant");
        o.require(classify_ket(k).tag == StatisticsTag::Neither, "coincident mixed ket neither");
    });

    criterion(5, "Clebsch-Gordan and rescaled-ladder tables", 1.0, [](Verdict& o) {
        CgTable t = cg_decompose(HalfInt(1), HalfInt(1));
        auto cc = [&](const CgTable& tab, HalfInt s, HalfInt m, HalfInt m1, HalfInt m2) {
            const CoupledState* r = tab.find(s, m);
            return r ? r->coefficient(tab.basis1, tab.basis2, m1, m2) : ExactScalar(99);
        };
        o.require(cc(t, 2, 2, 1, 1) == ExactScalar(1) && cc(t, 2, -2, -1, -1) == ExactScalar(1), "|2,+-2>");
        o.require(cc(t, 2, 1, 1, 0) == root(1, 2) && cc(t, 2, 1, 0, 1) == root(1, 2), "|2,1>");
        o.require(cc(t, 2, -1, -1, 0) == root(1, 2) && cc(t, 2, -1, 0, -1) == root(1, 2), "|2,-1>");
        o.require(cc(t, 2, 0, 1, -1) == root(1, 6) && cc(t, 2, 0, 0, 0) == root(2, 3) && cc(t, 2, 0, -1, 1) == root(1, 6),
                  "|2,0>");

        CgTable h = cg_decompose(HalfInt::from_twice(1), HalfInt::from_twice(1));
        const CoupledState* singlet = h.find(HalfInt(0), HalfInt(0));
        o.require(singlet && singlet->expansion == make_state(NamedState::parse("singlet")), "|0,0> is the singlet");
        const CoupledState* up = h.find(HalfInt(1), HalfInt(1));
        const CoupledState* down = h.find(HalfInt(1), HalfInt(-1));
        o.require(up && down &&
                      (up->expansion + down->expansion).scaled(Scalar(root(1, 2))) ==
                          make_state(NamedState::parse("improper_singlet")),
                  "improper singlet from |1,+-1>");

        const ConstituentBasis photon = ConstituentBasis::photon();
        CgTable p = rescaled_ladder_table(photon);
        const CoupledState* top = p.find(HalfInt(2), HalfInt(2));
        const CoupledState* mid = p.find(HalfInt(2), HalfInt(0));
        o.require(top && mid, "photon rows present");
        if (top && mid) {
            CoupledState lowered = ladder_apply(LadderDirection::Lower, *top, photon, photon);
            o.require(lowered.expansion == mid->expansion.scaled(Scalar(ExactScalar(4))), "S-|2,2> = 4|2,0>");
            o.require(mid->coefficient(photon, photon, 1, -1) == root(1, 2) &&
                          mid->coefficient(photon, photon, -1, 1) == root(1, 2),
                      "|2,0> photon coefficients");
        }
        o.require(cc(p, 2, -2, -1, -1) == ExactScalar(1), "|2,-2> photon");
        o.require(cc(p, 0, 0, 1, -1) == root(1, 2) && cc(p, 0, 0, -1, 1) == -root(1, 2), "|0,0> photon");
    });

    criterion(6, "rescaled angular momentum algebra closes exactly", 0, [](Verdict& o) {
        const std::pair<int, HalfInt> cases[] = {{1, HalfInt::from_twice(1)}, {2, HalfInt(1)}, {4, HalfInt(2)}};
        for (const auto& [n, j] : cases) {
            RescaledAlgebraCheck r = verify_rescaled_algebra(n, j);
            o.require(r.residual_exactly_zero && r.max_residual == 0.0,
                      "residual n=" + std::to_string(n) + " j=" + j.to_string());
        }
        RescaledAlgebraCheck two = verify_rescaled_algebra(2, HalfInt(1));
        o.require(two.ladder_identity && two.ladder_factor == Rational(4), "S-+S+- = 4 L-+L+- at n=2");
    });

    criterion(7, "conditional probabilities given the total", 0, [](Verdict& o) {
        const SpinDistribution uniform = SpinDistribution::uniform(HalfInt(1));
        const SpinDistribution binomial = SpinDistribution::binomial();
        ConditionalTable u = conditional_given_total(uniform, uniform, HalfInt(0));
        o.require(u.at(1, -1) == Rational(1, 3) && u.at(0, 0) == Rational(1, 3) && u.at(-1, 1) == Rational(1, 3),
                  "uniform prior gives 1/3 each");
        ConditionalTable q = conditional_given_total(binomial, binomial, HalfInt(0));
        o.require(q.at(0, 0) == Rational(2, 3) && q.at(1, -1) == Rational(1, 6) && q.at(-1, 1) == Rational(1, 6),
                  "binomial prior gives 2/3 centre, 1/6 sides");
        o.require(compare_with_cg(binomial, HalfInt(0)).max_deviation == Rational(0), "binomial prior matches CG");
        o.require(compare_with_cg(uniform, HalfInt(0)).max_deviation == Rational(1, 3), "uniform prior off by 1/3");
    });

    criterion(8, "beam discrimination power and null calibration", 30.0, [](Verdict& o) {
        int power = 0;
        double mean_stat = 0;
        for (std::uint64_t run = 0; run < 500; ++run) {
            BeamResult r = simulate_beam({1000, Hypothesis::Binomial, 0x5eed0000ULL + run, 1});
            ChiSquareResult x = chi_square_discriminate(r, Hypothesis::Uniform);
            power += x.reject;
            mean_stat += x.statistic / 500;
        }
        int rejections = 0;
        for (std::uint64_t run = 0; run < 2000; ++run) {
            BeamResult r = simulate_beam({10000, Hypothesis::Uniform, 0xca11b000ULL + run, 0});
            rejections += chi_square_discriminate(r, Hypothesis::Uniform).reject;
        }
        const double rate = rejections / 2000.0;
        o.require(power >= 495, "power " + std::to_string(power) + "/500");
        o.require(rate >= 0.03 && rate <= 0.07, "null rejection rate " + std::to_string(rate));
        o.require(mean_stat > 110 && mean_stat < 145, "mean statistic near 125");
        o.detail << " power " << power << "/500, mean chi-square " << mean_stat << ", null rate " << rate;
    });

    criterion(9, "full unit-test suite", 60.0, [&](Verdict& o) {
        o.require(!unit_tests.empty(), "unit-test binary path given");
        if (unit_tests.empty()) return;
        const std::string cmd = "\"" + unit_tests + "\" --gtest_brief=1 > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        o.require(rc == 0, "unit tests exit " + std::to_string(rc));
    });

    return failures;
}
