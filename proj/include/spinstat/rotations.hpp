#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinstat/angle.hpp"
#include "spinstat/ket.hpp"

namespace spinstat {

/// Rotation rate presets: half-angle formulae for spin-1/2, full angle for photons.
inline const Rational kSpinHalfRate{1, 2};
inline const Rational kPhotonRate{1};

struct RotationParams {
    Angle theta;
    Rational c = kSpinHalfRate;
};

/// [[cos(c*theta), sin(c*theta)], [-sin(c*theta), cos(c*theta)]]. The matrix is
/// exact when c*theta is a multiple of pi/4 or pi/6, float otherwise.
Operator rotation_matrix(const RotationParams& p);

enum class StateTag { Singlet, ImproperSinglet, ExcludedCombination, Triplet, SpinJSinglet };

struct NamedState {
    StateTag tag = StateTag::Singlet;
    int triplet_m = 0;                        // Triplet only: +1, 0, -1
    HalfInt j = HalfInt::from_twice(1);       // SpinJSinglet only

    /// "singlet", "improper_singlet", "excluded_combination", "triplet(+1|0|-1)",
    /// "spin_j_singlet(j)".
    std::string name() const;
    /// Inverse of name(); also accepts "triplet" (m = 0) and "spin_j_singlet" (j = 1/2).
    static NamedState parse(std::string_view text);
};

/// Exact, normalized realization of a catalogued two-particle state.
Ket make_state(const NamedState& state);

/// `count` evenly spaced angles 2*pi*k/count plus pi/4, pi/3, pi/2, 2pi/3 when
/// not already present.
std::vector<Angle> invariance_grid(int count = 360);

struct InvarianceResult {
    bool invariant = false;
    double max_deviation = 0;
    /// Set when the verdict came from the exact polynomial identity rather than
    /// from floating-point evaluation on the grid.
    bool exact = false;
    std::optional<Angle> worst_angle;
};

/// Checks (R(theta) (x) R(theta))|k> = |k> on the grid. For exact kets the
/// deviation is a quadratic form in (cos, sin) whose coefficients are computed
/// exactly; when they vanish the deviation is exactly zero at every angle.
InvarianceResult is_rotationally_invariant(const Ket& k, const Rational& c = kSpinHalfRate, int grid = 360,
                                           double tol = kDefaultTolerance);

struct IscResult {
    bool isc = false;
    bool rotationally_invariant = false;
    /// Largest L1 distance between the rotated joint distribution and the
    /// nearest two-cell pattern {(+,+),(-,-)} or {(+,-),(-,+)} at 1/2 each.
    double max_violation = 0;
    std::optional<Angle> witness;
};

IscResult is_isc(const Ket& k, const Rational& c = kSpinHalfRate, int grid = 360, double tol = kDefaultTolerance);

/// |+> -> |->, |-> -> -|+> on one two-dimensional slot (0-based).
Ket conjugate_spinor_slot(const Ket& k, std::size_t slot);

struct SingletDecomposition {
    struct Pair {
        HalfInt m;             // m > 0; the pair spans |m,-m> and |-m,m>
        Ket component;         // |m,-m> + s|-m,m>, s = (-1)^(2m)
        ExactScalar weight;    // (-1)^(j-m) / sqrt(2j+1)
        bool antisymmetric;    // s == -1
    };

    HalfInt j;
    std::vector<Pair> pairs;
    std::optional<Ket> center;  // |0,0>, integer j only
    ExactScalar center_weight;

    /// Sum of weight * component over all parts.
    Ket resum() const;
};

SingletDecomposition decompose_spin_j_singlet(HalfInt j);

}  // namespace spinstat
