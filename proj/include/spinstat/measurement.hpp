#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spinstat/angle.hpp"
#include "spinstat/ket.hpp"
#include "spinstat/rotations.hpp"

namespace spinstat {

enum class Outcome { Plus, Minus };

char outcome_symbol(Outcome o) noexcept;

/// Rank-1 projector onto R(theta)^T e_outcome, i.e. onto (cos, sin) for '+'
/// and (-sin, cos) for '-' with the rotation angle c*theta.
Operator outcome_projector(const Angle& theta, Outcome outcome, const Rational& c = kSpinHalfRate);

struct MeasurementConfig {
    std::vector<Angle> angles;  // one per particle
    Rational c = kSpinHalfRate;
};

/// A probability that is exact when it could be computed as a rational.
struct Probability {
    double value = 0;
    std::optional<Rational> exact;

    static Probability of(const Rational& r) { return {r.to_double(), r}; }
    static Probability approx(double v) { return {v, std::nullopt}; }
};

Probability operator+(const Probability& a, const Probability& b);

struct ProbabilityEntry {
    std::string event;  // outcome tuple such as "+-" or a named event
    Probability p;
};

class ProbabilityTable {
public:
    ProbabilityTable() = default;
    explicit ProbabilityTable(std::vector<ProbabilityEntry> entries) : entries_(std::move(entries)) {}

    const std::vector<ProbabilityEntry>& entries() const noexcept { return entries_; }
    bool is_exact() const;
    Probability total() const;
    /// Probability of an event key; zero if absent.
    Probability at(const std::string& event) const;

private:
    std::vector<ProbabilityEntry> entries_;
};

/// Distribution of outcome tuples when particle i is measured along angles[i].
/// Exact when the ket is exact and every c*angle has exact cos/sin and the
/// resulting probabilities are rational.
ProbabilityTable joint_distribution(const Ket& k, const MeasurementConfig& m);

enum class BellMode { Half, Full };

Rational bell_rate(BellMode mode);

/// 1/2 sin^2(c * gap): the probability that a perfectly correlated pair gives
/// (+, -) when measured along directions `gap` apart.
Probability pair_probability(const Angle& gap, const Rational& c);

struct BellEvaluation {
    std::array<Angle, 3> gaps;  // theta_ij, theta_jk, theta_ki
    BellMode mode = BellMode::Half;
    Probability lhs;            // 1/2 sin^2(c theta_ki)
    Probability rhs;            // 1/2 sin^2(c theta_jk) + 1/2 sin^2(c theta_ij)
    bool violated = false;
    /// lhs - rhs, exact when both sides are.
    Probability margin;
};

BellEvaluation bell_inequality(const Angle& theta_ij, const Angle& theta_jk, const Angle& theta_ki,
                               BellMode mode = BellMode::Half);

struct BellSearch {
    std::vector<BellEvaluation> violations;  // distinct gap triples, in grid order
    std::size_t directions_checked = 0;
    std::optional<BellEvaluation> strongest;
};

/// Takes three measurement directions from {2*pi*k/divisions} and evaluates the
/// inequality on their gaps. divisions = 24 is the {k*pi/12} grid.
BellSearch bell_grid_search(int divisions = 24, BellMode mode = BellMode::Half);

enum class WignerVariant { SameState, SingletInclusive };

struct WignerResult {
    WignerVariant variant = WignerVariant::SameState;
    std::array<Angle, 3> directions;
    std::vector<std::string> outcomes;       // all 8 triples (s1(theta_i), s2(theta_j), s3(theta_k))
    std::vector<std::string> subset;         // the smaller event
    std::vector<std::string> superset;       // the larger event
    /// Pair events covering the superset, each with its correlation-law probability.
    ProbabilityTable pair_events;
    Probability subset_probability;
    Probability superset_probability;
    /// subset is contained in superset and the pair events partition the superset.
    bool inclusion_verified = false;
    /// P(subset) <= P(superset) holds for the assigned probabilities.
    bool consistent = false;
};

WignerResult wigner_argument(const Angle& theta_i, const Angle& theta_j, const Angle& theta_k,
                             WignerVariant variant = WignerVariant::SameState, const Rational& c = kSpinHalfRate);

}  // namespace spinstat
