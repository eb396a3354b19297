#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "spinstat/angle.hpp"
#include "spinstat/rational.hpp"

namespace spinstat {

/// Law of a single spin value m in {j, j-1, ..., -j}; probs[i] is P(m = j - i).
class SpinDistribution {
public:
    /// Throws InvalidArgument unless there are 2j+1 nonnegative entries summing to 1.
    SpinDistribution(HalfInt j, std::vector<Rational> probs);

    static SpinDistribution uniform(HalfInt j);
    /// (1/4, 1/2, 1/4) on spin 1.
    static SpinDistribution binomial();

    HalfInt j() const noexcept { return j_; }
    const std::vector<Rational>& probs() const noexcept { return probs_; }
    Rational at(HalfInt m) const;

private:
    HalfInt j_;
    std::vector<Rational> probs_;
};

struct ConditionalCell {
    HalfInt m1;
    HalfInt m2;
    Rational p;
};

struct ConditionalTable {
    HalfInt total;
    std::vector<ConditionalCell> cells;  // m1 descending

    Rational at(HalfInt m1, HalfInt m2) const;
};

/// P(M1 = m1, M2 = m2 | M1 + M2 = total) for independent M1 ~ d1, M2 ~ d2.
/// Throws UndefinedConditional when P(M1 + M2 = total) = 0.
ConditionalTable conditional_given_total(const SpinDistribution& d1, const SpinDistribution& d2, HalfInt total);

struct CgComparisonCell {
    HalfInt m1;
    HalfInt m2;
    Rational conditional;
    Rational cg_squared;
    Rational deviation;  // |conditional - cg_squared|
};

struct CgComparison {
    HalfInt total;
    HalfInt block;  // s of the |s, total> row compared against
    std::vector<CgComparisonCell> cells;
    Rational max_deviation;
};

/// Compares the conditional table for two copies of `d` against the squared
/// coefficients of |s, total>. s defaults to 2j (the top block).
CgComparison compare_with_cg(const SpinDistribution& d, HalfInt total, std::optional<HalfInt> block = std::nullopt);

}  // namespace spinstat
