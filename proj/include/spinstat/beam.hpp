#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "spinstat/cond_prob.hpp"

namespace spinstat {

enum class Hypothesis { Uniform, Binomial };

std::string hypothesis_name(Hypothesis h);
Hypothesis parse_hypothesis(std::string_view text);
/// uniform -> (1/3, 1/3, 1/3), binomial -> (1/4, 1/2, 1/4), in cell order (+1, 0, -1).
SpinDistribution hypothesis_distribution(Hypothesis h);

/// Counter-based generator: draw i of stream `seed` is
/// splitmix64(splitmix64(seed) + (i + 1) * 0x9e3779b97f4a7c15). Any draw can be
/// computed independently, so results do not depend on how work is split.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed);
    std::uint64_t draw(std::uint64_t index) const noexcept;
    /// Top 53 bits of draw(index).
    std::uint64_t draw53(std::uint64_t index) const noexcept { return draw(index) >> 11; }

    static std::uint64_t mix(std::uint64_t z) noexcept;

private:
    std::uint64_t key_;
};

struct BeamConfig {
    std::uint64_t atoms = 0;
    Hypothesis hypothesis = Hypothesis::Binomial;
    std::uint64_t seed = 0;
    /// 0 picks hardware concurrency; 1 runs inline.
    unsigned threads = 0;
};

struct BeamResult {
    std::uint64_t atoms = 0;
    Hypothesis hypothesis = Hypothesis::Binomial;
    std::uint64_t seed = 0;
    std::array<std::uint64_t, 3> counts{};  // +1, 0, -1
    std::array<double, 3> proportions{};
};

/// Inverse-CDF sampling of each atom in cell order (+1, 0, -1); the 53-bit
/// uniform is compared against the exact rational cumulative boundaries.
BeamResult simulate_beam(const BeamConfig& cfg);

inline constexpr double kChiSquareCritical2Df5Pct = 5.991;

struct ChiSquareResult {
    double statistic = 0;
    int degrees_of_freedom = 2;
    double critical_value = kChiSquareCritical2Df5Pct;
    bool reject = false;
    std::array<double, 3> expected{};
    Hypothesis null_hypothesis = Hypothesis::Uniform;
};

/// Pearson chi-square of the observed counts against the null's expected
/// counts. Throws InsufficientSample if any expected count is below 5.
ChiSquareResult chi_square_discriminate(const BeamResult& result, Hypothesis null_hypothesis,
                                        double critical_value = kChiSquareCritical2Df5Pct);

}  // namespace spinstat
