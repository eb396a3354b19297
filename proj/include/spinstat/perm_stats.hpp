#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinstat/ket.hpp"

namespace spinstat {

inline constexpr int kMaxPermutationParticles = 6;
inline constexpr int kMaxSignatureParticles = 5;

/// (1/sqrt(n!)) sum_sigma sign(sigma) psi_sigma(1) (x) ... (x) psi_sigma(n).
/// Each input is a one-particle ket; all share dims and mode.
Ket antisymmetrize(const std::vector<Ket>& states);

/// Uniform permutation sum with duplicate labels merged, then normalized.
Ket symmetrize(const std::vector<Ket>& states);

/// lambda = (q, s): an orbital token and a spinor.
struct SingleParticleState {
    std::string q_label;
    Ket spinor;
};

/// sum_i c_i psi(lambda_sigma_i(1)) (x) ... with sigma_i running over
/// Permutation::all(n) in lexicographic order.
struct PermutationExpansion {
    std::vector<SingleParticleState> states;
    std::vector<Scalar> coefficients;  // n! entries

    std::size_t particle_count() const noexcept { return states.size(); }

    /// c_sigma = sign(sigma)/sqrt(n!).
    static PermutationExpansion fermi_dirac(std::vector<SingleParticleState> states);
    /// c_sigma = 1/sqrt(n!).
    static PermutationExpansion bose_einstein(std::vector<SingleParticleState> states);
    /// All +1/sqrt(n!) except the last permutation (the full reversal), which
    /// is negative. At n = 3 this is the mixed three-particle example.
    static PermutationExpansion mixed(std::vector<SingleParticleState> states);

    /// Local basis: distinct q labels in first-seen order, each tensored with
    /// the spinor basis; index = q_index * spinor_dim + spinor_index.
    Ket realize() const;
};

enum class StatisticsTag { FermiDirac, BoseEinstein, Neither };

std::string statistics_name(StatisticsTag tag);

struct StatisticsClass {
    StatisticsTag tag = StatisticsTag::Neither;
    /// The realized ket is zero (e.g. an antisymmetric expansion with a
    /// repeated lambda). Reported as FermiDirac with this flag set.
    bool vanishing = false;
    /// Sign picked up under each adjacent and non-adjacent transposition
    /// (i, j), i < j, in row order; nullopt when neither +1 nor -1.
    std::vector<std::pair<std::pair<int, int>, std::optional<int>>> transpositions;
};

StatisticsClass classify_statistics(const PermutationExpansion& e);

/// Same test on an already realized ket.
StatisticsClass classify_ket(const Ket& k);

/// For each permutation: +1 if permute_slots leaves k unchanged, -1 if it
/// negates k, nullopt otherwise.
std::map<Permutation, std::optional<int>> invariance_signature(const Ket& k);

/// Fill strictly ascending levels two particles at a time from the bottom.
Rational ground_state_energy(const std::vector<Rational>& levels, int particle_count);

}  // namespace spinstat
