#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinstat/angle.hpp"
#include "spinstat/ket.hpp"
#include "spinstat/perm_stats.hpp"

namespace spinstat {

/// Line-oriented state description. Blank lines and text after '#' are ignored.
///
///   spin 1/2                  local spin of every slot (default 1/2)
///   state <q>                 opens a single-particle state with orbital q
///   <m> <amplitude>           one level of the open state
///   ket                       opens a multi-particle ket
///   <m1> <m2> ... <amplitude> one basis label of the ket
///   coefficient <perm> <amp>  expansion coefficient, perm like [2,1,3]
///
/// Levels are m values ("1", "0", "-1/2") or '+' / '-' for spin 1/2.
/// Amplitudes are exact: "1/2", "-1/sqrt(2)", "sqrt(2/3)".
struct StateFile {
    HalfInt spin = HalfInt::from_twice(1);
    std::vector<SingleParticleState> states;
    std::optional<Ket> ket;
    std::vector<std::pair<Permutation, ExactScalar>> coefficients;

    int local_dim() const { return spin.twice() + 1; }
    /// The single-particle spinors in file order.
    std::vector<Ket> spinors() const;
    /// An expansion from the listed coefficients; permutations not listed get 0.
    PermutationExpansion expansion() const;

    /// Throws Error(Parse) with the offending line number.
    static StateFile parse(std::string_view text);
    static StateFile load(const std::string& path);
};

}  // namespace spinstat
