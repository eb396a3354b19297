#include "spinstat/perm_stats.hpp"

#include <algorithm>
#include <cmath>

#include "spinstat/error.hpp"

namespace spinstat {

namespace {

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Scalar in_mode(const Scalar& s, Mode mode) { return mode == Mode::Exact ? s : s.to_float(); }

void check_inputs(const std::vector<Ket>& states) {
    if (states.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one single-particle state");
    if (static_cast<int>(states.size()) > kMaxPermutationParticles)
        throw Error(ErrorCode::SizeLimit, "at most " + std::to_string(kMaxPermutationParticles) + " particles");
    for (const Ket& s : states) {
        if (s.particle_count() != 1) throw Error(ErrorCode::ShapeMismatch, "inputs must be single-particle kets");
        if (s.dims() != states.front().dims())
            throw Error(ErrorCode::ShapeMismatch, "single-particle states have different dimensions");
        if (s.mode() != states.front().mode())
            throw Error(ErrorCode::ModeMismatch, "single-particle states mix exact and float modes");
    }
}

// Adds coefficient * states[sigma(0)] (x) ... (x) states[sigma(n-1)] to `out`.
void add_product(KetBuilder& out, const std::vector<Ket>& states, const Permutation& sigma, const Scalar& coefficient) {
    const std::size_t n = states.size();
    BasisLabel label(n);
    auto recurse = [&](auto&& self, std::size_t slot, const Scalar& acc) -> void {
        if (slot == n) {
            out.add(label, acc);
            return;
        }
        for (const auto& [local, value] : states[static_cast<std::size_t>(sigma(static_cast<int>(slot)))].amplitudes()) {
            label[slot] = local.front();
            self(self, slot + 1, acc * value);
        }
    };
    recurse(recurse, 0, coefficient);
}

Ket permutation_sum(const std::vector<Ket>& states, const std::vector<Scalar>& coefficients) {
    const int n = static_cast<int>(states.size());
    const Mode mode = states.front().mode();
    KetBuilder builder(std::vector<int>(states.size(), states.front().dims().front()), mode);
    const auto perms = Permutation::all(n);
    for (std::size_t i = 0; i < perms.size(); ++i) {
        if (coefficients[i].is_zero()) continue;
        add_product(builder, states, perms[i], in_mode(coefficients[i], mode));
    }
    return builder.build();
}

std::vector<Scalar> uniform_coefficients(int n, bool signed_terms) {
    const ExactScalar norm = ExactScalar::sqrt(Rational(1, factorial(n)));
    std::vector<Scalar> out;
    for (const Permutation& p : Permutation::all(n)) out.emplace_back(signed_terms && p.sign() < 0 ? -norm : norm);
    return out;
}

}  // namespace

Ket antisymmetrize(const std::vector<Ket>& states) {
    check_inputs(states);
    return permutation_sum(states, uniform_coefficients(static_cast<int>(states.size()), true));
}

Ket symmetrize(const std::vector<Ket>& states) {
    check_inputs(states);
    Ket sum = permutation_sum(states, uniform_coefficients(static_cast<int>(states.size()), false));
    return sum.normalized();
}

// ---------------------------------------------------------------- expansions

namespace {

std::vector<SingleParticleState> checked(std::vector<SingleParticleState> states) {
    if (states.empty()) throw Error(ErrorCode::InvalidArgument, "expansion needs at least one state");
    if (static_cast<int>(states.size()) > kMaxPermutationParticles)
        throw Error(ErrorCode::SizeLimit, "at most " + std::to_string(kMaxPermutationParticles) + " particles");
    return states;
}

}  // namespace

PermutationExpansion PermutationExpansion::fermi_dirac(std::vector<SingleParticleState> states) {
    PermutationExpansion e{checked(std::move(states)), {}};
    e.coefficients = uniform_coefficients(static_cast<int>(e.states.size()), true);
    return e;
}

PermutationExpansion PermutationExpansion::bose_einstein(std::vector<SingleParticleState> states) {
    PermutationExpansion e{checked(std::move(states)), {}};
    e.coefficients = uniform_coefficients(static_cast<int>(e.states.size()), false);
    return e;
}

PermutationExpansion PermutationExpansion::mixed(std::vector<SingleParticleState> states) {
    PermutationExpansion e = bose_einstein(std::move(states));
    e.coefficients.back() = -e.coefficients.back();
    return e;
}

Ket PermutationExpansion::realize() const {
    const std::size_t n = states.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "expansion needs at least one state");
    if (static_cast<int>(n) > kMaxPermutationParticles)
        throw Error(ErrorCode::SizeLimit, "at most " + std::to_string(kMaxPermutationParticles) + " particles");
    if (coefficients.size() != static_cast<std::size_t>(factorial(static_cast<int>(n))))
        throw Error(ErrorCode::ShapeMismatch, "expansion needs one coefficient per permutation");

    const Ket& first = states.front().spinor;
    for (const auto& s : states) {
        if (s.spinor.particle_count() != 1 || s.spinor.dims() != first.dims())
            throw Error(ErrorCode::ShapeMismatch, "spinors must be single-particle kets of equal dimension");
        if (s.spinor.mode() != first.mode())
            throw Error(ErrorCode::ModeMismatch, "spinors mix exact and float modes");
    }

    // Exact coefficients must satisfy sum c^2 = 1 as a rational identity.
    bool exact = std::all_of(coefficients.begin(), coefficients.end(), [](const Scalar& c) { return c.is_exact(); });
    if (exact) {
        Rational total(0);
        for (const auto& c : coefficients) total += c.exact().squared();
        if (total != Rational(1)) throw Error(ErrorCode::NotNormalized, "expansion coefficients are not normalized");
    } else {
        double total = 0;
        for (const auto& c : coefficients) total += c.abs2();
        if (std::abs(total - 1.0) > kDefaultTolerance)
            throw Error(ErrorCode::NotNormalized, "expansion coefficients are not normalized");
    }

    std::vector<std::string> orbitals;
    for (const auto& s : states)
        if (std::find(orbitals.begin(), orbitals.end(), s.q_label) == orbitals.end()) orbitals.push_back(s.q_label);
    const int spinor_dim = first.dims().front();
    const int local_dim = static_cast<int>(orbitals.size()) * spinor_dim;

    std::vector<Ket> locals;
    for (const auto& s : states) {
        const int q = static_cast<int>(std::find(orbitals.begin(), orbitals.end(), s.q_label) - orbitals.begin());
        std::map<BasisLabel, Scalar> amps;
        for (const auto& [label, value] : s.spinor.amplitudes()) amps.emplace(BasisLabel{q * spinor_dim + label[0]}, value);
        locals.emplace_back(std::vector<int>{local_dim}, first.mode(), std::move(amps));
    }
    const Mode mode = exact && first.mode() == Mode::Exact ? Mode::Exact : Mode::Float;
    if (mode == Mode::Float)
        for (auto& k : locals) k = k.to_float();
    return permutation_sum(locals, coefficients);
}

// ---------------------------------------------------------------- classification

std::string statistics_name(StatisticsTag tag) {
    switch (tag) {
        case StatisticsTag::FermiDirac: return "fermi_dirac";
        case StatisticsTag::BoseEinstein: return "bose_einstein";
        case StatisticsTag::Neither: return "neither";
    }
    return "neither";
}

StatisticsClass classify_ket(const Ket& k) {
    const int n = static_cast<int>(k.particle_count());
    if (n > kMaxPermutationParticles)
        throw Error(ErrorCode::SizeLimit, "at most " + std::to_string(kMaxPermutationParticles) + " particles");
    StatisticsClass out;
    bool all_plus = true;
    bool all_minus = true;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::optional<int> s = permute_slots(k, Permutation::transposition(n, i, j)).equal_up_to_sign(k);
            if (k.is_zero()) s = std::nullopt;
            all_plus = all_plus && s == 1;
            all_minus = all_minus && s == -1;
            out.transpositions.push_back({{i, j}, s});
        }
    }
    if (k.is_zero()) {
        out.tag = StatisticsTag::FermiDirac;
        out.vanishing = true;
    } else if (all_plus) {
        out.tag = StatisticsTag::BoseEinstein;
    } else if (all_minus) {
        out.tag = StatisticsTag::FermiDirac;
    } else {
        out.tag = StatisticsTag::Neither;
    }
    return out;
}

StatisticsClass classify_statistics(const PermutationExpansion& e) { return classify_ket(e.realize()); }

std::map<Permutation, std::optional<int>> invariance_signature(const Ket& k) {
    const int n = static_cast<int>(k.particle_count());
    if (n > kMaxSignatureParticles)
        throw Error(ErrorCode::SizeLimit, "signature supports at most " + std::to_string(kMaxSignatureParticles) +
                                              " particles");
    std::map<Permutation, std::optional<int>> out;
    for (const Permutation& p : Permutation::all(n)) out.emplace(p, permute_slots(k, p).equal_up_to_sign(k));
    return out;
}

Rational ground_state_energy(const std::vector<Rational>& levels, int particle_count) {
    if (particle_count < 0) throw Error(ErrorCode::InvalidArgument, "particle count must be nonnegative");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i - 1] < levels[i])) throw Error(ErrorCode::InvalidArgument, "levels must be strictly ascending");
    if (static_cast<std::size_t>(particle_count) > 2 * levels.size())
        throw Error(ErrorCode::Capacity, "more particles than twice the number of levels");
    Rational total(0);
    for (int p = 0; p < particle_count; ++p) total += levels[static_cast<std::size_t>(p / 2)];
    return total;
}

}  // namespace spinstat
