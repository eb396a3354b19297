#include "spinstat/rotations.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "spinstat/error.hpp"

namespace spinstat {

Operator rotation_matrix(const RotationParams& p) {
    if (p.c.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "rotation rate c must be positive");
    Angle phi = p.theta.scaled(p.c);
    if (auto cs = phi.exact_cos_sin()) {
        auto [c, s] = *cs;
        return Operator(2, {c, s, -s, c});
    }
    double r = phi.to_radians();
    double c = std::cos(r);
    double s = std::sin(r);
    return Operator(2, {Scalar::real(c), Scalar::real(s), Scalar::real(-s), Scalar::real(c)});
}

// ---------------------------------------------------------------- catalog

std::string NamedState::name() const {
    switch (tag) {
        case StateTag::Singlet: return "singlet";
        case StateTag::ImproperSinglet: return "improper_singlet";
        case StateTag::ExcludedCombination: return "excluded_combination";
        case StateTag::Triplet: return "triplet(" + std::string(triplet_m > 0 ? "+1" : triplet_m < 0 ? "-1" : "0") + ")";
        case StateTag::SpinJSinglet: return "spin_j_singlet(" + j.to_string() + ")";
    }
    return "unknown";
}

NamedState NamedState::parse(std::string_view text) {
    auto arg_of = [&](std::string_view prefix) -> std::optional<std::string_view> {
        if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
        std::string_view rest = text.substr(prefix.size());
        if (rest.empty()) return std::string_view{};
        if (rest.front() != '(' || rest.back() != ')') return std::nullopt;
        return rest.substr(1, rest.size() - 2);
    };
    NamedState s;
    if (text == "singlet") return s;
    if (text == "improper_singlet") {
        s.tag = StateTag::ImproperSinglet;
        return s;
    }
    if (text == "excluded_combination") {
        s.tag = StateTag::ExcludedCombination;
        return s;
    }
    if (auto arg = arg_of("triplet")) {
        s.tag = StateTag::Triplet;
        if (*arg == "+1" || *arg == "1") s.triplet_m = 1;
        else if (*arg == "-1") s.triplet_m = -1;
        else if (arg->empty() || *arg == "0") s.triplet_m = 0;
        else throw Error(ErrorCode::UnknownTag, "triplet m must be +1, 0 or -1");
        return s;
    }
    if (auto arg = arg_of("spin_j_singlet")) {
        s.tag = StateTag::SpinJSinglet;
        if (!arg->empty()) s.j = HalfInt::parse(*arg);
        return s;
    }
    throw Error(ErrorCode::UnknownTag, "unknown state tag '" + std::string(text) + "'");
}

namespace {

ExactScalar alternating(int exponent) { return exponent % 2 == 0 ? ExactScalar(1) : ExactScalar(-1); }

Ket spin_j_singlet(HalfInt j) {
    if (j.twice() < 1) throw Error(ErrorCode::InvalidArgument, "spin-j singlet needs j >= 1/2");
    const int dim = j.twice() + 1;
    const ExactScalar norm = ExactScalar::sqrt(Rational(1, dim));
    std::map<BasisLabel, Scalar> amps;
    // Level index i carries m = j - i; its partner -m has index dim-1-i.
    for (int i = 0; i < dim; ++i) amps.emplace(BasisLabel{i, dim - 1 - i}, alternating(i) * norm);
    return Ket({dim, dim}, Mode::Exact, std::move(amps));
}

}  // namespace

Ket make_state(const NamedState& state) {
    const ExactScalar h = ExactScalar::sqrt(Rational(1, 2));
    const ExactScalar q(Rational(1, 2));
    const std::vector<int> qubits{2, 2};
    switch (state.tag) {
        case StateTag::Singlet:
            return Ket(qubits, Mode::Exact, {{{0, 1}, h}, {{1, 0}, -h}});
        case StateTag::ImproperSinglet:
            return Ket(qubits, Mode::Exact, {{{0, 0}, h}, {{1, 1}, h}});
        case StateTag::ExcludedCombination:
            return Ket(qubits, Mode::Exact, {{{0, 0}, q}, {{1, 1}, q}, {{0, 1}, q}, {{1, 0}, -q}});
        case StateTag::Triplet:
            if (state.triplet_m == 1) return Ket::basis(qubits, {0, 0});
            if (state.triplet_m == -1) return Ket::basis(qubits, {1, 1});
            if (state.triplet_m == 0) return Ket(qubits, Mode::Exact, {{{0, 1}, h}, {{1, 0}, h}});
            throw Error(ErrorCode::UnknownTag, "triplet m must be +1, 0 or -1");
        case StateTag::SpinJSinglet:
            return spin_j_singlet(state.j);
    }
    throw Error(ErrorCode::UnknownTag, "unknown state tag");
}

// ---------------------------------------------------------------- invariance

std::vector<Angle> invariance_grid(int count) {
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one angle");
    std::vector<Angle> grid;
    grid.reserve(static_cast<std::size_t>(count) + 4);
    for (int k = 0; k < count; ++k) grid.push_back(Angle::pi_times(Rational(2 * k, count)));
    for (Rational extra : {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3)}) {
        Angle a = Angle::pi_times(extra);
        if (std::find(grid.begin(), grid.end(), a) == grid.end()) grid.push_back(a);
    }
    return grid;
}

namespace {

void require_qubit_pair(const Ket& k) {
    if (k.dims() != std::vector<int>{2, 2})
        throw Error(ErrorCode::ShapeMismatch, "expected a two-particle ket with two-dimensional slots");
}

// J = [[0, 1], [-1, 0]]; R(phi) = cos(phi) I + sin(phi) J.
Operator quarter_turn() { return Operator(2, {ExactScalar(0), ExactScalar(1), ExactScalar(-1), ExactScalar(0)}); }

Ket rotate_pair(const Ket& k, const Operator& r) {
    std::array<Operator, 2> ops{r, r};
    return apply_local(k, ops);
}

Operator float_rotation(const Angle& theta, const Rational& c) {
    double phi = theta.to_radians() * c.to_double();
    double cs = std::cos(phi);
    double sn = std::sin(phi);
    return Operator(2, {Scalar::real(cs), Scalar::real(sn), Scalar::real(-sn), Scalar::real(cs)});
}

}  // namespace

InvarianceResult is_rotationally_invariant(const Ket& k, const Rational& c, int grid, double tol) {
    require_qubit_pair(k);
    if (c.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "rotation rate c must be positive");
    InvarianceResult result;
    const auto angles = invariance_grid(grid);

    if (k.mode() == Mode::Exact) {
        // (R (x) R)k - k = xy * cross + y^2 * twist on the unit circle, with
        // cross = (I(x)J + J(x)I)k and twist = (J(x)J)k - k. Both vanish
        // exactly iff the ket is invariant at every angle.
        const Operator j = quarter_turn();
        const Scalar one(ExactScalar(1));
        KetBuilder cross(k.dims(), Mode::Exact);
        cross.add(j.apply(k, 0), one);
        cross.add(j.apply(k, 1), one);
        KetBuilder twist(k.dims(), Mode::Exact);
        twist.add(j.apply(j.apply(k, 0), 1), one);
        twist.add(k, -one);
        auto vanishes = [](const KetBuilder& b) {
            return std::all_of(b.exact_sums().begin(), b.exact_sums().end(),
                               [](const auto& entry) { return entry.second.is_zero(); });
        };
        if (vanishes(cross) && vanishes(twist)) {
            result.invariant = true;
            result.exact = true;
            return result;
        }
    }

    const Ket kf = k.to_float();
    for (const Angle& theta : angles) {
        double d = rotate_pair(kf, float_rotation(theta, c)).distance(kf);
        if (!result.worst_angle || d > result.max_deviation) {
            result.max_deviation = d;
            result.worst_angle = theta;
        }
    }
    result.invariant = result.max_deviation < tol;
    return result;
}

IscResult is_isc(const Ket& k, const Rational& c, int grid, double tol) {
    require_qubit_pair(k);
    IscResult result;
    const InvarianceResult inv = is_rotationally_invariant(k, c, grid, tol);
    result.rotationally_invariant = inv.invariant;

    const Ket kf = k.to_float();
    std::optional<Angle> worst;
    for (const Angle& theta : invariance_grid(grid)) {
        const Ket rotated = rotate_pair(kf, float_rotation(theta, c));
        std::array<double, 4> p{};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) p[static_cast<std::size_t>(2 * a + b)] = rotated.amplitude({a, b}).abs2();
        // Cells: 0 = (+,+), 1 = (+,-), 2 = (-,+), 3 = (-,-).
        double correlated = std::fabs(p[0] - 0.5) + std::fabs(p[3] - 0.5) + p[1] + p[2];
        double anticorrelated = std::fabs(p[1] - 0.5) + std::fabs(p[2] - 0.5) + p[0] + p[3];
        double v = std::min(correlated, anticorrelated);
        if (!worst || v > result.max_violation) {
            result.max_violation = v;
            worst = theta;
        }
    }
    result.isc = inv.invariant && result.max_violation < tol;
    if (!result.isc) result.witness = result.max_violation >= tol ? worst : inv.worst_angle;
    return result;
}

Ket conjugate_spinor_slot(const Ket& k, std::size_t slot) {
    if (slot >= k.particle_count()) throw Error(ErrorCode::ShapeMismatch, "slot out of range");
    if (k.dims()[slot] != 2) throw Error(ErrorCode::ShapeMismatch, "spinor conjugation needs a two-dimensional slot");
    // Columns: |+> -> |->, |-> -> -|+>.
    const Operator eps(2, {ExactScalar(0), ExactScalar(-1), ExactScalar(1), ExactScalar(0)});
    return (k.mode() == Mode::Exact ? eps : eps.to_float()).apply(k, slot);
}

// ---------------------------------------------------------------- decomposition

Ket SingletDecomposition::resum() const {
    const int dim = j.twice() + 1;
    KetBuilder builder({dim, dim}, Mode::Exact);
    for (const auto& pair : pairs) builder.add(pair.component, pair.weight);
    if (center) builder.add(*center, center_weight);
    return builder.build();
}

SingletDecomposition decompose_spin_j_singlet(HalfInt j) {
    if (j.twice() < 1) throw Error(ErrorCode::InvalidArgument, "spin-j singlet needs j >= 1/2");
    SingletDecomposition out;
    out.j = j;
    const int dim = j.twice() + 1;
    const ExactScalar norm = ExactScalar::sqrt(Rational(1, dim));
    // Index i <-> m = j - i; positive m are the indices with 2i < 2j.
    for (int i = 0; 2 * i < j.twice(); ++i) {
        const HalfInt m = j - HalfInt::from_twice(2 * i);
        const int partner = dim - 1 - i;
        const ExactScalar exchange = alternating(m.twice());
        SingletDecomposition::Pair pair{
            m,
            Ket({dim, dim}, Mode::Exact, {{{i, partner}, ExactScalar(1)}, {{partner, i}, exchange}}),
            alternating(i) * norm,
            exchange.sign() < 0,
        };
        out.pairs.push_back(std::move(pair));
    }
    if (j.is_integer()) {
        const int mid = dim / 2;
        out.center = Ket::basis({dim, dim}, {mid, mid});
        out.center_weight = alternating(mid) * norm;
    }
    return out;
}

}  // namespace spinstat
