#include "spinstat/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "spinstat/error.hpp"

namespace spinstat {

char outcome_symbol(Outcome o) noexcept { return o == Outcome::Plus ? '+' : '-'; }

namespace {

// The measurement basis vector for `outcome` at rotation angle c*theta, as
// exact scalars when possible.
std::optional<std::array<ExactScalar, 2>> exact_direction(const Angle& theta, Outcome outcome, const Rational& c) {
    auto cs = theta.scaled(c).exact_cos_sin();
    if (!cs) return std::nullopt;
    auto [cos, sin] = *cs;
    if (outcome == Outcome::Plus) return std::array{cos, sin};
    return std::array{-sin, cos};
}

std::array<double, 2> float_direction(const Angle& theta, Outcome outcome, const Rational& c) {
    double phi = theta.to_radians() * c.to_double();
    if (outcome == Outcome::Plus) return {std::cos(phi), std::sin(phi)};
    return {-std::sin(phi), std::cos(phi)};
}

constexpr double kVerdictSlack = 1e-12;

}  // namespace

Operator outcome_projector(const Angle& theta, Outcome outcome, const Rational& c) {
    if (auto u = exact_direction(theta, outcome, c)) {
        const auto& v = *u;
        return Operator(2, {v[0] * v[0], v[0] * v[1], v[1] * v[0], v[1] * v[1]});
    }
    auto v = float_direction(theta, outcome, c);
    return Operator(2, {Scalar::real(v[0] * v[0]), Scalar::real(v[0] * v[1]), Scalar::real(v[1] * v[0]),
                        Scalar::real(v[1] * v[1])});
}

Probability operator+(const Probability& a, const Probability& b) {
    if (a.exact && b.exact) return Probability::of(*a.exact + *b.exact);
    return Probability::approx(a.value + b.value);
}

bool ProbabilityTable::is_exact() const {
    for (const auto& e : entries_)
        if (!e.p.exact) return false;
    return true;
}

Probability ProbabilityTable::total() const {
    Probability sum = Probability::of(Rational(0));
    for (const auto& e : entries_) sum = sum + e.p;
    return sum;
}

Probability ProbabilityTable::at(const std::string& event) const {
    for (const auto& e : entries_)
        if (e.event == event) return e.p;
    return Probability::of(Rational(0));
}

ProbabilityTable joint_distribution(const Ket& k, const MeasurementConfig& m) {
    const std::size_t n = k.particle_count();
    if (m.angles.size() != n) throw Error(ErrorCode::ShapeMismatch, "need one measurement angle per particle");
    for (int d : k.dims())
        if (d != 2) throw Error(ErrorCode::ShapeMismatch, "joint_distribution needs two-dimensional slots");
    if (!k.is_normalized()) throw Error(ErrorCode::NotNormalized, "ket is not normalized");
    if (n > 20) throw Error(ErrorCode::SizeLimit, "too many particles for a full outcome table");

    const std::size_t cells = std::size_t{1} << n;
    auto outcome_of = [n](std::size_t cell, std::size_t slot) {
        return ((cell >> (n - 1 - slot)) & 1U) ? Outcome::Minus : Outcome::Plus;
    };
    auto event_name = [&](std::size_t cell) {
        std::string s;
        for (std::size_t slot = 0; slot < n; ++slot) s += outcome_symbol(outcome_of(cell, slot));
        return s;
    };

    if (k.mode() == Mode::Exact) {
        std::vector<std::array<std::array<ExactScalar, 2>, 2>> dirs(n);
        bool exact = true;
        for (std::size_t s = 0; s < n && exact; ++s) {
            auto plus = exact_direction(m.angles[s], Outcome::Plus, m.c);
            auto minus = exact_direction(m.angles[s], Outcome::Minus, m.c);
            if (!plus || !minus) exact = false;
            else dirs[s] = {*plus, *minus};
        }
        if (exact) {
            std::vector<ProbabilityEntry> entries;
            for (std::size_t cell = 0; cell < cells && exact; ++cell) {
                RadicalSum amp;
                for (const auto& [label, value] : k.amplitudes()) {
                    ExactScalar term = value.exact();
                    for (std::size_t s = 0; s < n; ++s)
                        term = term * dirs[s][outcome_of(cell, s) == Outcome::Plus ? 0 : 1]
                                          [static_cast<std::size_t>(label[s])];
                    amp += term;
                }
                auto p = (amp * amp).as_rational();
                if (!p) exact = false;
                else entries.push_back({event_name(cell), Probability::of(*p)});
            }
            if (exact) return ProbabilityTable(std::move(entries));
        }
    }

    std::vector<std::array<std::array<double, 2>, 2>> dirs(n);
    for (std::size_t s = 0; s < n; ++s)
        dirs[s] = {float_direction(m.angles[s], Outcome::Plus, m.c), float_direction(m.angles[s], Outcome::Minus, m.c)};
    std::vector<ProbabilityEntry> entries;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        Complex amp{};
        for (const auto& [label, value] : k.amplitudes()) {
            Complex term = value.to_complex();
            for (std::size_t s = 0; s < n; ++s)
                term *= dirs[s][outcome_of(cell, s) == Outcome::Plus ? 0 : 1][static_cast<std::size_t>(label[s])];
            amp += term;
        }
        entries.push_back({event_name(cell), Probability::approx(std::norm(amp))});
    }
    return ProbabilityTable(std::move(entries));
}

// ---------------------------------------------------------------- Bell

Rational bell_rate(BellMode mode) { return mode == BellMode::Half ? kSpinHalfRate : kPhotonRate; }

Probability pair_probability(const Angle& gap, const Rational& c) {
    Angle phi = gap.scaled(c);
    if (auto cs = phi.exact_cos_sin()) return Probability::of(cs->second.squared() * Rational(1, 2));
    double s = std::sin(phi.to_radians());
    return Probability::approx(0.5 * s * s);
}

namespace {

bool exceeds(const Probability& lhs, const Probability& rhs) {
    if (lhs.exact && rhs.exact) return *lhs.exact > *rhs.exact;
    return lhs.value > rhs.value + kVerdictSlack;
}

Probability difference(const Probability& a, const Probability& b) {
    if (a.exact && b.exact) return Probability::of(*a.exact - *b.exact);
    return Probability::approx(a.value - b.value);
}

}  // namespace

BellEvaluation bell_inequality(const Angle& theta_ij, const Angle& theta_jk, const Angle& theta_ki, BellMode mode) {
    for (const Angle* a : {&theta_ij, &theta_jk, &theta_ki})
        if (a->to_radians() < 0) throw Error(ErrorCode::InvalidArgument, "angle gaps must be nonnegative");
    const Rational c = bell_rate(mode);
    BellEvaluation e;
    e.gaps = {theta_ij, theta_jk, theta_ki};
    e.mode = mode;
    e.lhs = pair_probability(theta_ki, c);
    e.rhs = pair_probability(theta_jk, c) + pair_probability(theta_ij, c);
    e.violated = exceeds(e.lhs, e.rhs);
    e.margin = difference(e.lhs, e.rhs);
    return e;
}

BellSearch bell_grid_search(int divisions, BellMode mode) {
    if (divisions < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one direction");
    BellSearch search;
    std::set<std::tuple<Rational, Rational, Rational>> seen;
    for (int a = 0; a < divisions; ++a) {
        for (int b = 0; b < divisions; ++b) {
            for (int c = 0; c < divisions; ++c) {
                ++search.directions_checked;
                const Angle ti = Angle::pi_times(Rational(2 * a, divisions));
                const Angle tj = Angle::pi_times(Rational(2 * b, divisions));
                const Angle tk = Angle::pi_times(Rational(2 * c, divisions));
                const Angle ij = (tj - ti).abs();
                const Angle jk = (tk - tj).abs();
                const Angle ki = (ti - tk).abs();
                auto key = std::tuple{*ij.pi_multiple(), *jk.pi_multiple(), *ki.pi_multiple()};
                if (seen.contains(key)) continue;
                seen.insert(key);
                BellEvaluation e = bell_inequality(ij, jk, ki, mode);
                if (!e.violated) continue;
                if (!search.strongest || e.margin.value > search.strongest->margin.value + kVerdictSlack)
                    search.strongest = e;
                search.violations.push_back(std::move(e));
            }
        }
    }
    return search;
}

// ---------------------------------------------------------------- Wigner

namespace {

struct PairEvent {
    std::string name;
    int first_slot;
    char first_value;
    int second_slot;
    char second_value;
    Probability p;
};

bool matches(const std::string& triple, const PairEvent& e) {
    return triple[static_cast<std::size_t>(e.first_slot)] == e.first_value &&
           triple[static_cast<std::size_t>(e.second_slot)] == e.second_value;
}

std::string slot_event(int slot, char value) {
    static const char* dirs[] = {"s1(theta_i)", "s2(theta_j)", "s3(theta_k)"};
    return std::string(dirs[slot]) + "=" + value;
}

}  // namespace

WignerResult wigner_argument(const Angle& theta_i, const Angle& theta_j, const Angle& theta_k, WignerVariant variant,
                             const Rational& c) {
    WignerResult r;
    r.variant = variant;
    r.directions = {theta_i, theta_j, theta_k};
    for (int cell = 0; cell < 8; ++cell) {
        std::string t;
        for (int bit = 2; bit >= 0; --bit) t += ((cell >> bit) & 1) ? '-' : '+';
        r.outcomes.push_back(t);
    }

    const Angle ij = (theta_j - theta_i).abs();
    const Angle jk = (theta_k - theta_j).abs();
    const Angle ki = (theta_i - theta_k).abs();

    // The subset is {s1 = +, s3 = -} in both variants; particles 1 and 3 carry
    // the same state, so it has the correlated-pair probability at theta_ki.
    PairEvent subset{"", 0, '+', 2, '-', pair_probability(ki, c)};
    std::vector<PairEvent> cover;
    if (variant == WignerVariant::SameState) {
        r.subset = {"++-", "+--"};
        r.superset = {"++-", "+--", "-+-", "+-+"};
        cover.push_back({"", 1, '+', 2, '-', pair_probability(jk, c)});
        cover.push_back({"", 0, '+', 1, '-', pair_probability(ij, c)});
    } else {
        // Particle 2 is anticorrelated with 1 and 3: equal outcomes on (1,2)
        // or (2,3) occur with the same 1/2 sin^2 law.
        r.subset = {"++-", "+--"};
        r.superset = {"++-", "+--", "---", "+++"};
        cover.push_back({"", 0, '+', 1, '+', pair_probability(ij, c)});
        cover.push_back({"", 1, '-', 2, '-', pair_probability(jk, c)});
    }
    for (auto* e : {&subset, &cover[0], &cover[1]})
        e->name = slot_event(e->first_slot, e->first_value) + "," + slot_event(e->second_slot, e->second_value);

    // Verify by enumeration: subset == {t : matches(subset)}, superset is the
    // disjoint union of the two cover events, subset within superset.
    auto collect = [&](const PairEvent& e) {
        std::set<std::string> out;
        for (const auto& t : r.outcomes)
            if (matches(t, e)) out.insert(t);
        return out;
    };
    const std::set<std::string> sub(r.subset.begin(), r.subset.end());
    const std::set<std::string> sup(r.superset.begin(), r.superset.end());
    auto a = collect(cover[0]);
    auto b = collect(cover[1]);
    std::set<std::string> joined = a;
    joined.insert(b.begin(), b.end());
    bool disjoint = joined.size() == a.size() + b.size();
    bool contained = std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
    r.inclusion_verified = collect(subset) == sub && joined == sup && disjoint && contained;

    r.pair_events = ProbabilityTable({{subset.name, subset.p}, {cover[0].name, cover[0].p}, {cover[1].name, cover[1].p}});
    r.subset_probability = subset.p;
    r.superset_probability = cover[0].p + cover[1].p;
    r.consistent = !exceeds(r.subset_probability, r.superset_probability);
    return r;
}

}  // namespace spinstat
