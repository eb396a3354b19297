#include "spinstat/cond_prob.hpp"

#include "spinstat/error.hpp"
#include "spinstat/spin_algebra.hpp"

namespace spinstat {

SpinDistribution::SpinDistribution(HalfInt j, std::vector<Rational> probs) : j_(j), probs_(std::move(probs)) {
    if (j.twice() < 0) throw Error(ErrorCode::InvalidArgument, "j must be nonnegative");
    if (probs_.size() != static_cast<std::size_t>(j.twice() + 1))
        throw Error(ErrorCode::InvalidArgument, "distribution needs 2j+1 probabilities");
    Rational total(0);
    for (const Rational& p : probs_) {
        if (p.sign() < 0) throw Error(ErrorCode::InvalidArgument, "probabilities must be nonnegative");
        total += p;
    }
    if (total != Rational(1)) throw Error(ErrorCode::InvalidArgument, "probabilities must sum to 1");
}

SpinDistribution SpinDistribution::uniform(HalfInt j) {
    const int dim = j.twice() + 1;
    return SpinDistribution(j, std::vector<Rational>(static_cast<std::size_t>(dim), Rational(1, dim)));
}

SpinDistribution SpinDistribution::binomial() {
    return SpinDistribution(HalfInt(1), {Rational(1, 4), Rational(1, 2), Rational(1, 4)});
}

Rational SpinDistribution::at(HalfInt m) const {
    const int offset = j_.twice() - m.twice();
    if (offset < 0 || offset % 2 != 0 || offset / 2 >= static_cast<int>(probs_.size())) return Rational(0);
    return probs_[static_cast<std::size_t>(offset / 2)];
}

Rational ConditionalTable::at(HalfInt m1, HalfInt m2) const {
    for (const auto& c : cells)
        if (c.m1 == m1 && c.m2 == m2) return c.p;
    return Rational(0);
}

ConditionalTable conditional_given_total(const SpinDistribution& d1, const SpinDistribution& d2, HalfInt total) {
    ConditionalTable table{total, {}};
    Rational event(0);
    for (int i = 0; i <= d1.j().twice(); ++i) {
        const HalfInt m1 = d1.j() - HalfInt::from_twice(2 * i);
        const HalfInt m2 = total - m1;
        if (m2 > d2.j() || m2 < -d2.j() || (d2.j() - m2).twice() % 2 != 0) continue;
        const Rational joint = d1.probs()[static_cast<std::size_t>(i)] * d2.at(m2);
        table.cells.push_back({m1, m2, joint});
        event += joint;
    }
    if (event.is_zero())
        throw Error(ErrorCode::UndefinedConditional, "P(M1 + M2 = " + total.to_string() + ") is zero");
    for (auto& c : table.cells) c.p /= event;
    return table;
}

CgComparison compare_with_cg(const SpinDistribution& d, HalfInt total, std::optional<HalfInt> block) {
    const HalfInt s = block.value_or(d.j() + d.j());
    const ConditionalTable cond = conditional_given_total(d, d, total);
    const CgTable cg = cg_decompose(d.j(), d.j());
    const CoupledState* row = cg.find(s, total);
    if (!row) throw Error(ErrorCode::InvalidArgument, "no coupled state |" + s.to_string() + ", " + total.to_string() + ">");

    CgComparison out{total, s, {}, Rational(0)};
    for (const auto& c : cond.cells) {
        const Rational sq = row->coefficient(cg.basis1, cg.basis2, c.m1, c.m2).squared();
        const Rational dev = (c.p - sq).abs();
        out.cells.push_back({c.m1, c.m2, c.p, sq, dev});
        if (out.max_deviation < dev) out.max_deviation = dev;
    }
    return out;
}

}  // namespace spinstat
