#include "spinstat/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinstat/error.hpp"

namespace spinstat {

double ExactComplex::abs() const { return std::hypot(re.to_double(), im.to_double()); }

ExactMatrix ExactMatrix::identity(int dim) {
    ExactMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i).re = Rational(1);
    return m;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix out(a.dim_);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) out.entries_[i] = a.entries_[i] + b.entries_[i];
    return out;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix out(a.dim_);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) out.entries_[i] = a.entries_[i] - b.entries_[i];
    return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.dim_ != b.dim_) throw Error(ErrorCode::ShapeMismatch, "matrix dimensions differ");
    ExactMatrix out(a.dim_);
    for (int r = 0; r < a.dim_; ++r)
        for (int k = 0; k < a.dim_; ++k) {
            if (a.at(r, k).is_zero()) continue;
            for (int c = 0; c < a.dim_; ++c)
                if (!b.at(k, c).is_zero()) out.at(r, c) = out.at(r, c) + a.at(r, k) * b.at(k, c);
        }
    return out;
}

ExactMatrix operator*(const ExactComplex& s, const ExactMatrix& m) {
    ExactMatrix out(m.dim_);
    for (std::size_t i = 0; i < m.entries_.size(); ++i) out.entries_[i] = s * m.entries_[i];
    return out;
}

bool ExactMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const ExactComplex& e) { return e.is_zero(); });
}

double ExactMatrix::max_abs() const {
    double m = 0;
    for (const auto& e : entries_) m = std::max(m, e.abs());
    return m;
}

std::string ExactMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int r = 0; r < dim_; ++r) {
        os << (r ? ", [" : "[");
        for (int c = 0; c < dim_; ++c) {
            const auto& e = at(r, c);
            if (c) os << ", ";
            if (e.im.is_zero()) os << e.re.to_string();
            else if (e.re.is_zero()) os << '(' << e.im.to_string() << ")*i";
            else os << e.re.to_string() << " + (" << e.im.to_string() << ")*i";
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) { return a * b - b * a; }

// ---------------------------------------------------------------- L matrices

namespace {

constexpr int kMaxMatrixTwiceJ = 40;

// sqrt((j - m)(j + m + 1)): the raising amplitude from |j, m>.
ExactScalar raise_amplitude(HalfInt j, HalfInt m) {
    Rational a = (j - m).to_rational();
    Rational b = (j + m).to_rational() + Rational(1);
    if (a.sign() <= 0 || b.sign() <= 0) return ExactScalar(0);
    return ExactScalar::sqrt(a * b);
}

ExactScalar lower_amplitude(HalfInt j, HalfInt m) {
    Rational a = (j + m).to_rational();
    Rational b = (j - m).to_rational() + Rational(1);
    if (a.sign() <= 0 || b.sign() <= 0) return ExactScalar(0);
    return ExactScalar::sqrt(a * b);
}

ExactComplex real(const ExactScalar& s) { return {RadicalSum(s), {}}; }
ExactComplex imag(const Rational& s) { return {{}, RadicalSum(s)}; }

}  // namespace

ExactMatrix AngularMomentumSet::casimir() const { return lx * lx + ly * ly + lz * lz; }

AngularMomentumSet angular_momentum_matrices(HalfInt j) {
    if (j.twice() < 0) throw Error(ErrorCode::InvalidArgument, "j must be nonnegative");
    if (j.twice() > kMaxMatrixTwiceJ) throw Error(ErrorCode::SizeLimit, "j is too large for dense matrices");
    const int dim = j.twice() + 1;
    AngularMomentumSet set{j, ExactMatrix(dim), ExactMatrix(dim), ExactMatrix(dim), ExactMatrix(dim),
                           ExactMatrix(dim)};
    for (int i = 0; i < dim; ++i) {
        const HalfInt m = j - HalfInt::from_twice(2 * i);
        set.lz.at(i, i) = real(ExactScalar(m.to_rational()));
        if (i > 0) set.lplus.at(i - 1, i) = real(raise_amplitude(j, m));
        if (i + 1 < dim) set.lminus.at(i + 1, i) = real(lower_amplitude(j, m));
    }
    // L_x = (L+ + L-)/2, L_y = -(i/2)(L+ - L-).
    set.lx = real(ExactScalar(Rational(1, 2))) * (set.lplus + set.lminus);
    set.ly = imag(Rational(-1, 2)) * (set.lplus - set.lminus);
    return set;
}

RescaledAlgebraCheck verify_rescaled_algebra(int n, HalfInt j) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "scale n must be at least 1");
    const AngularMomentumSet l = angular_momentum_matrices(j);
    const ExactComplex scale = real(ExactScalar(n));
    const ExactMatrix sx = scale * l.lx;
    const ExactMatrix sy = scale * l.ly;
    const ExactMatrix sz = scale * l.lz;
    const ExactComplex i_n = imag(Rational(n));

    RescaledAlgebraCheck out;
    out.n = n;
    out.j = j;
    out.residual_exactly_zero = true;
    for (const ExactMatrix& r : {commutator(sx, sy) - i_n * sz, commutator(sy, sz) - i_n * sx,
                                 commutator(sz, sx) - i_n * sy}) {
        out.max_residual = std::max(out.max_residual, r.max_abs());
        out.residual_exactly_zero = out.residual_exactly_zero && r.is_zero();
    }

    const ExactMatrix splus = scale * l.lplus;
    const ExactMatrix sminus = scale * l.lminus;
    out.ladder_factor = Rational(n) * Rational(n);
    const ExactComplex factor = real(ExactScalar(out.ladder_factor));
    out.ladder_identity = sminus * splus == factor * (l.lminus * l.lplus) &&
                          splus * sminus == factor * (l.lplus * l.lminus);
    return out;
}

// ---------------------------------------------------------------- ladders

int ConstituentBasis::dim() const {
    if (step < 1 || j.twice() < 0 || j.twice() % step != 0)
        throw Error(ErrorCode::InvalidArgument, "basis step must divide 2j");
    return j.twice() / step + 1;
}

HalfInt ConstituentBasis::m_of(int index) const { return j - HalfInt::from_twice(2 * step * index); }

std::optional<int> ConstituentBasis::index_of(HalfInt m) const {
    const int offset = j.twice() - m.twice();
    if (offset < 0 || offset % (2 * step) != 0) return std::nullopt;
    const int index = offset / (2 * step);
    if (index >= dim()) return std::nullopt;
    return index;
}

ExactScalar CoupledState::coefficient(const ConstituentBasis& b1, const ConstituentBasis& b2, HalfInt m1,
                                      HalfInt m2) const {
    auto i1 = b1.index_of(m1);
    auto i2 = b2.index_of(m2);
    if (!i1 || !i2) return ExactScalar(0);
    const Scalar v = expansion.amplitude({*i1, *i2});
    return v.is_exact() ? v.exact() : throw Error(ErrorCode::ModeMismatch, "coupled state is not exact");
}

CoupledState ladder_apply(LadderDirection direction, const CoupledState& state, const ConstituentBasis& b1,
                          const ConstituentBasis& b2) {
    if (b1.step != b2.step) throw Error(ErrorCode::InvalidArgument, "constituent bases need the same step");
    const std::vector<int> dims{b1.dim(), b2.dim()};
    if (state.expansion.dims() != dims) throw Error(ErrorCode::ShapeMismatch, "state does not match the bases");
    const int step = b1.step;
    const bool raise = direction == LadderDirection::Raise;
    const HalfInt shift = HalfInt::from_twice(2 * step);

    CoupledState out{state.s, raise ? state.m + shift : state.m - shift, Ket(dims, Mode::Exact)};
    if (out.m > state.s || out.m < -state.s) return out;

    KetBuilder builder(dims, Mode::Exact);
    auto one_slot = [&](const ConstituentBasis& b, int slot, const BasisLabel& label, const Scalar& value) {
        const HalfInt m = b.m_of(label[static_cast<std::size_t>(slot)]);
        const ExactScalar amp = raise ? raise_amplitude(b.j, m) : lower_amplitude(b.j, m);
        if (amp.is_zero()) return;
        auto target = b.index_of(raise ? m + shift : m - shift);
        if (!target) return;
        BasisLabel next = label;
        next[static_cast<std::size_t>(slot)] = *target;
        builder.add(next, value * Scalar(ExactScalar(step) * amp));
    };
    for (const auto& [label, value] : state.expansion.amplitudes()) {
        one_slot(b1, 0, label, value);
        one_slot(b2, 1, label, value);
    }
    out.expansion = builder.build();
    return out;
}

const CoupledState* CgTable::find(HalfInt s, HalfInt m) const {
    for (const auto& row : rows)
        if (row.s == s && row.m == m) return &row;
    return nullptr;
}

namespace {

void sort_rows(std::vector<CoupledState>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const CoupledState& a, const CoupledState& b) {
        return a.s != b.s ? a.s > b.s : a.m > b.m;
    });
}

// Lowers `top` until the bottom of its block, normalizing each step.
void fill_block(std::vector<CoupledState>& rows, CoupledState top, const ConstituentBasis& b1,
                const ConstituentBasis& b2) {
    rows.push_back(top);
    for (;;) {
        CoupledState next = ladder_apply(LadderDirection::Lower, rows.back(), b1, b2);
        if (next.expansion.is_zero()) break;
        next.expansion = next.expansion.normalized();
        rows.push_back(std::move(next));
    }
}

}  // namespace

CgTable cg_decompose(HalfInt j1, HalfInt j2) {
    if (j1.twice() < 0 || j2.twice() < 0) throw Error(ErrorCode::InvalidArgument, "j must be nonnegative");
    if (j1.twice() > kMaxCgTwiceJ || j2.twice() > kMaxCgTwiceJ)
        throw Error(ErrorCode::SizeLimit, "cg_decompose supports j1, j2 <= 3");
    CgTable table{ConstituentBasis::standard(j1), ConstituentBasis::standard(j2), {}};
    const std::vector<int> dims{j1.twice() + 1, j2.twice() + 1};
    const HalfInt top = j1 + j2;
    const HalfInt bottom = j1 > j2 ? j1 - j2 : j2 - j1;

    for (HalfInt s = top; s >= bottom; s = s - HalfInt(1)) {
        // Kernel of S+ in the m = s subspace: walk m1 down from its largest
        // admissible value with a(m1 - 1) = -a(m1) alpha2+(m2) / alpha1+(m1 - 1).
        const HalfInt hi = std::min(j1, s + j2);
        const HalfInt lo = std::max(-j1, s - j2);
        std::map<BasisLabel, Scalar> amps;
        ExactScalar a(1);
        for (HalfInt m1 = hi;; m1 = m1 - HalfInt(1)) {
            const HalfInt m2 = s - m1;
            amps.emplace(BasisLabel{*table.basis1.index_of(m1), *table.basis2.index_of(m2)}, a);
            if (m1 <= lo) break;
            a = -a * raise_amplitude(j2, m2) / raise_amplitude(j1, m1 - HalfInt(1));
        }
        CoupledState highest{s, s, Ket(dims, Mode::Exact, std::move(amps)).normalized()};
        if (!ladder_apply(LadderDirection::Raise, highest, table.basis1, table.basis2).expansion.is_zero())
            throw Error(ErrorCode::InvalidArgument, "highest-weight recursion failed");
        fill_block(table.rows, std::move(highest), table.basis1, table.basis2);
    }
    sort_rows(table.rows);
    return table;
}

CgTable rescaled_ladder_table(const ConstituentBasis& basis) {
    const int dim = basis.dim();
    if (basis.j.twice() > kMaxCgTwiceJ) throw Error(ErrorCode::SizeLimit, "ladder table supports j <= 3");
    CgTable table{basis, basis, {}};
    const std::vector<int> dims{dim, dim};
    const HalfInt top = basis.j + basis.j;
    fill_block(table.rows, CoupledState{top, top, Ket::basis(dims, {0, 0})}, basis, basis);

    const std::size_t block = table.rows.size();
    for (std::size_t r = 0; r < block; ++r) {
        const HalfInt m = table.rows[r].m;
        std::vector<BasisLabel> subspace;
        for (int a = 0; a < dim; ++a)
            if (auto b = basis.index_of(m - basis.m_of(a))) subspace.push_back({a, *b});
        if (subspace.size() != 2) continue;
        // The orthogonal complement of (x, y) is (y, -x); sign fixed so the
        // highest-m1 entry is positive.
        const ExactScalar x = table.rows[r].expansion.amplitude(subspace[0]).exact();
        const ExactScalar y = table.rows[r].expansion.amplitude(subspace[1]).exact();
        ExactScalar first = y;
        ExactScalar second = -x;
        if (first.sign() < 0 || (first.is_zero() && second.sign() < 0)) {
            first = -first;
            second = -second;
        }
        const HalfInt s = m.twice() < 0 ? -m : m;
        table.rows.push_back(
            CoupledState{s, m, Ket(dims, Mode::Exact, {{subspace[0], first}, {subspace[1], second}}).normalized()});
    }
    sort_rows(table.rows);
    return table;
}

}  // namespace spinstat
