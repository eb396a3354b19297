#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinstat/angle.hpp"
#include "spinstat/ket.hpp"
#include "spinstat/radical.hpp"

namespace spinstat {

/// re + i*im with both parts exact radical sums.
struct ExactComplex {
    RadicalSum re;
    RadicalSum im;

    bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
    double abs() const;
    friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const ExactComplex&, const ExactComplex&) = default;
};

/// Dense square matrix over ExactComplex.
class ExactMatrix {
public:
    ExactMatrix() = default;
    explicit ExactMatrix(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim * dim)) {}

    static ExactMatrix identity(int dim);

    int dim() const noexcept { return dim_; }
    ExactComplex& at(int r, int c) { return entries_[static_cast<std::size_t>(r * dim_ + c)]; }
    const ExactComplex& at(int r, int c) const { return entries_[static_cast<std::size_t>(r * dim_ + c)]; }

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator*(const ExactComplex& s, const ExactMatrix& m);
    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

    bool is_zero() const;
    /// Largest entry modulus.
    double max_abs() const;
    /// Rows of entries, e.g. "[[1/2, 0], [0, -1/2]]".
    std::string to_string() const;

private:
    int dim_ = 0;
    std::vector<ExactComplex> entries_;
};

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b);

/// L_x, L_y, L_z, L_+, L_- on {|j,m>}, index i <-> m = j - i, hbar = 1.
struct AngularMomentumSet {
    HalfInt j;
    ExactMatrix lx, ly, lz, lplus, lminus;

    /// L_x^2 + L_y^2 + L_z^2.
    ExactMatrix casimir() const;
};

AngularMomentumSet angular_momentum_matrices(HalfInt j);

struct RescaledAlgebraCheck {
    int n = 1;
    HalfInt j;
    /// max over (i, j) of |[S_i, S_j] - i n eps_ijk S_k|.
    double max_residual = 0;
    bool residual_exactly_zero = false;
    /// S-S+ = n^2 L-L+ and S+S- = n^2 L+L-, checked as exact matrix identities.
    bool ladder_identity = false;
    Rational ladder_factor;  // n^2
};

RescaledAlgebraCheck verify_rescaled_algebra(int n, HalfInt j);

/// Single-constituent basis used by the ladders: levels m = j, j - step, ...,
/// -j. step = 1 is the ordinary spin-j basis; the photon basis is j = 1 with
/// step = 2, i.e. the labels {1, -1}.
struct ConstituentBasis {
    HalfInt j;
    int step = 1;

    static ConstituentBasis standard(HalfInt j) { return {j, 1}; }
    static ConstituentBasis photon() { return {HalfInt(1), 2}; }

    int dim() const;
    HalfInt m_of(int index) const;
    std::optional<int> index_of(HalfInt m) const;
};

/// |s, m> as an exact expansion over |m1, m2>.
struct CoupledState {
    HalfInt s;
    HalfInt m;
    Ket expansion;  // dims {basis1.dim(), basis2.dim()}

    /// Coefficient <m1, m2 | s, m>.
    ExactScalar coefficient(const ConstituentBasis& b1, const ConstituentBasis& b2, HalfInt m1, HalfInt m2) const;
};

enum class LadderDirection { Raise, Lower };

/// S^{+/-} = S1 + S2 with S|j, m> = n sqrt((j -/+ m)(j +/- m + 1)) |j, m +/- n>,
/// n = basis step. The result is unnormalized; s is carried over and m moves
/// by the step. Leaving [-s, s] gives the zero state.
CoupledState ladder_apply(LadderDirection direction, const CoupledState& state, const ConstituentBasis& b1,
                          const ConstituentBasis& b2);

struct CgTable {
    ConstituentBasis basis1;
    ConstituentBasis basis2;
    std::vector<CoupledState> rows;  // s descending, then m descending

    const CoupledState* find(HalfInt s, HalfInt m) const;
};

inline constexpr int kMaxCgTwiceJ = 6;

/// Standard coupling of j1 and j2 (each at most 3): highest weight |j1, j2>,
/// lowering within each block, and the next block's highest weight from the
/// exact kernel of S+ in the fixed-m subspace. Condon-Shortley signs.
CgTable cg_decompose(HalfInt j1, HalfInt j2);

/// Two identical constituents in `basis`: the top block from |j, j> by the
/// rescaled lowering operator, then any one-dimensional orthogonal complement
/// of a fixed-m subspace as the s = |m| state. With the photon basis this is
/// the {|2,2>, |2,0>, |2,-2>, |0,0>} table.
CgTable rescaled_ladder_table(const ConstituentBasis& basis);

}  // namespace spinstat
