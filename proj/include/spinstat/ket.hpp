#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spinstat/radical.hpp"

namespace spinstat {

inline constexpr double kDefaultTolerance = 1e-12;

enum class Mode { Exact, Float };

std::string_view mode_name(Mode mode) noexcept;

using Complex = std::complex<double>;

/// Amplitude value: an exact real q*sqrt(r), or a complex double.
class Scalar {
public:
    Scalar() = default;
    Scalar(ExactScalar v) : value_(v) {}    // NOLINT(implicit)
    Scalar(Rational v) : value_(ExactScalar(v)) {}  // NOLINT(implicit)
    Scalar(Complex v) : value_(v) {}        // NOLINT(implicit)
    static Scalar real(double v) { return Scalar(Complex(v, 0.0)); }

    Mode mode() const noexcept { return std::holds_alternative<ExactScalar>(value_) ? Mode::Exact : Mode::Float; }
    bool is_exact() const noexcept { return mode() == Mode::Exact; }
    const ExactScalar& exact() const { return std::get<ExactScalar>(value_); }
    Complex to_complex() const;
    bool is_zero() const noexcept;
    /// |value|^2 as a double.
    double abs2() const;

    Scalar operator-() const;
    Scalar conj() const;
    Scalar to_float() const { return Scalar(to_complex()); }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar&, const Scalar&) = default;

    std::string to_string() const;

private:
    std::variant<ExactScalar, Complex> value_{ExactScalar{}};
};

/// Per-particle level indices; index i of a spin-j slot is m = j - i, and
/// for spin-1/2 index 0 is '+' and index 1 is '-'.
using BasisLabel = std::vector<int>;

/// Sparse n-particle state vector over a labeled product basis. Entries that
/// are exactly zero are never stored.
class Ket {
public:
    Ket() = default;
    Ket(std::vector<int> dims, Mode mode);
    /// Validates labels against dims and that every amplitude has `mode`.
    Ket(std::vector<int> dims, Mode mode, std::map<BasisLabel, Scalar> amplitudes);

    static Ket basis(std::vector<int> dims, const BasisLabel& label, Mode mode = Mode::Exact);

    const std::vector<int>& dims() const noexcept { return dims_; }
    std::size_t particle_count() const noexcept { return dims_.size(); }
    Mode mode() const noexcept { return mode_; }
    const std::map<BasisLabel, Scalar>& amplitudes() const noexcept { return amps_; }
    Scalar amplitude(const BasisLabel& label) const;

    bool is_zero() const noexcept { return amps_.empty(); }
    /// Sum of |amplitude|^2; exact for exact kets.
    std::optional<Rational> norm_squared_exact() const;
    double norm_squared() const;
    bool is_normalized(double tol = kDefaultTolerance) const;
    /// Divides by the norm; exact kets stay exact. Throws on the zero ket.
    Ket normalized() const;

    Ket scaled(const Scalar& factor) const;
    Ket operator-() const;
    /// Exact mode throws Error(InexactSum) if some label's sum leaves q*sqrt(r).
    friend Ket operator+(const Ket& a, const Ket& b);
    friend Ket operator-(const Ket& a, const Ket& b) { return a + (-b); }
    Ket to_float() const;

    friend bool operator==(const Ket&, const Ket&) = default;
    /// Same dims and every amplitude within `tol` (exact kets compare via doubles).
    bool approx_equal(const Ket& other, double tol = kDefaultTolerance) const;
    /// +1 if equal, -1 if equal to the negation, nullopt otherwise. For exact
    /// kets the comparison is exact; otherwise it uses `tol`.
    std::optional<int> equal_up_to_sign(const Ket& other, double tol = kDefaultTolerance) const;
    /// Euclidean norm of the difference, in double precision.
    double distance(const Ket& other) const;

    std::string to_string() const;

private:
    std::vector<int> dims_;
    Mode mode_ = Mode::Exact;
    std::map<BasisLabel, Scalar> amps_;
};

/// Accumulates amplitudes label by label. Exact sums are kept as RadicalSums
/// until build(), so intermediate mixtures of radicands are fine as long as
/// every final amplitude is a single radical.
class KetBuilder {
public:
    KetBuilder(std::vector<int> dims, Mode mode) : dims_(std::move(dims)), mode_(mode) {}

    void add(const BasisLabel& label, const Scalar& value);
    void add(const BasisLabel& label, const RadicalSum& value);
    void add(const Ket& ket, const Scalar& factor);
    Mode mode() const noexcept { return mode_; }

    /// Throws Error(InexactSum) when an exact amplitude is not q*sqrt(r).
    Ket build() const;
    /// Per-label exact sums; only meaningful in exact mode.
    const std::map<BasisLabel, RadicalSum>& exact_sums() const noexcept { return exact_; }

private:
    std::vector<int> dims_;
    Mode mode_;
    std::map<BasisLabel, RadicalSum> exact_;
    std::map<BasisLabel, Complex> float_;
};

/// Dense square matrix acting on one particle's local basis.
class Operator {
public:
    Operator() = default;
    Operator(int dim, Mode mode);
    Operator(int dim, std::vector<Scalar> row_major);

    static Operator identity(int dim, Mode mode = Mode::Exact);

    int dim() const noexcept { return dim_; }
    Mode mode() const noexcept { return mode_; }
    const Scalar& at(int row, int col) const { return entries_[static_cast<std::size_t>(row * dim_ + col)]; }

    Operator transpose() const;
    Operator to_float() const;
    /// Matrix product; exact entries must stay single radicals.
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator+(const Operator& a, const Operator& b);
    friend bool operator==(const Operator&, const Operator&) = default;
    double max_abs_diff(const Operator& other) const;

    /// Applies this operator to one slot of a ket.
    Ket apply(const Ket& ket, std::size_t slot) const;

private:
    int dim_ = 0;
    Mode mode_ = Mode::Exact;
    std::vector<Scalar> entries_;
};

/// Applies ops[i] to slot i of `ket`. ops.size() must equal the particle count.
Ket apply_local(const Ket& ket, std::span<const Operator> ops);

/// Bijection on {0..n-1}; the particle in slot i moves to slot image[i].
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> image);

    static Permutation identity(int n);
    static Permutation transposition(int n, int i, int j);
    /// All n! permutations in lexicographic order of their image arrays.
    static std::vector<Permutation> all(int n);

    int size() const noexcept { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& image() const noexcept { return image_; }
    int sign() const;
    Permutation inverse() const;
    bool is_identity() const;
    /// (q * p)(i) = q(p(i)): apply p first.
    friend Permutation operator*(const Permutation& q, const Permutation& p);
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

    /// One-line notation with 1-based images, e.g. "[2,1,3]".
    std::string to_string() const;

private:
    std::vector<int> image_;
};

Ket tensor_product(const Ket& a, const Ket& b);

struct InnerProduct {
    Scalar value;
    /// Set when exact terms did not combine into q*sqrt(r) and the value was
    /// evaluated in floating point instead.
    bool inexact_fallback = false;
};

/// <a|b>, conjugate-linear in a.
InnerProduct inner_product(const Ket& a, const Ket& b);

/// Moves the particle in slot i to slot p(i).
Ket permute_slots(const Ket& ket, const Permutation& p);

}  // namespace spinstat
