#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "spinstat/rational.hpp"

namespace spinstat {

/// Splits n >= 0 into (outside, radicand) with n = outside^2 * radicand and
/// radicand squarefree.
std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t n);

/// A real number of the form q * sqrt(r), q rational, r a squarefree
/// nonnegative integer. Zero is canonically (0, 1).
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(Rational coefficient) : coef_(coefficient) {}  // NOLINT(implicit)
    ExactScalar(std::int64_t value) : coef_(value) {}          // NOLINT(implicit)
    ExactScalar(Rational coefficient, std::int64_t radicand);

    /// sqrt(q) for q >= 0, exact.
    static ExactScalar sqrt(Rational q);

    const Rational& coefficient() const noexcept { return coef_; }
    std::int64_t radicand() const noexcept { return rad_; }

    bool is_zero() const noexcept { return coef_.is_zero(); }
    bool is_rational() const noexcept { return rad_ == 1; }
    int sign() const noexcept { return coef_.sign(); }
    /// value^2, always rational.
    Rational squared() const { return coef_ * coef_ * Rational(rad_); }
    double to_double() const;

    ExactScalar operator-() const { return ExactScalar(-coef_, rad_, Canonical{}); }
    ExactScalar abs() const { return ExactScalar(coef_.abs(), rad_, Canonical{}); }
    ExactScalar reciprocal() const;
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) { return a * b.reciprocal(); }

    /// a + b when both share a radicand (or either is zero); nullopt otherwise.
    static std::optional<ExactScalar> try_add(const ExactScalar& a, const ExactScalar& b);

    friend bool operator==(const ExactScalar&, const ExactScalar&) = default;
    friend bool operator<(const ExactScalar& a, const ExactScalar& b);

    /// "3/8", "sqrt(2)", "-1/2*sqrt(6)".
    std::string to_string() const;
    /// Accepts products/quotients of integers, fractions and sqrt(...) factors,
    /// e.g. "1/2*sqrt(2)", "-sqrt(2)/2", "sqrt(2/3)", "1/sqrt(6)".
    static ExactScalar parse(std::string_view text);

private:
    struct Canonical {};
    ExactScalar(Rational c, std::int64_t r, Canonical) : coef_(c), rad_(c.is_zero() ? 1 : r) {}

    Rational coef_{};
    std::int64_t rad_ = 1;
};

/// Finite sum of ExactScalars with distinct radicands. Distinct squarefree
/// radicals are linearly independent over the rationals, so the map is a
/// canonical form and equality/zero tests are exact.
class RadicalSum {
public:
    RadicalSum() = default;
    RadicalSum(const ExactScalar& s) { *this += s; }  // NOLINT(implicit)
    RadicalSum(Rational q) : RadicalSum(ExactScalar(q)) {}  // NOLINT(implicit)

    const std::map<std::int64_t, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    RadicalSum& operator+=(const ExactScalar& s);
    RadicalSum& operator+=(const RadicalSum& o);
    RadicalSum& operator-=(const RadicalSum& o) { return *this += -o; }
    RadicalSum operator-() const;
    friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
    friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }
    friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b);

    /// The single-radical value, if the sum has at most one term.
    std::optional<ExactScalar> as_single() const;
    std::optional<Rational> as_rational() const;
    double to_double() const;

    friend bool operator==(const RadicalSum&, const RadicalSum&) = default;

    std::string to_string() const;

private:
    std::map<std::int64_t, Rational> terms_;
};

}  // namespace spinstat
