#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "spinstat/radical.hpp"
#include "spinstat/rational.hpp"

namespace spinstat {

/// Half-integer quantum number (j, m, s) stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;
    static constexpr HalfInt from_twice(int twice) { return HalfInt(twice, Raw{}); }
    constexpr HalfInt(int value) : twice_(2 * value) {}  // NOLINT(implicit)

    constexpr int twice() const noexcept { return twice_; }
    constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }
    double to_double() const noexcept { return twice_ / 2.0; }
    Rational to_rational() const { return Rational(twice_, 2); }

    constexpr HalfInt operator-() const { return HalfInt(-twice_, Raw{}); }
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice_ + b.twice_, Raw{}); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice_ - b.twice_, Raw{}); }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    /// "2", "-1/2", "3/2".
    std::string to_string() const;
    /// Accepts integers and odd halves: "1", "1/2", "-3/2". Throws Error(Parse).
    static HalfInt parse(std::string_view text);

private:
    struct Raw {};
    constexpr HalfInt(int twice, Raw) : twice_(twice) {}
    int twice_ = 0;
};

/// A polar angle. Rational multiples of pi are kept exact so the critical
/// angles (pi/3, 2pi/3, ...) produce exact trigonometric values.
class Angle {
public:
    Angle() = default;
    static Angle pi_times(Rational multiple) { return Angle(multiple); }
    static Angle radians(double value);

    bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
    /// Coefficient of pi when exact.
    std::optional<Rational> pi_multiple() const;
    double to_radians() const;

    Angle scaled(const Rational& factor) const;
    friend Angle operator+(const Angle& a, const Angle& b);
    friend Angle operator-(const Angle& a, const Angle& b);
    Angle abs() const;

    /// Exact (cos, sin) when the angle is a multiple of pi/4 or pi/6.
    std::optional<std::pair<ExactScalar, ExactScalar>> exact_cos_sin() const;

    /// "2pi/3", "pi", "0", "-pi/4"; inexact angles print their radian value.
    std::string to_string() const;
    /// Accepts "pi", "2pi/3", "2*pi/3", "-pi/4", "0", or a decimal radian value.
    static Angle parse(std::string_view text);

    friend bool operator==(const Angle&, const Angle&) = default;

private:
    explicit Angle(Rational m) : value_(m) {}
    std::variant<Rational, double> value_{Rational{}};
};

}  // namespace spinstat
