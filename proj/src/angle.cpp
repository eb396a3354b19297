#include "spinstat/angle.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "spinstat/error.hpp"

namespace spinstat {

std::string HalfInt::to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

HalfInt HalfInt::parse(std::string_view text) {
    Rational r = Rational::parse(text);
    if (r.den() != 1 && r.den() != 2)
        throw Error(ErrorCode::Parse, "not a half-integer: '" + std::string(text) + "'");
    return HalfInt::from_twice(static_cast<int>(r.num() * (2 / r.den())));
}

Angle Angle::radians(double value) {
    Angle a;
    if (value == 0.0) return a;
    a.value_ = value;
    return a;
}

std::optional<Rational> Angle::pi_multiple() const {
    if (const auto* r = std::get_if<Rational>(&value_)) return *r;
    return std::nullopt;
}

double Angle::to_radians() const {
    if (const auto* r = std::get_if<Rational>(&value_)) return r->to_double() * std::numbers::pi;
    return std::get<double>(value_);
}

Angle Angle::scaled(const Rational& factor) const {
    if (const auto* r = std::get_if<Rational>(&value_)) return Angle(*r * factor);
    return radians(std::get<double>(value_) * factor.to_double());
}

Angle operator+(const Angle& a, const Angle& b) {
    if (a.is_exact() && b.is_exact()) return Angle(*a.pi_multiple() + *b.pi_multiple());
    return Angle::radians(a.to_radians() + b.to_radians());
}

Angle operator-(const Angle& a, const Angle& b) {
    if (a.is_exact() && b.is_exact()) return Angle(*a.pi_multiple() - *b.pi_multiple());
    return Angle::radians(a.to_radians() - b.to_radians());
}

Angle Angle::abs() const {
    if (const auto* r = std::get_if<Rational>(&value_)) return Angle(r->abs());
    return radians(std::fabs(std::get<double>(value_)));
}

namespace {

// cos(k*pi/12) for k in {0, 2, 3, 4, 6}; the first quadrant values that are
// single radicals.
ExactScalar first_quadrant_cos(int k) {
    switch (k) {
        case 0: return ExactScalar(1);
        case 2: return ExactScalar(Rational(1, 2), 3);
        case 3: return ExactScalar(Rational(1, 2), 2);
        case 4: return ExactScalar(Rational(1, 2));
        case 6: return ExactScalar(0);
        default: break;
    }
    throw Error(ErrorCode::InvalidArgument, "angle has no single-radical cosine");
}

ExactScalar cos_twelfths(int k) {
    k = ((k % 24) + 24) % 24;
    if (k > 12) k = 24 - k;
    if (k > 6) return -first_quadrant_cos(12 - k);
    return first_quadrant_cos(k);
}

}  // namespace

std::optional<std::pair<ExactScalar, ExactScalar>> Angle::exact_cos_sin() const {
    const auto* r = std::get_if<Rational>(&value_);
    if (r == nullptr) return std::nullopt;
    switch (r->den()) {
        case 1: case 2: case 3: case 4: case 6: break;
        default: return std::nullopt;
    }
    // Reduce modulo 2 (a full turn) before scaling so k stays small.
    std::int64_t twelfths = (r->num() % (2 * r->den())) * (12 / r->den());
    int k = static_cast<int>(twelfths);
    return std::pair{cos_twelfths(k), cos_twelfths(k - 6)};
}

std::string Angle::to_string() const {
    const auto* r = std::get_if<Rational>(&value_);
    if (r == nullptr) {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
        return std::string(buf, ptr);
    }
    if (r->is_zero()) return "0";
    std::string out;
    if (r->num() == -1) out = "-pi";
    else if (r->num() == 1) out = "pi";
    else out = std::to_string(r->num()) + "pi";
    if (r->den() != 1) out += "/" + std::to_string(r->den());
    return out;
}

Angle Angle::parse(std::string_view text) {
    auto fail = [&]() -> Angle { throw Error(ErrorCode::Parse, "not an angle: '" + std::string(text) + "'"); };
    auto pi = text.find("pi");
    if (pi == std::string_view::npos) {
        double v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return fail();
        return radians(v);
    }
    std::string_view head = text.substr(0, pi);
    std::string_view tail = text.substr(pi + 2);
    if (!head.empty() && head.back() == '*') head.remove_suffix(1);
    Rational coef(1);
    try {
        if (head == "-") coef = Rational(-1);
        else if (!head.empty() && head != "+") coef = Rational::parse(head);
        if (!tail.empty()) {
            if (tail.front() != '/') return fail();
            coef /= Rational::parse(tail.substr(1));
        }
    } catch (const Error&) {
        return fail();
    }
    return pi_times(coef);
}

}  // namespace spinstat
