#include "spinstat/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

#include "spinstat/error.hpp"

namespace spinstat {

using detail::i128;

namespace {

i128 gcd_wide(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational Rational::from_wide(i128 n, i128 d) {
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) return Rational{};
    i128 g = gcd_wide(n, d);
    n /= g;
    d /= g;
    constexpr auto lo = static_cast<i128>(std::numeric_limits<std::int64_t>::min() + 1);
    constexpr auto hi = static_cast<i128>(std::numeric_limits<std::int64_t>::max());
    if (n < lo || n > hi || d > hi) throw Error(ErrorCode::Overflow, "rational arithmetic overflowed 64 bits");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

Rational Rational::operator-() const { return from_wide(-static_cast<i128>(num_), den_); }

Rational Rational::reciprocal() const {
    if (num_ == 0) throw Error(ErrorCode::InvalidArgument, "reciprocal of zero");
    return from_wide(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return Rational::from_wide(static_cast<i128>(a.num_) + b.num_, a.den_);
    return Rational::from_wide(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                               static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    // Cross-reduce first so small results never pass through large intermediates.
    i128 g1 = gcd_wide(a.num_, b.den_);
    i128 g2 = gcd_wide(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational::from_wide((a.num_ / g1) * static_cast<i128>(b.num_ / g2),
                               (a.den_ / g2) * static_cast<i128>(b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<i128>(a.num_) * b.den_ <=> static_cast<i128>(b.num_) * a.den_;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorCode::Parse, "not a rational number: '" + std::string(whole) + "'");
    return v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, text));
    const std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash), text), den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace spinstat
