#include "spinstat/radical.hpp"

#include <cctype>
#include <cmath>

#include "spinstat/error.hpp"

namespace spinstat {

std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative radicand");
    if (n == 0) return {0, 1};
    std::int64_t outside = 1;
    std::int64_t rest = n;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        while (rest % (p * p) == 0) {
            rest /= p * p;
            outside *= p;
        }
    }
    return {outside, rest};
}

ExactScalar::ExactScalar(Rational coefficient, std::int64_t radicand) {
    auto [outside, rad] = squarefree_split(radicand);
    if (outside == 0 || coefficient.is_zero()) return;
    coef_ = coefficient * Rational(outside);
    rad_ = rad;
}

ExactScalar ExactScalar::sqrt(Rational q) {
    if (q.sign() < 0) throw Error(ErrorCode::InvalidArgument, "square root of negative rational " + q.to_string());
    // sqrt(p/d) = sqrt(p*d)/d
    auto [outside, rad] = squarefree_split(q.num());
    auto [outside_d, rad_d] = squarefree_split(q.den());
    // sqrt(p) / sqrt(d) = (o_p sqrt(r_p)) / (o_d sqrt(r_d)) = o_p sqrt(r_p r_d) / (o_d r_d)
    return ExactScalar(Rational(outside, outside_d * rad_d), rad * rad_d);
}

double ExactScalar::to_double() const { return coef_.to_double() * std::sqrt(static_cast<double>(rad_)); }

ExactScalar ExactScalar::reciprocal() const {
    if (is_zero()) throw Error(ErrorCode::InvalidArgument, "reciprocal of zero");
    // 1/(q sqrt(r)) = sqrt(r) / (q r)
    return ExactScalar(coef_.reciprocal() / Rational(rad_), rad_, Canonical{});
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.rad_ == b.rad_) return ExactScalar(a.coef_ * b.coef_ * Rational(a.rad_), 1, ExactScalar::Canonical{});
    return ExactScalar(a.coef_ * b.coef_, a.rad_ * b.rad_);
}

std::optional<ExactScalar> ExactScalar::try_add(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.rad_ != b.rad_) return std::nullopt;
    return ExactScalar(a.coef_ + b.coef_, a.rad_, Canonical{});
}

bool operator<(const ExactScalar& a, const ExactScalar& b) {
    if (a.sign() != b.sign()) return a.sign() < b.sign();
    // Same sign: compare squares, reversed for negatives.
    auto sa = a.squared();
    auto sb = b.squared();
    return a.sign() >= 0 ? sa < sb : sb < sa;
}

std::string ExactScalar::to_string() const {
    if (rad_ == 1) return coef_.to_string();
    std::string root = "sqrt(" + std::to_string(rad_) + ")";
    if (coef_ == Rational(1)) return root;
    if (coef_ == Rational(-1)) return "-" + root;
    return coef_.to_string() + "*" + root;
}

namespace {

class ScalarParser {
public:
    explicit ScalarParser(std::string_view text) : text_(text) {}

    ExactScalar parse() {
        skip_ws();
        bool negative = false;
        if (peek() == '-' || peek() == '+') negative = take() == '-';
        ExactScalar value = factor();
        for (skip_ws(); pos_ < text_.size(); skip_ws()) {
            char op = take();
            if (op == '*') value = value * factor();
            else if (op == '/') value = value / factor();
            else fail();
        }
        return negative ? -value : value;
    }

private:
    ExactScalar factor() {
        skip_ws();
        if (text_.substr(pos_, 5) == "sqrt(") {
            pos_ += 5;
            auto close = text_.find(')', pos_);
            if (close == std::string_view::npos) fail();
            Rational inner = parse_rational(text_.substr(pos_, close - pos_));
            pos_ = close + 1;
            return ExactScalar::sqrt(inner);
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail();
        return ExactScalar(Rational::parse(text_.substr(start, pos_ - start)));
    }

    Rational parse_rational(std::string_view s) {
        try {
            return Rational::parse(s);
        } catch (const Error&) {
            fail();
        }
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char take() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
    [[noreturn]] void fail() const {
        throw Error(ErrorCode::Parse, "not an exact scalar: '" + std::string(text_) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ExactScalar ExactScalar::parse(std::string_view text) { return ScalarParser(text).parse(); }

RadicalSum& RadicalSum::operator+=(const ExactScalar& s) {
    if (s.is_zero()) return *this;
    auto [it, inserted] = terms_.try_emplace(s.radicand(), s.coefficient());
    if (!inserted) {
        it->second += s.coefficient();
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& o) {
    for (const auto& [rad, coef] : o.terms_) *this += ExactScalar(coef, rad);
    return *this;
}

RadicalSum RadicalSum::operator-() const {
    RadicalSum out = *this;
    for (auto& [rad, coef] : out.terms_) coef = -coef;
    return out;
}

RadicalSum operator*(const RadicalSum& a, const RadicalSum& b) {
    RadicalSum out;
    for (const auto& [ra, ca] : a.terms_)
        for (const auto& [rb, cb] : b.terms_) out += ExactScalar(ca, ra) * ExactScalar(cb, rb);
    return out;
}

std::optional<ExactScalar> RadicalSum::as_single() const {
    if (terms_.empty()) return ExactScalar{};
    if (terms_.size() > 1) return std::nullopt;
    return ExactScalar(terms_.begin()->second, terms_.begin()->first);
}

std::optional<Rational> RadicalSum::as_rational() const {
    if (terms_.empty()) return Rational{};
    if (terms_.size() == 1 && terms_.begin()->first == 1) return terms_.begin()->second;
    return std::nullopt;
}

double RadicalSum::to_double() const {
    long double acc = 0;
    for (const auto& [rad, coef] : terms_)
        acc += static_cast<long double>(coef.num()) / coef.den() * std::sqrt(static_cast<long double>(rad));
    return static_cast<double>(acc);
}

std::string RadicalSum::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [rad, coef] : terms_) {
        std::string term = ExactScalar(coef, rad).to_string();
        if (out.empty()) out = term;
        else if (term.front() == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    }
    return out;
}

}  // namespace spinstat
