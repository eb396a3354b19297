#include "spinstat/ket.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spinstat/error.hpp"

namespace spinstat {

std::string_view mode_name(Mode mode) noexcept { return mode == Mode::Exact ? "exact" : "float"; }

// ---------------------------------------------------------------- Scalar

Complex Scalar::to_complex() const {
    if (const auto* e = std::get_if<ExactScalar>(&value_)) return {e->to_double(), 0.0};
    return std::get<Complex>(value_);
}

bool Scalar::is_zero() const noexcept {
    if (const auto* e = std::get_if<ExactScalar>(&value_)) return e->is_zero();
    return std::get<Complex>(value_) == Complex{};
}

double Scalar::abs2() const {
    if (const auto* e = std::get_if<ExactScalar>(&value_)) return e->squared().to_double();
    return std::norm(std::get<Complex>(value_));
}

Scalar Scalar::operator-() const {
    if (const auto* e = std::get_if<ExactScalar>(&value_)) return -*e;
    return -std::get<Complex>(value_);
}

Scalar Scalar::conj() const {
    if (is_exact()) return *this;
    return std::conj(std::get<Complex>(value_));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() * b.exact();
    return a.to_complex() * b.to_complex();
}

std::string Scalar::to_string() const {
    if (const auto* e = std::get_if<ExactScalar>(&value_)) return e->to_string();
    std::ostringstream os;
    os.precision(17);
    const auto& c = std::get<Complex>(value_);
    os << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::fabs(c.imag()) << "i";
    return os.str();
}

// ---------------------------------------------------------------- Ket

namespace {

void check_dims(const std::vector<int>& dims) {
    for (int d : dims)
        if (d < 1) throw Error(ErrorCode::ShapeMismatch, "local dimension must be positive");
}

void check_label(const std::vector<int>& dims, const BasisLabel& label) {
    if (label.size() != dims.size())
        throw Error(ErrorCode::ShapeMismatch, "label has " + std::to_string(label.size()) + " entries for " +
                                                  std::to_string(dims.size()) + " particles");
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (label[i] < 0 || label[i] >= dims[i])
            throw Error(ErrorCode::ShapeMismatch, "label index out of range for slot " + std::to_string(i + 1));
}

void require_same_mode(Mode a, Mode b) {
    if (a != b) throw Error(ErrorCode::ModeMismatch, "kets mix exact and float scalar modes");
}

}  // namespace

Ket::Ket(std::vector<int> dims, Mode mode) : dims_(std::move(dims)), mode_(mode) { check_dims(dims_); }

Ket::Ket(std::vector<int> dims, Mode mode, std::map<BasisLabel, Scalar> amplitudes)
    : dims_(std::move(dims)), mode_(mode) {
    check_dims(dims_);
    for (auto& [label, value] : amplitudes) {
        check_label(dims_, label);
        if (value.mode() != mode_) throw Error(ErrorCode::ModeMismatch, "amplitude mode differs from ket mode");
        if (!value.is_zero()) amps_.emplace(label, value);
    }
}

Ket Ket::basis(std::vector<int> dims, const BasisLabel& label, Mode mode) {
    Scalar one = mode == Mode::Exact ? Scalar(ExactScalar(1)) : Scalar::real(1.0);
    return Ket(std::move(dims), mode, {{label, one}});
}

Scalar Ket::amplitude(const BasisLabel& label) const {
    auto it = amps_.find(label);
    if (it != amps_.end()) return it->second;
    return mode_ == Mode::Exact ? Scalar(ExactScalar{}) : Scalar::real(0.0);
}

std::optional<Rational> Ket::norm_squared_exact() const {
    if (mode_ != Mode::Exact) return std::nullopt;
    Rational sum;
    for (const auto& [label, value] : amps_) sum += value.exact().squared();
    return sum;
}

double Ket::norm_squared() const {
    if (auto exact = norm_squared_exact()) return exact->to_double();
    double sum = 0;
    for (const auto& [label, value] : amps_) sum += value.abs2();
    return sum;
}

bool Ket::is_normalized(double tol) const {
    if (auto exact = norm_squared_exact()) return *exact == Rational(1);
    return std::fabs(norm_squared() - 1.0) < tol;
}

Ket Ket::normalized() const {
    if (is_zero()) throw Error(ErrorCode::InvalidArgument, "cannot normalize the zero ket");
    if (auto exact = norm_squared_exact()) return scaled(ExactScalar::sqrt(exact->reciprocal()));
    return scaled(Scalar::real(1.0 / std::sqrt(norm_squared())));
}

Ket Ket::scaled(const Scalar& factor) const {
    Mode out_mode = (mode_ == Mode::Exact && factor.is_exact()) ? Mode::Exact : Mode::Float;
    Ket out(dims_, out_mode);
    for (const auto& [label, value] : amps_) {
        Scalar v = value * factor;
        if (!v.is_zero()) out.amps_.emplace(label, v);
    }
    return out;
}

Ket Ket::operator-() const {
    Ket out = *this;
    for (auto& [label, value] : out.amps_) value = -value;
    return out;
}

Ket operator+(const Ket& a, const Ket& b) {
    if (a.dims_ != b.dims_) throw Error(ErrorCode::ShapeMismatch, "adding kets of different shapes");
    require_same_mode(a.mode_, b.mode_);
    KetBuilder builder(a.dims_, a.mode_);
    builder.add(a, ExactScalar(1));
    builder.add(b, ExactScalar(1));
    return builder.build();
}

Ket Ket::to_float() const {
    Ket out(dims_, Mode::Float);
    for (const auto& [label, value] : amps_) out.amps_.emplace(label, value.to_float());
    return out;
}

double Ket::distance(const Ket& other) const {
    if (dims_ != other.dims_) throw Error(ErrorCode::ShapeMismatch, "comparing kets of different shapes");
    double sum = 0;
    auto ia = amps_.begin();
    auto ib = other.amps_.begin();
    while (ia != amps_.end() || ib != other.amps_.end()) {
        if (ib == other.amps_.end() || (ia != amps_.end() && ia->first < ib->first)) {
            sum += ia->second.abs2();
            ++ia;
        } else if (ia == amps_.end() || ib->first < ia->first) {
            sum += ib->second.abs2();
            ++ib;
        } else {
            sum += std::norm(ia->second.to_complex() - ib->second.to_complex());
            ++ia;
            ++ib;
        }
    }
    return std::sqrt(sum);
}

bool Ket::approx_equal(const Ket& other, double tol) const {
    if (dims_ != other.dims_) return false;
    return distance(other) < tol;
}

std::optional<int> Ket::equal_up_to_sign(const Ket& other, double tol) const {
    if (dims_ != other.dims_) return std::nullopt;
    if (mode_ == Mode::Exact && other.mode_ == Mode::Exact) {
        if (amps_ == other.amps_) return 1;
        if (amps_ == (-other).amps_) return -1;
        return std::nullopt;
    }
    if (distance(other) < tol) return 1;
    if (distance(-other) < tol) return -1;
    return std::nullopt;
}

std::string Ket::to_string() const {
    if (amps_.empty()) return "0";
    std::string out;
    for (const auto& [label, value] : amps_) {
        if (!out.empty()) out += " + ";
        out += "(" + value.to_string() + ")|";
        for (std::size_t i = 0; i < label.size(); ++i) out += (i ? "," : "") + std::to_string(label[i]);
        out += ">";
    }
    return out;
}

// ---------------------------------------------------------------- KetBuilder

void KetBuilder::add(const BasisLabel& label, const Scalar& value) {
    if (value.is_zero()) return;
    if (mode_ == Mode::Exact) {
        if (!value.is_exact()) throw Error(ErrorCode::ModeMismatch, "float amplitude added to exact ket");
        exact_[label] += value.exact();
    } else {
        float_[label] += value.to_complex();
    }
}

void KetBuilder::add(const BasisLabel& label, const RadicalSum& value) {
    if (value.is_zero()) return;
    if (mode_ == Mode::Exact) exact_[label] += value;
    else float_[label] += value.to_double();
}

void KetBuilder::add(const Ket& ket, const Scalar& factor) {
    for (const auto& [label, value] : ket.amplitudes()) add(label, value * factor);
}

Ket KetBuilder::build() const {
    std::map<BasisLabel, Scalar> amps;
    if (mode_ == Mode::Exact) {
        for (const auto& [label, sum] : exact_) {
            auto single = sum.as_single();
            if (!single)
                throw Error(ErrorCode::InexactSum, "amplitude " + sum.to_string() + " is not of the form q*sqrt(r)");
            if (!single->is_zero()) amps.emplace(label, *single);
        }
    } else {
        for (const auto& [label, value] : float_)
            if (value != Complex{}) amps.emplace(label, value);
    }
    return Ket(dims_, mode_, std::move(amps));
}

// ---------------------------------------------------------------- Operator

Operator::Operator(int dim, Mode mode)
    : dim_(dim),
      mode_(mode),
      entries_(static_cast<std::size_t>(dim * dim), mode == Mode::Exact ? Scalar(ExactScalar{}) : Scalar::real(0.0)) {}

Operator::Operator(int dim, std::vector<Scalar> row_major) : dim_(dim), entries_(std::move(row_major)) {
    if (dim < 1 || entries_.size() != static_cast<std::size_t>(dim * dim))
        throw Error(ErrorCode::ShapeMismatch, "operator needs dim*dim entries");
    mode_ = entries_.front().mode();
    for (const auto& e : entries_)
        if (e.mode() != mode_) throw Error(ErrorCode::ModeMismatch, "operator mixes exact and float entries");
}

Operator Operator::identity(int dim, Mode mode) {
    Operator op(dim, mode);
    for (int i = 0; i < dim; ++i)
        op.entries_[static_cast<std::size_t>(i * dim + i)] = mode == Mode::Exact ? Scalar(ExactScalar(1)) : Scalar::real(1.0);
    return op;
}

Operator Operator::transpose() const {
    Operator out = *this;
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out.entries_[static_cast<std::size_t>(c * dim_ + r)] = at(r, c);
    return out;
}

Operator Operator::to_float() const {
    Operator out = *this;
    out.mode_ = Mode::Float;
    for (auto& e : out.entries_) e = e.to_float();
    return out;
}

Operator operator*(const Operator& a, const Operator& b) {
    if (a.dim_ != b.dim_) throw Error(ErrorCode::ShapeMismatch, "operator dimension mismatch");
    bool exact = a.mode_ == Mode::Exact && b.mode_ == Mode::Exact;
    std::vector<Scalar> entries;
    entries.reserve(a.entries_.size());
    for (int r = 0; r < a.dim_; ++r) {
        for (int c = 0; c < a.dim_; ++c) {
            if (exact) {
                RadicalSum sum;
                for (int k = 0; k < a.dim_; ++k) sum += a.at(r, k).exact() * b.at(k, c).exact();
                auto single = sum.as_single();
                if (!single) throw Error(ErrorCode::InexactSum, "operator product entry is not q*sqrt(r)");
                entries.emplace_back(*single);
            } else {
                Complex sum{};
                for (int k = 0; k < a.dim_; ++k) sum += a.at(r, k).to_complex() * b.at(k, c).to_complex();
                entries.emplace_back(sum);
            }
        }
    }
    return Operator(a.dim_, std::move(entries));
}

Operator operator+(const Operator& a, const Operator& b) {
    if (a.dim_ != b.dim_) throw Error(ErrorCode::ShapeMismatch, "operator dimension mismatch");
    bool exact = a.mode_ == Mode::Exact && b.mode_ == Mode::Exact;
    std::vector<Scalar> entries;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
        if (exact) {
            auto sum = ExactScalar::try_add(a.entries_[i].exact(), b.entries_[i].exact());
            if (!sum) throw Error(ErrorCode::InexactSum, "operator sum entry is not q*sqrt(r)");
            entries.emplace_back(*sum);
        } else {
            entries.emplace_back(a.entries_[i].to_complex() + b.entries_[i].to_complex());
        }
    }
    return Operator(a.dim_, std::move(entries));
}

double Operator::max_abs_diff(const Operator& other) const {
    if (dim_ != other.dim_) throw Error(ErrorCode::ShapeMismatch, "operator dimension mismatch");
    double worst = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        worst = std::max(worst, std::abs(entries_[i].to_complex() - other.entries_[i].to_complex()));
    return worst;
}

Ket Operator::apply(const Ket& ket, std::size_t slot) const {
    if (slot >= ket.particle_count()) throw Error(ErrorCode::ShapeMismatch, "slot out of range");
    if (ket.dims()[slot] != dim_) throw Error(ErrorCode::ShapeMismatch, "operator dimension does not match slot");
    Mode out_mode = (ket.mode() == Mode::Exact && mode_ == Mode::Exact) ? Mode::Exact : Mode::Float;
    KetBuilder builder(ket.dims(), out_mode);
    for (const auto& [label, value] : ket.amplitudes()) {
        BasisLabel target = label;
        for (int row = 0; row < dim_; ++row) {
            const Scalar& m = at(row, label[slot]);
            if (m.is_zero()) continue;
            target[slot] = row;
            Scalar v = m * value;
            builder.add(target, out_mode == Mode::Exact ? v : v.to_float());
        }
    }
    return builder.build();
}

Ket apply_local(const Ket& ket, std::span<const Operator> ops) {
    if (ops.size() != ket.particle_count())
        throw Error(ErrorCode::ShapeMismatch, "need one operator per particle");
    Ket out = ket;
    for (std::size_t slot = 0; slot < ops.size(); ++slot) out = ops[slot].apply(out, slot);
    return out;
}

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
        if (v < 0 || v >= static_cast<int>(image_.size()) || seen[static_cast<std::size_t>(v)])
            throw Error(ErrorCode::InvalidArgument, "image array is not a permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image));
}

Permutation Permutation::transposition(int n, int i, int j) {
    auto image = identity(n).image_;
    std::swap(image.at(static_cast<std::size_t>(i)), image.at(static_cast<std::size_t>(j)));
    return Permutation(std::move(image));
}

std::vector<Permutation> Permutation::all(int n) {
    std::vector<Permutation> out;
    auto image = identity(n).image_;
    do {
        out.emplace_back(image);
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

int Permutation::sign() const {
    // Parity from cycle decomposition: each cycle of length L contributes L-1 transpositions.
    std::vector<bool> visited(image_.size(), false);
    int transpositions = 0;
    for (std::size_t start = 0; start < image_.size(); ++start) {
        if (visited[start]) continue;
        std::size_t len = 0;
        for (std::size_t i = start; !visited[i]; i = static_cast<std::size_t>(image_[i])) {
            visited[i] = true;
            ++len;
        }
        transpositions += static_cast<int>(len) - 1;
    }
    return transpositions % 2 == 0 ? 1 : -1;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] != static_cast<int>(i)) return false;
    return true;
}

Permutation operator*(const Permutation& q, const Permutation& p) {
    if (q.size() != p.size()) throw Error(ErrorCode::ShapeMismatch, "composing permutations of different sizes");
    std::vector<int> image(p.image_.size());
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = q(p(static_cast<int>(i)));
    return Permutation(std::move(image));
}

std::string Permutation::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < image_.size(); ++i) out += (i ? "," : "") + std::to_string(image_[i] + 1);
    return out + "]";
}

// ---------------------------------------------------------------- free functions

Ket tensor_product(const Ket& a, const Ket& b) {
    require_same_mode(a.mode(), b.mode());
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    std::map<BasisLabel, Scalar> amps;
    for (const auto& [la, va] : a.amplitudes()) {
        for (const auto& [lb, vb] : b.amplitudes()) {
            BasisLabel label = la;
            label.insert(label.end(), lb.begin(), lb.end());
            amps.emplace(std::move(label), va * vb);
        }
    }
    return Ket(std::move(dims), a.mode(), std::move(amps));
}

InnerProduct inner_product(const Ket& a, const Ket& b) {
    if (a.dims() != b.dims()) throw Error(ErrorCode::ShapeMismatch, "inner product of kets with different shapes");
    require_same_mode(a.mode(), b.mode());
    if (a.mode() == Mode::Exact) {
        RadicalSum sum;
        for (const auto& [label, va] : a.amplitudes()) {
            auto it = b.amplitudes().find(label);
            if (it != b.amplitudes().end()) sum += va.exact() * it->second.exact();
        }
        if (auto single = sum.as_single()) return {Scalar(*single), false};
        return {Scalar::real(sum.to_double()), true};
    }
    Complex sum{};
    for (const auto& [label, va] : a.amplitudes()) {
        auto it = b.amplitudes().find(label);
        if (it != b.amplitudes().end()) sum += std::conj(va.to_complex()) * it->second.to_complex();
    }
    return {Scalar(sum), false};
}

Ket permute_slots(const Ket& ket, const Permutation& p) {
    if (static_cast<std::size_t>(p.size()) != ket.particle_count())
        throw Error(ErrorCode::ShapeMismatch, "permutation size does not match particle count");
    const auto& dims = ket.dims();
    if (std::adjacent_find(dims.begin(), dims.end(), std::not_equal_to<>()) != dims.end())
        throw Error(ErrorCode::NotPermutable, "slots have unequal local dimensions");
    std::map<BasisLabel, Scalar> amps;
    for (const auto& [label, value] : ket.amplitudes()) {
        BasisLabel moved(label.size());
        for (int i = 0; i < p.size(); ++i) moved[static_cast<std::size_t>(p(i))] = label[static_cast<std::size_t>(i)];
        amps.emplace(std::move(moved), value);
    }
    return Ket(dims, ket.mode(), std::move(amps));
}

}  // namespace spinstat
