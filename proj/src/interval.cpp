#include "certival/interval.hpp"

#include <stdexcept>

namespace certival {

RInterval::RInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw std::invalid_argument("RInterval: lo > hi");
}

RInterval RInterval::sorted(const Rational& a, const Rational& b) {
    return a <= b ? RInterval(a, b) : RInterval(b, a);
}

Rational RInterval::mig() const {
    if (contains_zero()) return Rational(0);
    return min(abs(lo_), abs(hi_));
}

RInterval RInterval::operator*(const RInterval& o) const {
    Rational p1 = lo_ * o.lo_;
    Rational p2 = lo_ * o.hi_;
    Rational p3 = hi_ * o.lo_;
    Rational p4 = hi_ * o.hi_;
    return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
}

RInterval RInterval::operator/(const RInterval& o) const {
    if (o.contains_zero()) throw std::domain_error("RInterval: division by interval containing 0");
    Rational q1 = lo_ / o.lo_;
    Rational q2 = lo_ / o.hi_;
    Rational q3 = hi_ / o.lo_;
    Rational q4 = hi_ / o.hi_;
    return {min(min(q1, q2), min(q3, q4)), max(max(q1, q2), max(q3, q4))};
}

RInterval RInterval::operator*(const Rational& s) const {
    if (s.sign() >= 0) return {lo_ * s, hi_ * s};
    return {hi_ * s, lo_ * s};
}

RInterval RInterval::pow(unsigned n) const {
    if (n == 0) return RInterval(Rational(1));
    if (n == 1) return *this;
    if (n % 2 == 1) return {lo_.pow_int(n), hi_.pow_int(n)};
    // even power clamps at 0 when the interval straddles it
    Rational m = mag().pow_int(n);
    if (contains_zero()) return {Rational(0), m};
    return {mig().pow_int(n), m};
}

std::optional<RInterval> RInterval::intersect(const RInterval& o) const {
    Rational lo = max(lo_, o.lo_);
    Rational hi = min(hi_, o.hi_);
    if (hi < lo) return std::nullopt;
    return RInterval(lo, hi);
}

RInterval RInterval::hull(const RInterval& o) const {
    return {min(lo_, o.lo_), max(hi_, o.hi_)};
}

RInterval RInterval::outward_dyadic(long bits) const {
    return {lo_.round_down_dyadic(bits), hi_.round_up_dyadic(bits)};
}

std::string RInterval::to_string() const {
    return "[" + lo_.to_string() + ", " + hi_.to_string() + "]";
}

Box::Box(std::vector<RInterval> dims) : dims_(std::move(dims)) {
    if (dims_.empty() || dims_.size() > 3) throw std::invalid_argument("Box: dimension must be 1-3");
}

Rational Box::width() const {
    Rational w(0);
    for (const auto& d : dims_) w = max(w, d.width());
    return w;
}

std::vector<Rational> Box::midpoint() const {
    std::vector<Rational> m;
    m.reserve(dims_.size());
    for (const auto& d : dims_) m.push_back(d.midpoint());
    return m;
}

bool Box::contains(const Box& o) const {
    if (dim() != o.dim()) return false;
    for (size_t i = 0; i < dims_.size(); ++i)
        if (!dims_[i].contains(o.dims_[i])) return false;
    return true;
}

bool Box::strictly_contains(const Box& o) const {
    if (dim() != o.dim()) return false;
    for (size_t i = 0; i < dims_.size(); ++i)
        if (!dims_[i].strictly_contains(o.dims_[i])) return false;
    return true;
}

bool Box::disjoint(const Box& o) const {
    for (size_t i = 0; i < dims_.size() && i < o.dims_.size(); ++i)
        if (dims_[i].disjoint(o.dims_[i])) return true;
    return false;
}

std::optional<Box> Box::intersect(const Box& o) const {
    if (dim() != o.dim()) return std::nullopt;
    std::vector<RInterval> out;
    out.reserve(dims_.size());
    for (size_t i = 0; i < dims_.size(); ++i) {
        auto s = dims_[i].intersect(o.dims_[i]);
        if (!s) return std::nullopt;
        out.push_back(*s);
    }
    return Box(std::move(out));
}

std::string Box::to_string() const {
    std::string s;
    for (size_t i = 0; i < dims_.size(); ++i) {
        if (i) s += " x ";
        s += dims_[i].to_string();
    }
    return s;
}

CInterval CInterval::operator*(const CInterval& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
}

CInterval CInterval::operator/(const CInterval& o) const {
    RInterval n = o.norm();
    CInterval num = *this * o.conj();
    return {num.re / n, num.im / n};
}

CInterval CInterval::pow(unsigned n) const {
    CInterval acc{RInterval(Rational(1)), RInterval(Rational(0))};
    CInterval base = *this;
    unsigned e = n;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

Rational CInterval::max_half_width() const {
    return max(re.width(), im.width()) / Rational(2);
}

}  // namespace certival
