#ifndef CERTIVAL_INTERVAL_HPP
#define CERTIVAL_INTERVAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "certival/rational.hpp"

namespace certival {

/// Closed real interval with exact rational endpoints.
///
/// Every operation returns an enclosure of the exact image; since the
/// endpoint arithmetic is exact no rounding slack is ever added.
class RInterval {
public:
    RInterval() : lo_(0), hi_(0) {}
    RInterval(Rational point) : lo_(point), hi_(std::move(point)) {}
    RInterval(Rational lo, Rational hi);

    static RInterval sorted(const Rational& a, const Rational& b);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational midpoint() const { return (lo_ + hi_) / Rational(2); }
    bool is_point() const { return lo_ == hi_; }
    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool contains(const RInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    /// o lies in the interior of *this.
    bool strictly_contains(const RInterval& o) const { return lo_ < o.lo_ && o.hi_ < hi_; }
    bool disjoint(const RInterval& o) const { return hi_ < o.lo_ || o.hi_ < lo_; }

    /// Largest |x| over the interval.
    Rational mag() const { return max(abs(lo_), abs(hi_)); }
    /// Smallest |x| over the interval (0 if it straddles 0).
    Rational mig() const;

    RInterval operator-() const { return {-hi_, -lo_}; }
    RInterval operator+(const RInterval& o) const { return {lo_ + o.lo_, hi_ + o.hi_}; }
    RInterval operator-(const RInterval& o) const { return {lo_ - o.hi_, hi_ - o.lo_}; }
    RInterval operator*(const RInterval& o) const;
    /// Requires 0 not in o.
    RInterval operator/(const RInterval& o) const;
    RInterval operator+(const Rational& s) const { return {lo_ + s, hi_ + s}; }
    RInterval operator-(const Rational& s) const { return {lo_ - s, hi_ - s}; }
    RInterval operator*(const Rational& s) const;
    RInterval pow(unsigned n) const;

    friend bool operator==(const RInterval& a, const RInterval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

    std::optional<RInterval> intersect(const RInterval& o) const;
    RInterval hull(const RInterval& o) const;
    /// Enclosing interval with dyadic endpoints of denominator 2^bits.
    RInterval outward_dyadic(long bits) const;

    std::string to_string() const;

private:
    Rational lo_, hi_;
};

inline RInterval operator*(const Rational& s, const RInterval& i) { return i * s; }

/// Axis-aligned box in 1-3 dimensions; the carrier for all enclosures.
class Box {
public:
    Box() = default;
    explicit Box(std::vector<RInterval> dims);
    Box(RInterval x) : dims_{std::move(x)} {}
    Box(RInterval x, RInterval y) : dims_{std::move(x), std::move(y)} {}
    Box(RInterval x, RInterval y, RInterval z) : dims_{std::move(x), std::move(y), std::move(z)} {}

    size_t dim() const { return dims_.size(); }
    const RInterval& operator[](size_t i) const { return dims_[i]; }
    RInterval& operator[](size_t i) { return dims_[i]; }

    /// Maximum width over the dimensions.
    Rational width() const;
    std::vector<Rational> midpoint() const;
    bool contains(const Box& o) const;
    bool strictly_contains(const Box& o) const;
    bool disjoint(const Box& o) const;
    std::optional<Box> intersect(const Box& o) const;

    std::string to_string() const;

private:
    std::vector<RInterval> dims_;
};

/// Rectangular complex interval; used wherever enclosures of complex values
/// are combined arithmetically.
struct CInterval {
    RInterval re;
    RInterval im;

    CInterval() = default;
    CInterval(RInterval r) : re(std::move(r)), im(Rational(0)) {}
    CInterval(RInterval r, RInterval i) : re(std::move(r)), im(std::move(i)) {}
    explicit CInterval(const ComplexRational& z) : re(z.re()), im(z.im()) {}

    bool contains(const ComplexRational& z) const { return re.contains(z.re()) && im.contains(z.im()); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }

    CInterval operator+(const CInterval& o) const { return {re + o.re, im + o.im}; }
    CInterval operator-(const CInterval& o) const { return {re - o.re, im - o.im}; }
    CInterval operator*(const CInterval& o) const;
    /// Requires 0 not in o (norm interval excludes 0).
    CInterval operator/(const CInterval& o) const;
    CInterval conj() const { return {re, -im}; }
    /// Enclosure of |z|^2.
    RInterval norm() const { return re.pow(2) + im.pow(2); }
    CInterval pow(unsigned n) const;
    CInterval outward_dyadic(long bits) const { return {re.outward_dyadic(bits), im.outward_dyadic(bits)}; }
    Rational max_half_width() const;
};

}  // namespace certival

#endif
