#ifndef CERTIVAL_RATIONAL_HPP
#define CERTIVAL_RATIONAL_HPP

#include <gmpxx.h>
#include <iosfwd>
#include <string>

namespace certival {

/// Exact arbitrary-precision rational number.
///
/// Values are kept canonical at all times: the denominator is positive and
/// coprime to the numerator.  All arithmetic is exact; this is the only
/// ground-truth number representation in the library.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(const mpz_class& n) : v_(n) {}
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);

    /// Parses "n", "n/d", decimal ("1.25") or scientific ("1e-14") notation.
    static Rational from_string(const std::string& text);

    /// 2^e for any (possibly negative) exponent.
    static Rational pow2(long e);

    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// x^e with integer exponent; e < 0 requires x != 0.
    Rational pow_int(long e) const;

    mpz_class floor() const;
    mpz_class ceil() const;

    /// Largest multiple of 2^-bits that is <= *this.
    Rational round_down_dyadic(long bits) const;
    /// Smallest multiple of 2^-bits that is >= *this.
    Rational round_up_dyadic(long bits) const;

    std::string to_string() const;
    double to_double() const { return v_.get_d(); }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Rational enclosure of a k-th root: lower^k <= x <= upper^k and
/// upper - lower <= tol.  Bisection seeded by an integer-part estimate;
/// exact roots are returned as degenerate brackets.
struct RootBounds {
    Rational lower;
    Rational upper;
};
RootBounds kth_root_bounds(const Rational& x, unsigned k, const Rational& tol);

/// Exact complex number with rational real and imaginary parts.
class ComplexRational {
public:
    ComplexRational() = default;
    ComplexRational(Rational re) : re_(std::move(re)) {}
    ComplexRational(long re) : re_(re) {}
    ComplexRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    ComplexRational conj() const { return {re_, -im_}; }
    /// |z|^2, exact.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    ComplexRational operator-() const { return {-re_, -im_}; }
    ComplexRational& operator+=(const ComplexRational& o);
    ComplexRational& operator-=(const ComplexRational& o);
    ComplexRational& operator*=(const ComplexRational& o);
    ComplexRational& operator/=(const ComplexRational& o);

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

    std::string to_string() const;

private:
    Rational re_;
    Rational im_;
};

std::ostream& operator<<(std::ostream& os, const ComplexRational& z);

/// Rational bracket of |z|: lower <= |z| <= upper, upper - lower <= tol.
RootBounds modulus_bounds(const ComplexRational& z, const Rational& tol);

/// Cheap rational upper bound on |z| (no tolerance guarantee).
Rational modulus_upper(const ComplexRational& z);
/// Cheap rational lower bound on |z|.
Rational modulus_lower(const ComplexRational& z);

}  // namespace certival

#endif
