#include "certival/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace certival {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (sgn(den) == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
}

Rational Rational::from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty string");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        mpz_class n(text.substr(0, slash));
        mpz_class d(text.substr(slash + 1));
        return Rational(n, d);
    }
    // decimal / scientific form: [sign] digits [. digits] [e [sign] digits]
    size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    std::string int_part, frac_part;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) int_part += text[i++];
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) frac_part += text[i++];
    }
    long exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        std::string digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
        if (digits.empty()) throw std::invalid_argument("Rational: bad exponent in '" + text + "'");
        exp10 = std::stol(digits);
        if (eneg) exp10 = -exp10;
    }
    if (i != text.size() || (int_part.empty() && frac_part.empty()))
        throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    mpz_class mant(int_part.empty() ? "0" : int_part);
    for (char c : frac_part) {
        mant *= 10;
        mant += c - '0';
    }
    exp10 -= static_cast<long>(frac_part.size());
    mpz_class num = mant, den = 1;
    mpz_class ten10;
    mpz_ui_pow_ui(ten10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0)
        num *= ten10;
    else
        den = ten10;
    if (neg) num = -num;
    return Rational(num, den);
}

Rational Rational::pow2(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::pow_int(long e) const {
    if (e == 0) return Rational(1);
    if (e < 0) {
        if (is_zero()) throw std::domain_error("Rational: 0 to negative power");
        return (Rational(1) / *this).pow_int(-e);
    }
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    Rational r;
    r.v_ = mpq_class(n, d);  // already canonical: gcd(n,d)=1 is preserved by powering
    return r;
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

mpz_class Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

Rational Rational::round_down_dyadic(long bits) const {
    if (bits < 0) throw std::invalid_argument("round_down_dyadic: negative bits");
    mpz_class scaled_num = v_.get_num() << static_cast<unsigned long>(bits);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), v_.get_den().get_mpz_t());
    mpz_class den = mpz_class(1) << static_cast<unsigned long>(bits);
    return Rational(q, den);
}

Rational Rational::round_up_dyadic(long bits) const {
    if (bits < 0) throw std::invalid_argument("round_up_dyadic: negative bits");
    mpz_class scaled_num = v_.get_num() << static_cast<unsigned long>(bits);
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), v_.get_den().get_mpz_t());
    mpz_class den = mpz_class(1) << static_cast<unsigned long>(bits);
    return Rational(q, den);
}

std::string Rational::to_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

RootBounds kth_root_bounds(const Rational& x, unsigned k, const Rational& tol) {
    if (x.sign() < 0) throw std::domain_error("kth_root_bounds: negative radicand");
    if (k == 0) throw std::invalid_argument("kth_root_bounds: k must be >= 1");
    if (tol.sign() <= 0) throw std::invalid_argument("kth_root_bounds: tol must be > 0");
    if (x.is_zero()) return {Rational(0), Rational(0)};
    if (k == 1) return {x, x};

    // exact case: numerator and denominator both perfect k-th powers
    {
        mpz_class rn, rd;
        int en = mpz_root(rn.get_mpz_t(), x.numerator().get_mpz_t(), k);
        if (en != 0) {
            int ed = mpz_root(rd.get_mpz_t(), x.denominator().get_mpz_t(), k);
            if (ed != 0) {
                Rational r(rn, rd);
                return {r, r};
            }
        }
    }

    // integer-part seed: n = floor(floor(x)^(1/k)) satisfies n^k <= x
    mpz_class seed;
    mpz_root(seed.get_mpz_t(), x.floor().get_mpz_t(), k);
    Rational lo(seed);
    Rational hi(mpz_class(seed + 1));
    while (hi.pow_int(k) < x) hi += Rational(1);  // guard against floor truncation
    while (hi - lo > tol) {
        Rational mid = (lo + hi) / Rational(2);
        Rational mk = mid.pow_int(static_cast<long>(k));
        if (mk == x) return {mid, mid};
        if (mk < x)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

ComplexRational& ComplexRational::operator/=(const ComplexRational& o) {
    Rational n = o.norm();
    if (n.is_zero()) throw std::domain_error("ComplexRational: division by zero");
    ComplexRational num = *this * o.conj();
    re_ = num.re() / n;
    im_ = num.im() / n;
    return *this;
}

std::string ComplexRational::to_string() const {
    if (im_.is_zero()) return re_.to_string();
    std::string s = re_.to_string();
    s += im_.sign() < 0 ? " - " : " + ";
    s += abs(im_).to_string() + "*i";
    return s;
}

std::ostream& operator<<(std::ostream& os, const ComplexRational& z) { return os << z.to_string(); }

RootBounds modulus_bounds(const ComplexRational& z, const Rational& tol) {
    if (z.is_zero()) return {Rational(0), Rational(0)};
    if (z.im().is_zero()) {
        Rational a = abs(z.re());
        return {a, a};
    }
    if (z.re().is_zero()) {
        Rational a = abs(z.im());
        return {a, a};
    }
    return kth_root_bounds(z.norm(), 2, tol);
}

Rational modulus_upper(const ComplexRational& z) {
    // |z| <= |re| + |im|
    return abs(z.re()) + abs(z.im());
}

Rational modulus_lower(const ComplexRational& z) {
    // |z| >= max(|re|, |im|)
    return max(abs(z.re()), abs(z.im()));
}

}  // namespace certival
