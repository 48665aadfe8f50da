#ifndef CERTIVAL_POLYNOMIAL_HPP
#define CERTIVAL_POLYNOMIAL_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "certival/interval.hpp"
#include "certival/rational.hpp"

namespace certival {

/// Dense univariate polynomial; coefficient index equals degree.
/// The zero polynomial has an empty coefficient vector and degree -1.
template <typename T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
    static Poly monomial(T v, unsigned deg) {
        std::vector<T> c(deg + 1, T(0));
        c[deg] = std::move(v);
        return Poly(std::move(c));
    }
    static Poly variable() { return monomial(T(1), 1); }

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    T coeff(size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const T& leading() const {
        if (c_.empty()) throw std::domain_error("Poly: zero polynomial has no leading coefficient");
        return c_.back();
    }
    const std::vector<T>& coeffs() const { return c_; }

    Poly operator-() const {
        std::vector<T> c = c_;
        for (auto& v : c) v = -v;
        return Poly(std::move(c));
    }

    Poly operator+(const Poly& o) const {
        std::vector<T> c(std::max(c_.size(), o.c_.size()), T(0));
        for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
        return Poly(std::move(c));
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<T> c(c_.size() + o.c_.size() - 1, T(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(c));
    }

    Poly operator*(const T& s) const {
        std::vector<T> c = c_;
        for (auto& v : c) v = v * s;
        return Poly(std::move(c));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(c));
    }

    /// Horner evaluation at any point type constructible from T.
    template <typename P>
    P eval(const P& x) const {
        if (c_.empty()) return P(T(0));
        P acc(c_.back());
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + P(c_[i]);
        return acc;
    }

    /// p(-x)
    Poly negate_arg() const {
        std::vector<T> c = c_;
        for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
        return Poly(std::move(c));
    }

    /// p(s*x)
    Poly scale_arg(const T& s) const {
        std::vector<T> c = c_;
        T f(1);
        for (size_t i = 1; i < c.size(); ++i) {
            f = f * s;
            c[i] = c[i] * f;
        }
        return Poly(std::move(c));
    }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

using UniPoly = Poly<Rational>;
using CPoly = Poly<ComplexRational>;

/// Exact Horner evaluation of a rational polynomial at a complex point.
ComplexRational eval_exact(const UniPoly& p, const ComplexRational& z);

/// Enclosure of the image of p over the interval (Horner form).
RInterval interval_eval(const UniPoly& p, const RInterval& x);

/// Taylor coefficients [p(c), p'(c)/1!, ..., p^(d)(c)/d!], exact.
std::vector<Rational> taylor_coeffs_at(const UniPoly& p, const Rational& c);
std::vector<ComplexRational> taylor_coeffs_at(const UniPoly& p, const ComplexRational& c);

/// Quotient and remainder: f = q*g + r with deg r < deg q.
std::pair<UniPoly, UniPoly> poly_divmod(const UniPoly& f, const UniPoly& q);

/// Primitive gcd over Q, normalized to integer coefficients with positive
/// leading coefficient (constant 1 for coprime inputs).
UniPoly poly_gcd(const UniPoly& a, const UniPoly& b);

/// Content-free integer image of p with positive leading coefficient.
UniPoly primitive_part(const UniPoly& p);

struct SquarefreeFactorization {
    struct Part {
        UniPoly factor;  // squarefree, primitive integer, positive leading coefficient
        unsigned multiplicity;
    };
    std::vector<Part> factors;
};

/// Yun decomposition; factors are squarefree and pairwise coprime, and
/// their multiplicity-weighted product equals p up to a rational constant.
SquarefreeFactorization squarefree_factorization(const UniPoly& p);

/// B with all complex roots in |z| <= B (1 + max |c_i/c_d|).
Rational cauchy_root_bound(const UniPoly& p);

std::string poly_to_string(const UniPoly& p, const std::string& var = "x");

}  // namespace certival

#endif
