#include "certival/polynomial.hpp"

#include <sstream>

namespace certival {

ComplexRational eval_exact(const UniPoly& p, const ComplexRational& z) {
    return p.eval<ComplexRational>(z);
}

RInterval interval_eval(const UniPoly& p, const RInterval& x) {
    if (p.is_zero()) return RInterval(Rational(0));
    const auto& c = p.coeffs();
    RInterval acc{c.back(), c.back()};
    for (size_t i = c.size() - 1; i-- > 0;) acc = acc * x + RInterval(c[i]);
    return acc;
}

namespace {

// in-place Taylor shift: coefficients of p(x + c)
template <typename T>
std::vector<T> taylor_shift(const std::vector<T>& coeffs, const T& c) {
    std::vector<T> b(coeffs.begin(), coeffs.end());
    if (b.empty()) return b;
    size_t d = b.size() - 1;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = d - 1; j + 1 > i; --j) b[j] += b[j + 1] * c;
    return b;
}

// exponent e with den = 2^e, or -1 if den is not a power of two
long pow2_exponent(const mpz_class& den) {
    if (mpz_popcount(den.get_mpz_t()) != 1) return -1;
    return static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
}

// Dyadic centers admit an all-integer shift: with c = g/2^s and integer
// coefficients Q_k, the scaled polynomial sum Q_k 2^(s(d-k)) (g + w)^k has
// integer Taylor coefficients P_j, and t_j = P_j / 2^(s(d-j)).  This avoids
// per-operation rational normalization in the subdivision hot loop.
bool dyadic_complex_shift(const UniPoly& p, const ComplexRational& c,
                          std::vector<ComplexRational>& out) {
    long sx = pow2_exponent(c.re().denominator());
    long sy = pow2_exponent(c.im().denominator());
    if (sx < 0 || sy < 0) return false;
    long s = std::max(sx, sy);

    mpz_class den_lcm = 1;
    for (const auto& coef : p.coeffs()) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), coef.denominator().get_mpz_t());
        den_lcm = den_lcm / g * coef.denominator();
    }
    size_t d = static_cast<size_t>(p.degree());
    mpz_class ga = c.re().numerator() << static_cast<unsigned long>(s - sx);
    mpz_class gb = c.im().numerator() << static_cast<unsigned long>(s - sy);

    std::vector<mpz_class> re(d + 1), im(d + 1);
    for (size_t k = 0; k <= d; ++k) {
        const Rational& coef = p.coeff(k);
        re[k] = coef.numerator() * (den_lcm / coef.denominator());
        re[k] <<= static_cast<unsigned long>(s * (d - k));
    }
    mpz_class tr, ti, t1, t2;
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = d - 1; j + 1 > i; --j) {
            // (re[j], im[j]) += (re[j+1], im[j+1]) * (ga + i gb)
            t1 = re[j + 1] * ga;
            t2 = im[j + 1] * gb;
            tr = t1 - t2;
            t1 = re[j + 1] * gb;
            t2 = im[j + 1] * ga;
            ti = t1 + t2;
            re[j] += tr;
            im[j] += ti;
        }
    }
    out.clear();
    out.reserve(d + 1);
    for (size_t j = 0; j <= d; ++j) {
        mpz_class scale = den_lcm << static_cast<unsigned long>(s * (d - j));
        out.emplace_back(Rational(re[j], scale), Rational(im[j], scale));
    }
    return true;
}

}  // namespace

std::vector<Rational> taylor_coeffs_at(const UniPoly& p, const Rational& c) {
    if (p.is_zero()) return {Rational(0)};
    std::vector<ComplexRational> fast;
    if (dyadic_complex_shift(p, ComplexRational(c), fast)) {
        std::vector<Rational> out;
        out.reserve(fast.size());
        for (auto& t : fast) out.push_back(t.re());
        return out;
    }
    return taylor_shift(p.coeffs(), c);
}

std::vector<ComplexRational> taylor_coeffs_at(const UniPoly& p, const ComplexRational& c) {
    if (p.is_zero()) return {ComplexRational(0)};
    std::vector<ComplexRational> fast;
    if (dyadic_complex_shift(p, c, fast)) return fast;
    std::vector<ComplexRational> lifted(p.coeffs().begin(), p.coeffs().end());
    return taylor_shift(lifted, c);
}

std::pair<UniPoly, UniPoly> poly_divmod(const UniPoly& f, const UniPoly& q) {
    if (q.is_zero()) throw std::domain_error("poly_divmod: division by zero polynomial");
    if (f.is_zero() || f.degree() < q.degree()) return {UniPoly(), f};
    std::vector<Rational> rem = f.coeffs();
    int dq = q.degree();
    std::vector<Rational> quot(static_cast<size_t>(f.degree() - dq) + 1, Rational(0));
    const Rational& lead = q.leading();
    for (int i = f.degree(); i >= dq; --i) {
        Rational c = rem[static_cast<size_t>(i)] / lead;
        if (!c.is_zero()) {
            quot[static_cast<size_t>(i - dq)] = c;
            for (int j = 0; j <= dq; ++j)
                rem[static_cast<size_t>(i - dq + j)] -= c * q.coeff(static_cast<size_t>(j));
        }
        rem[static_cast<size_t>(i)] = Rational(0);
    }
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly primitive_part(const UniPoly& p) {
    if (p.is_zero()) return p;
    mpz_class den_lcm = 1;
    for (const auto& c : p.coeffs()) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), c.denominator().get_mpz_t());
        den_lcm = den_lcm / g * c.denominator();
    }
    mpz_class num_gcd = 0;
    std::vector<mpz_class> ints;
    ints.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        mpz_class n = c.numerator() * (den_lcm / c.denominator());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        ints.push_back(std::move(n));
    }
    if (sgn(ints.back()) < 0) num_gcd = -num_gcd;
    std::vector<Rational> out;
    out.reserve(ints.size());
    for (auto& n : ints) out.emplace_back(mpz_class(n / num_gcd));
    return UniPoly(std::move(out));
}

namespace {

using ZVec = std::vector<mpz_class>;  // dense integer coefficients, ascending

ZVec to_ints(const UniPoly& p) {
    UniPoly pp = primitive_part(p);
    ZVec out;
    out.reserve(pp.coeffs().size());
    for (const auto& c : pp.coeffs()) out.push_back(c.numerator());
    return out;
}

void strip_content(ZVec& a) {
    if (a.empty()) return;
    mpz_class g = 0;
    for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (sgn(a.back()) < 0) g = -g;
    if (g != 1 && sgn(g) != 0)
        for (auto& c : a) c /= g;
}

// integer pseudo-remainder of a by b (deg a >= deg b >= 0)
ZVec pseudo_rem(ZVec a, const ZVec& b) {
    const mpz_class& lead = b.back();
    size_t db = b.size() - 1;
    while (a.size() >= b.size() && !a.empty()) {
        mpz_class top = a.back();
        size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lead;
        for (size_t i = 0; i < db; ++i) a[shift + i] -= top * b[i];
        a.pop_back();
        while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
    }
    return a;
}

// degree of gcd in GF(p)[x]; -1 when the prime is unusable
int gcd_degree_mod_p(const ZVec& a, const ZVec& b, unsigned long p) {
    auto reduce = [&](const ZVec& v) {
        std::vector<unsigned long> out(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            out[i] = mpz_fdiv_ui(v[i].get_mpz_t(), p);
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    };
    auto powmod = [&](unsigned long base, unsigned long e) {
        unsigned long acc = 1;
        unsigned long b2 = base % p;
        while (e) {
            if (e & 1) acc = static_cast<unsigned long>((__uint128_t)acc * b2 % p);
            b2 = static_cast<unsigned long>((__uint128_t)b2 * b2 % p);
            e >>= 1;
        }
        return acc;
    };
    std::vector<unsigned long> x = reduce(a), y = reduce(b);
    if (x.size() != a.size() || y.size() != b.size()) return -1;  // leading coeff vanished
    while (!y.empty()) {
        // x = x mod y in GF(p)
        unsigned long inv = powmod(y.back(), p - 2);
        while (x.size() >= y.size()) {
            unsigned long c = static_cast<unsigned long>((__uint128_t)x.back() * inv % p);
            size_t shift = x.size() - y.size();
            if (c != 0) {
                for (size_t i = 0; i + 1 < y.size(); ++i) {
                    unsigned long t = static_cast<unsigned long>((__uint128_t)c * y[i] % p);
                    x[shift + i] = (x[shift + i] + p - t) % p;
                }
            }
            x.pop_back();
            while (!x.empty() && x.back() == 0) x.pop_back();
        }
        std::swap(x, y);
    }
    return static_cast<int>(x.size()) - 1;
}

// primitive PRS over the integers
ZVec gcd_ints(ZVec a, ZVec b) {
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        ZVec r = pseudo_rem(std::move(a), b);
        strip_content(r);
        a = std::move(b);
        b = std::move(r);
    }
    strip_content(a);
    return a;
}

}  // namespace

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero()) return b.is_zero() ? UniPoly() : primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    ZVec za = to_ints(a), zb = to_ints(b);
    // most gcd queries are coprimality checks; one modular probe settles them
    for (unsigned long p : {2147483629UL, 2147483587UL, 2147483563UL}) {
        int d = gcd_degree_mod_p(za, zb, p);
        if (d == 0) return UniPoly::constant(Rational(1));
        if (d > 0) break;  // usable prime, but a nontrivial factor may exist
    }
    ZVec g = gcd_ints(std::move(za), std::move(zb));
    std::vector<Rational> out;
    out.reserve(g.size());
    for (auto& c : g) out.emplace_back(c);
    return UniPoly(std::move(out));
}

SquarefreeFactorization squarefree_factorization(const UniPoly& p) {
    if (p.is_zero()) throw std::domain_error("squarefree_factorization: zero polynomial");
    SquarefreeFactorization out;
    if (p.degree() == 0) return out;

    UniPoly P = primitive_part(p);
    UniPoly g = poly_gcd(P, P.derivative());
    UniPoly w = poly_divmod(P, g).first;
    UniPoly y = poly_divmod(P.derivative(), g).first;
    UniPoly z = y - w.derivative();
    unsigned i = 1;
    while (w.degree() > 0) {
        UniPoly a = poly_gcd(w, z);
        if (a.degree() > 0) out.factors.push_back({a, i});
        w = poly_divmod(w, a).first;
        y = poly_divmod(z, a).first;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

Rational cauchy_root_bound(const UniPoly& p) {
    if (p.degree() < 1) throw std::domain_error("cauchy_root_bound: degree must be >= 1");
    const Rational lead = abs(p.leading());
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) m = max(m, abs(p.coeff(static_cast<size_t>(i))));
    return Rational(1) + m / lead;
}

std::string poly_to_string(const UniPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        Rational c = p.coeff(static_cast<size_t>(i));
        if (c.is_zero()) continue;
        if (!first) os << (c.sign() > 0 ? " + " : " - ");
        else if (c.sign() < 0) os << "-";
        Rational a = abs(c);
        if (i == 0 || a != Rational(1)) os << a.to_string();
        if (i > 0) {
            if (a != Rational(1)) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

template <typename T>
std::string Poly<T>::to_string(const std::string& var) const {
    if constexpr (std::is_same_v<T, Rational>) {
        return poly_to_string(*this, var);
    } else {
        std::ostringstream os;
        os << "poly(deg " << degree() << ")";
        (void)var;
        return os.str();
    }
}

template std::string Poly<Rational>::to_string(const std::string&) const;
template std::string Poly<ComplexRational>::to_string(const std::string&) const;

}  // namespace certival
