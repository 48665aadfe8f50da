#include "certival/isolation.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>

namespace certival {

namespace {

long bits_for(const Rational& bound) {
    if (bound.sign() <= 0) throw std::invalid_argument("bits_for: nonpositive bound");
    if (bound >= Rational(1)) return 16;
    mpz_class inv = (Rational(1) / bound).ceil();
    return static_cast<long>(mpz_sizeinbase(inv.get_mpz_t(), 2)) + 16;
}

Rational pow2_at_least(const Rational& x) {
    Rational p(1);
    while (p < x) p *= Rational(2);
    return p;
}

// ---------------------------------------------------------------------------
// Descartes / VCA real-root isolation on integer polynomials
// ---------------------------------------------------------------------------

using ZPoly = std::vector<mpz_class>;  // dense, ascending degree

ZPoly to_zpoly(const UniPoly& p) {
    UniPoly pp = primitive_part(p);
    ZPoly z;
    z.reserve(pp.coeffs().size());
    for (const auto& c : pp.coeffs()) z.push_back(c.numerator());
    return z;
}

int sign_variations(const ZPoly& c) {
    int count = 0;
    int prev = 0;
    for (const auto& v : c) {
        int s = sgn(v);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

// in-place Taylor shift by 1: p(x) -> p(x+1)
void shift1(ZPoly& c) {
    if (c.size() < 2) return;
    size_t d = c.size() - 1;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = d - 1; j + 1 > i; --j) c[j] += c[j + 1];
}

// 2^d p(x/2): keeps integer coefficients
ZPoly scale_half(const ZPoly& c) {
    ZPoly out = c;
    size_t d = c.size() - 1;
    for (size_t i = 0; i < c.size(); ++i) out[i] <<= static_cast<unsigned long>(d - i);
    return out;
}

// sign variations of (1+x)^d T(1/(1+x)); Descartes bound for root count in (0,1)
int descartes_bound_01(const ZPoly& T) {
    ZPoly rev(T.rbegin(), T.rend());
    shift1(rev);
    return sign_variations(rev);
}

struct RealIsolationOutput {
    std::vector<RInterval> intervals;  // open intervals, exactly one simple root
                                       // strictly inside; an endpoint may itself
                                       // be a different (exactly hit) root
    std::vector<Rational> exact;       // exact rational roots
};

// roots of T in (0,1) mapped affinely onto (lo, hi); requires T(0), T(1) != 0
void vca_recurse(ZPoly T, const Rational& lo, const Rational& hi, RealIsolationOutput& out,
                 int depth) {
    if (depth > 8000) throw std::runtime_error("real root isolation: recursion depth exceeded");
    int v = descartes_bound_01(T);
    if (v == 0) return;
    if (v == 1) {
        out.intervals.emplace_back(lo, hi);
        return;
    }
    Rational mid = (lo + hi) / Rational(2);
    ZPoly L = scale_half(T);
    ZPoly R = L;
    shift1(R);
    if (sgn(R.front()) == 0) {
        out.exact.push_back(mid);
        while (!R.empty() && sgn(R.front()) == 0) R.erase(R.begin());
    }
    vca_recurse(std::move(L), lo, mid, out, depth + 1);
    vca_recurse(std::move(R), mid, hi, out, depth + 1);
}

// exact points and isolating intervals for all real roots of squarefree p
RealIsolationOutput isolate_real_core(UniPoly p) {
    RealIsolationOutput out;
    if (p.degree() < 1) return out;
    if (p.eval<Rational>(Rational(0)).is_zero()) {
        out.exact.push_back(Rational(0));
        p = poly_divmod(p, UniPoly::variable()).first;
        if (p.degree() < 1) return out;
    }
    // all roots lie strictly inside (-bound, bound)
    Rational bound = pow2_at_least(cauchy_root_bound(p) + Rational(1));
    vca_recurse(to_zpoly(p.scale_arg(bound)), Rational(0), bound, out, 0);

    UniPoly neg = p.negate_arg();
    RealIsolationOutput tmp;
    vca_recurse(to_zpoly(neg.scale_arg(bound)), Rational(0), bound, tmp, 0);
    for (auto& iv : tmp.intervals) out.intervals.emplace_back(-iv.hi(), -iv.lo());
    for (auto& e : tmp.exact) out.exact.push_back(-e);
    return out;
}

void require_squarefree(const UniPoly& p, const char* who) {
    if (p.is_zero()) throw std::invalid_argument(std::string(who) + ": zero polynomial");
    if (poly_gcd(p, p.derivative()).degree() > 0)
        throw std::invalid_argument(std::string(who) + ": polynomial is not squarefree");
}

// ---------------------------------------------------------------------------
// Krawczyk operator, 2x2 conjugate-split specialization
// ---------------------------------------------------------------------------

struct Krawczyk2Result {
    KrawczykResult verdict;
    Box image;  // K(X); meaningful only when image_valid
    bool image_valid = false;
};

// modulus bounds via one Newton step from |re|+|im|: by AM-GM the iterate
// (u + norm/u)/2 stays above sqrt(norm) for any positive u
Rational cheap_mod_upper(const ComplexRational& z) {
    if (z.im().is_zero()) return abs(z.re());
    if (z.re().is_zero()) return abs(z.im());
    Rational u = abs(z.re()) + abs(z.im());
    return (u + z.norm() / u) / Rational(2);
}
Rational cheap_mod_lower(const ComplexRational& z) {
    if (z.im().is_zero()) return abs(z.re());
    if (z.re().is_zero()) return abs(z.im());
    return z.norm() / cheap_mod_upper(z);
}


// One Taylor shift of q at the box center powers everything the subdivision
// needs: a disk exclusion test, the midpoint Jacobian, and a disk enclosure
// of q' over the box.  F = (q_r, q_i) has Jacobian [[Re q', -Im q'],
// [Im q', Re q']] by the Cauchy-Riemann equations.
Krawczyk2Result krawczyk2(const UniPoly& q, const Box& X) {
    Rational cx = X[0].midpoint();
    Rational cy = X[1].midpoint();
    ComplexRational c{cx, cy};
    auto taylor = taylor_coeffs_at(q, c);
    // disk radius covering the box: Newton-tightened half-diagonal bound
    Rational r = (X[0].width() + X[1].width()) / Rational(2);
    if (r.sign() > 0) {
        Rational hyp2 = (X[0].width().pow_int(2) + X[1].width().pow_int(2)) / Rational(4);
        r = (r + hyp2 / r) / Rational(2);
    }

    // exclusion: |q(z)| >= |t0| - sum_{j>=1} |t_j| r^j on the disk
    {
        Rational tail(0);
        Rational rpow = r;
        for (size_t j = 1; j < taylor.size(); ++j) {
            tail += cheap_mod_upper(taylor[j]) * rpow;
            rpow *= r;
        }
        if (cheap_mod_lower(taylor[0]) > tail) return {KrawczykResult::NoRoot, X, false};
    }

    // q'(z) lies within R2 of t1 for every z in the disk
    const ComplexRational& t1 = taylor.size() > 1 ? taylor[1] : ComplexRational();
    Rational u = t1.re(), v = t1.im();
    Rational det = u * u + v * v;
    if (det.is_zero()) return {KrawczykResult::Unknown, X, false};
    Rational r2(0);
    {
        Rational rpow(1);
        for (size_t j = 2; j < taylor.size(); ++j) {
            r2 += Rational(static_cast<long>(j)) * cheap_mod_upper(taylor[j]) * rpow;
            rpow *= r;
        }
        r2 = r2 * r;
    }
    RInterval A{u - r2, u + r2};
    RInterval Bv{v - r2, v + r2};

    // Y = inverse of the midpoint Jacobian [[u, -v], [v, u]]
    Rational w11 = u / det, w12 = v / det, w21 = -v / det, w22 = u / det;
    Rational f1 = taylor[0].re();
    Rational f2 = taylor[0].im();

    // M = I - Y * J(X) with J(X) = [[A, -Bv], [Bv, A]]
    RInterval m11 = RInterval(Rational(1)) - (A * w11 + Bv * w12);
    RInterval m12 = Bv * w11 - A * w12;
    RInterval m21 = -(A * w21 + Bv * w22);
    RInterval m22 = RInterval(Rational(1)) - (A * w22 - Bv * w21);

    RInterval dx = X[0] - cx;
    RInterval dy = X[1] - cy;

    RInterval kx = (m11 * dx + m12 * dy) + (cx - (w11 * f1 + w12 * f2));
    RInterval ky = (m21 * dx + m22 * dy) + (cy - (w21 * f1 + w22 * f2));
    Box K{kx, ky};

    if (X.strictly_contains(K)) return {KrawczykResult::UniqueRoot, K, true};
    if (!X.intersect(K)) return {KrawczykResult::NoRoot, K, true};
    return {KrawczykResult::Unknown, K, true};
}

// ---------------------------------------------------------------------------
// Root-free line scanning shared by subdivision and refinement
// ---------------------------------------------------------------------------

namespace lineprobe {

constexpr unsigned long kPrimes[3] = {2147483629UL, 2147483587UL, 2147483563UL};

unsigned long mod_p(const Rational& r, unsigned long p, bool& ok) {
    unsigned long den = mpz_fdiv_ui(r.denominator().get_mpz_t(), p);
    if (den == 0) {
        ok = false;
        return 0;
    }
    unsigned long num = mpz_fdiv_ui(r.numerator().get_mpz_t(), p);
    // den^(p-2) mod p
    unsigned long inv = 1, b = den, e = p - 2;
    while (e) {
        if (e & 1) inv = static_cast<unsigned long>((__uint128_t)inv * b % p);
        b = static_cast<unsigned long>((__uint128_t)b * b % p);
        e >>= 1;
    }
    return static_cast<unsigned long>((__uint128_t)num * inv % p);
}

// restriction of g to the line (as a polynomial in the other variable), mod p
std::vector<unsigned long> restrict_mod_p(const BiPoly& g, bool vertical, unsigned long v_p,
                                          unsigned long p, bool& ok) {
    std::vector<unsigned long> out;
    for (int i = 0; i <= g.deg_x() && ok; ++i) {
        for (int j = 0; j <= g.deg_y_row(static_cast<size_t>(i)); ++j) {
            Rational c = g.coeff(static_cast<size_t>(i), static_cast<size_t>(j));
            if (c.is_zero()) continue;
            unsigned long cp = mod_p(c, p, ok);
            if (!ok) break;
            unsigned long vpow = 1;
            int e = vertical ? i : j;
            for (int t = 0; t < e; ++t)
                vpow = static_cast<unsigned long>((__uint128_t)vpow * v_p % p);
            size_t idx = static_cast<size_t>(vertical ? j : i);
            if (out.size() <= idx) out.resize(idx + 1, 0);
            out[idx] =
                (out[idx] + static_cast<unsigned long>((__uint128_t)cp * vpow % p)) % p;
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// exact coefficient of the restriction at one index (for degree validation)
Rational restriction_coeff(const BiPoly& g, bool vertical, const Rational& value, int idx) {
    Rational acc(0);
    if (vertical) {
        // poly in y; coefficient of y^idx is sum_i c_{i,idx} value^i
        for (int i = 0; i <= g.deg_x(); ++i) {
            Rational c = g.coeff(static_cast<size_t>(i), static_cast<size_t>(idx));
            if (!c.is_zero()) acc += c * value.pow_int(i);
        }
    } else {
        // poly in x; coefficient of x^idx is sum_j c_{idx,j} value^j
        for (int j = 0; j <= g.deg_y_row(static_cast<size_t>(idx)); ++j) {
            Rational c = g.coeff(static_cast<size_t>(idx), static_cast<size_t>(j));
            if (!c.is_zero()) acc += c * value.pow_int(j);
        }
    }
    return acc;
}

// structural upper bound on the restriction degree
int restriction_degree_bound(const BiPoly& g, bool vertical) {
    if (vertical) {
        int d = -1;
        for (int i = 0; i <= g.deg_x(); ++i)
            d = std::max(d, g.deg_y_row(static_cast<size_t>(i)));
        return d;
    }
    return g.deg_x();
}

// true when the reduced polynomial's degree provably equals the true degree
bool degree_valid(const BiPoly& g, bool vertical, const Rational& value, int reduced_deg) {
    int bound = restriction_degree_bound(g, vertical);
    for (int idx = bound; idx > reduced_deg; --idx)
        if (!restriction_coeff(g, vertical, value, idx).is_zero()) return false;
    return true;
}

int gcd_degree(std::vector<unsigned long> x, std::vector<unsigned long> y, unsigned long p) {
    auto powmod = [&](unsigned long base, unsigned long e) {
        unsigned long acc = 1, b = base % p;
        while (e) {
            if (e & 1) acc = static_cast<unsigned long>((__uint128_t)acc * b % p);
            b = static_cast<unsigned long>((__uint128_t)b * b % p);
            e >>= 1;
        }
        return acc;
    };
    while (!y.empty()) {
        unsigned long inv = powmod(y.back(), p - 2);
        while (x.size() >= y.size() && !x.empty()) {
            unsigned long c = static_cast<unsigned long>((__uint128_t)x.back() * inv % p);
            size_t shift = x.size() - y.size();
            if (c) {
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

// certified "restrictions are coprime" probe; certain=false means undecided
bool coprime(const BiPolyPair& Q, bool vertical, const Rational& value, bool& certain) {
    for (unsigned long p : kPrimes) {
        bool ok = true;
        unsigned long v_p = mod_p(value, p, ok);
        if (!ok) continue;
        auto u = restrict_mod_p(Q.re, vertical, v_p, p, ok);
        auto w = restrict_mod_p(Q.im, vertical, v_p, p, ok);
        if (!ok || u.empty() || w.empty()) continue;
        // deg gcd_Q <= deg gcd_p requires the true leading coefficients to
        // survive the reduction
        if (!degree_valid(Q.re, vertical, value, static_cast<int>(u.size()) - 1)) continue;
        if (!degree_valid(Q.im, vertical, value, static_cast<int>(w.size()) - 1)) continue;
        certain = true;
        return gcd_degree(std::move(u), std::move(w), p) == 0;
    }
    certain = false;
    return false;
}

}  // namespace lineprobe

// true iff q_r = q_i = 0 provably has no solution on the given axis line
// within the other-coordinate range
bool line_free(const BiPolyPair& Q, bool vertical, const Rational& value, const RInterval& range) {
    {
        bool certain = false;
        bool coprime = lineprobe::coprime(Q, vertical, value, certain);
        if (certain && coprime) return true;
    }
    UniPoly u = vertical ? Q.re.at_x(value) : Q.re.at_y(value);
    UniPoly w = vertical ? Q.im.at_x(value) : Q.im.at_y(value);
    UniPoly g;
    if (u.is_zero() && w.is_zero()) return false;
    if (u.is_zero())
        g = w;
    else if (w.is_zero())
        g = u;
    else
        g = poly_gcd(u, w);
    if (g.degree() <= 0) return true;
    for (const auto& part : squarefree_factorization(g).factors)
        if (!isolate_real_roots(part.factor, range).empty()) return false;
    return true;
}

// split coordinate strictly inside iv whose line avoids all roots
Rational free_split_value(const BiPolyPair& Q, bool vertical, const RInterval& iv,
                          const RInterval& other) {
    Rational w = iv.width();
    Rational mid = iv.midpoint();
    for (long k = 0; k < 128; ++k) {
        Rational offset = w * Rational(k % 2 == 0 ? (k / 2) : -(k / 2 + 1), 512);
        Rational cand = mid + offset;
        if (cand <= iv.lo() || cand >= iv.hi()) continue;
        if (line_free(Q, vertical, cand, other)) return cand;
    }
    throw std::runtime_error("could not find a root-free split line");
}

// ---------------------------------------------------------------------------
// Upper-half-plane subdivision for non-real roots
// ---------------------------------------------------------------------------

class ComplexIsolator {
public:
    explicit ComplexIsolator(const UniPoly& q)
        : q_(primitive_part(q)),
          Q_(real_imag_parts(q_)),
          bound_(pow2_at_least(cauchy_root_bound(q_)) + Rational(1)) {}

    // expected = exact number of roots with strictly positive imaginary part;
    // strips descend toward the real axis until all of them are found
    std::vector<Box> isolate_upper(size_t expected) {
        std::vector<Box> found;
        if (expected == 0) return found;
        Rational eta_hi = bound_;
        Rational eta = min(Rational(1, 16), eta_hi / Rational(16));
        for (int strip = 0; strip < 4096 && found.size() < expected; ++strip) {
            eta = free_horizontal_at_most(eta);
            Box region{RInterval{-bound_, bound_}, RInterval{eta, eta_hi}};
            search(region, found, expected);
            eta_hi = eta;
            eta = eta / Rational(16);
        }
        if (found.size() != expected)
            throw std::runtime_error("complex root isolation failed to find all roots");
        return found;
    }

private:
    Rational free_horizontal_at_most(const Rational& target) const {
        RInterval xrange{-bound_, bound_};
        for (long k = 0; k < 256; ++k) {
            Rational cand = target * Rational(256 - k, 256);
            if (cand.sign() <= 0) break;
            if (line_free(Q_, false, cand, xrange)) return cand;
        }
        throw std::runtime_error("could not find a root-free horizontal line");
    }

    void search(const Box& region, std::vector<Box>& found, size_t expected) {
        std::deque<Box> queue{region};
        long steps = 0;
        while (!queue.empty() && found.size() < expected) {
            if (++steps > 4000000)
                throw std::runtime_error("complex isolation: step budget exceeded");
            Box X = queue.front();
            queue.pop_front();
            auto kr = krawczyk2(q_, X);
            if (kr.verdict == KrawczykResult::NoRoot) continue;
            if (kr.verdict == KrawczykResult::UniqueRoot) {
                // outward dyadic rounding keeps later midpoints cheap; the
                // root stays inside and uniqueness is inherited from X
                Box tight = *X.intersect(kr.image);
                long bits = bits_for(max(tight.width(), Rational(1, 1 << 30))) + 16;
                tight = Box{tight[0].outward_dyadic(bits), tight[1].outward_dyadic(bits)};
                found.push_back(*X.intersect(tight));
                continue;
            }
            size_t axis = X[0].width() >= X[1].width() ? 0 : 1;
            Rational split = free_split_value(Q_, axis == 0, X[axis], X[axis == 0 ? 1 : 0]);
            Box left = X, right = X;
            left[axis] = RInterval{X[axis].lo(), split};
            right[axis] = RInterval{split, X[axis].hi()};
            queue.push_back(left);
            queue.push_back(right);
        }
    }

    UniPoly q_;
    BiPolyPair Q_;
    Rational bound_;
};

int compare_midpoints(const IsolatedRoot& a, const IsolatedRoot& b) {
    Rational ra = a.box[0].midpoint();
    Rational rb = b.box[0].midpoint();
    if (ra < rb) return -1;
    if (rb < ra) return 1;
    Rational ia = a.box.dim() > 1 ? a.box[1].midpoint() : Rational(0);
    Rational ib = b.box.dim() > 1 ? b.box[1].midpoint() : Rational(0);
    if (ia < ib) return -1;
    if (ib < ia) return 1;
    return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// IsolatedRoot
// ---------------------------------------------------------------------------

ComplexRational IsolatedRoot::approx() const {
    Rational re = box[0].midpoint();
    Rational im = box.dim() > 1 ? box[1].midpoint() : Rational(0);
    return {re, im};
}

Rational IsolatedRoot::error_radius() const {
    // half-width sum dominates the Euclidean half-diagonal
    Rational r = box[0].width() / Rational(2);
    if (box.dim() > 1) r += box[1].width() / Rational(2);
    return r;
}

// ---------------------------------------------------------------------------
// isolate_real_roots
// ---------------------------------------------------------------------------

std::vector<IsolatedRoot> isolate_real_roots(const UniPoly& p,
                                             const std::optional<RInterval>& domain) {
    require_squarefree(p, "isolate_real_roots");
    if (p.degree() < 1) return {};

    RealIsolationOutput core = isolate_real_core(p);
    std::vector<IsolatedRoot> all;
    for (const auto& e : core.exact) {
        IsolatedRoot r;
        r.box = Box{RInterval{e, e}};
        r.is_real = true;
        all.push_back(std::move(r));
    }
    for (const auto& iv : core.intervals) {
        IsolatedRoot r;
        r.box = Box{iv};
        r.is_real = true;
        all.push_back(std::move(r));
    }
    std::sort(all.begin(), all.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) {
        return compare_midpoints(a, b) < 0;
    });
    if (!domain) return all;

    const RInterval& dom = *domain;
    std::vector<IsolatedRoot> out;
    for (auto& r : all) {
        RInterval iv = r.box[0];
        if (iv.is_point()) {
            if (dom.contains(iv.lo())) out.push_back(r);
            continue;
        }
        if (dom.contains(iv)) {
            out.push_back(r);
            continue;
        }
        if (iv.disjoint(dom)) continue;
        // partial overlap: a root exactly on a domain endpoint is decided by
        // exact evaluation, anything else by refinement
        bool endpoint_hit = false;
        for (const Rational& e : {dom.lo(), dom.hi()}) {
            if (iv.contains(e) && p.eval<Rational>(e).is_zero()) {
                r.box = Box{RInterval{e, e}};
                out.push_back(r);
                endpoint_hit = true;
                break;
            }
        }
        if (endpoint_hit) continue;
        RootRefiner ref(p, r);
        while (true) {
            const RInterval& cur = ref.root().box[0];
            if (dom.contains(cur)) {
                out.push_back(ref.root());
                break;
            }
            if (cur.disjoint(dom)) break;
            if (cur.is_point()) {
                if (dom.contains(cur.lo())) out.push_back(ref.root());
                break;
            }
            ref.refine_to(cur.width() / Rational(4));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// isolate_complex_roots
// ---------------------------------------------------------------------------

std::vector<IsolatedRoot> isolate_complex_roots(const UniPoly& p) {
    require_squarefree(p, "isolate_complex_roots");
    if (p.degree() < 1) throw std::invalid_argument("isolate_complex_roots: degree must be >= 1");

    std::vector<IsolatedRoot> out = isolate_real_roots(p);
    size_t real_count = out.size();
    size_t deg = static_cast<size_t>(p.degree());
    if ((deg - real_count) % 2 != 0)
        throw std::runtime_error("isolate_complex_roots: inconsistent real root count");
    size_t upper = (deg - real_count) / 2;

    if (upper > 0) {
        ComplexIsolator iso(p);
        for (const Box& b : iso.isolate_upper(upper)) {
            IsolatedRoot rpos;
            rpos.box = b;
            out.push_back(rpos);
            IsolatedRoot rneg;
            rneg.box = Box{b[0], -b[1]};
            out.push_back(rneg);
        }
    }
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) {
        return compare_midpoints(a, b) < 0;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Generic Krawczyk test (2 or 3 equations)
// ---------------------------------------------------------------------------

namespace {

using RMat = std::array<std::array<Rational, 3>, 3>;

bool invert_exact(const RMat& m, size_t n, RMat& inv) {
    if (n == 2) {
        Rational det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if (det.is_zero()) return false;
        inv[0][0] = m[1][1] / det;
        inv[0][1] = -m[0][1] / det;
        inv[1][0] = -m[1][0] / det;
        inv[1][1] = m[0][0] / det;
        return true;
    }
    Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (det.is_zero()) return false;
    inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return true;
}

struct KrawczykNResult {
    KrawczykResult verdict;
    Box image;
    bool image_valid = false;
};

KrawczykNResult krawczyk_n(const std::vector<MPoly>& system,
                           const std::vector<std::vector<MPoly>>& jacobian, const Box& X) {
    size_t n = X.dim();
    for (const auto& eq : system) {
        RInterval img = eq.interval_eval(X);
        if (!img.contains_zero()) return {KrawczykResult::NoRoot, X, false};
    }
    std::vector<Rational> c = X.midpoint();
    RMat jc{};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) jc[i][j] = jacobian[i][j].eval(c);
    RMat y{};
    if (!invert_exact(jc, n, y)) return {KrawczykResult::Unknown, X, false};

    std::vector<std::vector<RInterval>> jx(n, std::vector<RInterval>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) jx[i][j] = jacobian[i][j].interval_eval(X);

    std::vector<Rational> f(n);
    for (size_t i = 0; i < n; ++i) f[i] = system[i].eval(c);

    std::vector<RInterval> k(n);
    for (size_t i = 0; i < n; ++i) {
        Rational newton_term(0);
        for (size_t j = 0; j < n; ++j) newton_term += y[i][j] * f[j];
        RInterval acc{c[i] - newton_term};
        for (size_t j = 0; j < n; ++j) {
            RInterval m{i == j ? Rational(1) : Rational(0)};
            for (size_t l = 0; l < n; ++l) m = m - jx[l][j] * y[i][l];
            acc = acc + m * (X[j] - c[j]);
        }
        k[i] = acc;
    }
    Box K = n == 2 ? Box{k[0], k[1]} : Box{k[0], k[1], k[2]};
    if (X.strictly_contains(K)) return {KrawczykResult::UniqueRoot, K, true};
    if (!X.intersect(K)) return {KrawczykResult::NoRoot, K, true};
    return {KrawczykResult::Unknown, K, true};
}

std::vector<std::vector<MPoly>> jacobian_of(const std::vector<MPoly>& system, size_t n) {
    std::vector<std::vector<MPoly>> jac(system.size());
    for (size_t i = 0; i < system.size(); ++i) {
        jac[i].resize(n);
        for (size_t j = 0; j < n; ++j) jac[i][j] = system[i].derivative(static_cast<unsigned>(j));
    }
    return jac;
}

}  // namespace

KrawczykResult krawczyk_test(const std::vector<MPoly>& system, const Box& box) {
    size_t n = box.dim();
    if (n < 2 || n > 3 || system.size() != n)
        throw std::invalid_argument("krawczyk_test: system must be square with 2 or 3 equations");
    auto jac = jacobian_of(system, n);
    return krawczyk_n(system, jac, box).verdict;
}

// ---------------------------------------------------------------------------
// RootRefiner
// ---------------------------------------------------------------------------

RootRefiner::RootRefiner(UniPoly squarefree_factor, IsolatedRoot root)
    : factor_(primitive_part(squarefree_factor)),
      dfactor_(factor_.derivative()),
      root_(std::move(root)) {
    if (root_.box.dim() == 1) {
        init_bracket();
    } else {
        split_ = real_imag_parts(factor_);
    }
}

void RootRefiner::init_bracket() {
    RInterval iv = root_.box[0];
    if (iv.is_point()) {
        exact_ = true;
        return;
    }
    // Descartes bound on the number of roots of the factor in (lo, hi);
    // roots sitting exactly on the endpoints do not count
    auto vars_in = [&](const Rational& lo, const Rational& hi) {
        UniPoly shifted(taylor_coeffs_at(factor_, lo));
        return descartes_bound_01(to_zpoly(shifted.scale_arg(hi - lo)));
    };
    Rational a = iv.lo(), b = iv.hi();
    int sa = factor_.eval<Rational>(a).sign();
    int sb = factor_.eval<Rational>(b).sign();
    // an endpoint may be a different root of the factor (adjacent isolating
    // intervals can share exact subdivision roots); shrink it past a
    // certified root-free segment so the enclosed root stays bracketed
    for (int j = 2; sa == 0 && j < 256; ++j) {
        Rational cand = a + (b - a) / Rational::pow2(j);
        int s = factor_.eval<Rational>(cand).sign();
        if (s == 0) {
            // the only root strictly inside (a, b) has been hit exactly
            root_.box = Box{RInterval{cand, cand}};
            exact_ = true;
            return;
        }
        if (vars_in(a, cand) == 0) {
            a = cand;
            sa = s;
        }
    }
    for (int j = 2; sb == 0 && j < 256; ++j) {
        Rational cand = b - (b - a) / Rational::pow2(j);
        int s = factor_.eval<Rational>(cand).sign();
        if (s == 0) {
            root_.box = Box{RInterval{cand, cand}};
            exact_ = true;
            return;
        }
        if (vars_in(cand, b) == 0) {
            b = cand;
            sb = s;
        }
    }
    if (sa == 0 || sb == 0 || sa == sb)
        throw std::invalid_argument("RootRefiner: box is not a certified sign bracket");
    root_.box = Box{RInterval{a, b}};
    sign_lo_ = sa;
}

void RootRefiner::refine_to(const Rational& half_width_bound) {
    if (half_width_bound.sign() <= 0)
        throw std::invalid_argument("RootRefiner: target half-width must be positive");
    if (root_.box.dim() == 1)
        refine_real(half_width_bound);
    else
        refine_complex(half_width_bound);
}

void RootRefiner::refine_real(const Rational& bound) {
    if (exact_) return;
    long bits = bits_for(bound) + 16;
    Rational two(2);
    while (root_.box[0].width() / two > bound) {
        RInterval X = root_.box[0];
        bool advanced = false;
        // interval Newton step when the derivative is sign-definite
        RInterval d = interval_eval(dfactor_, X);
        if (!d.contains_zero()) {
            Rational m = X.midpoint();
            Rational fm = factor_.eval<Rational>(m);
            if (fm.is_zero()) {
                root_.box = Box{RInterval{m, m}};
                exact_ = true;
                return;
            }
            RInterval newton = RInterval(m) - RInterval(fm) / d;
            auto meet = newton.intersect(X);
            if (meet) {
                RInterval cand = *meet->outward_dyadic(bits).intersect(X);
                if (cand.width() * Rational(4) <= X.width() * Rational(3)) {
                    Rational a = cand.lo(), b = cand.hi();
                    int sa = a == X.lo() ? sign_lo_ : factor_.eval<Rational>(a).sign();
                    if (sa == 0) {
                        root_.box = Box{RInterval{a, a}};
                        exact_ = true;
                        return;
                    }
                    int sb = b == X.hi() ? -sign_lo_ : factor_.eval<Rational>(b).sign();
                    if (sb == 0) {
                        root_.box = Box{RInterval{b, b}};
                        exact_ = true;
                        return;
                    }
                    if (sa != sb) {
                        root_.box = Box{RInterval{a, b}};
                        sign_lo_ = sa;
                        advanced = true;
                    }
                }
            }
        }
        if (!advanced) {
            Rational m = X.midpoint();
            int sm = factor_.eval<Rational>(m).sign();
            if (sm == 0) {
                root_.box = Box{RInterval{m, m}};
                exact_ = true;
                return;
            }
            if (sm == sign_lo_)
                root_.box = Box{RInterval{m, X.hi()}};
            else
                root_.box = Box{RInterval{X.lo(), m}};
        }
    }
}

void RootRefiner::refine_complex(const Rational& bound) {
    long bits = bits_for(bound) + 16;
    auto half_width = [](const Box& b) { return max(b[0].width(), b[1].width()) / Rational(2); };
    long outer = 0;
    while (half_width(root_.box) > bound) {
        if (++outer > 100000) throw std::runtime_error("RootRefiner: refinement stalled");
        Box X = root_.box;
        auto kr = krawczyk2(factor_, X);
        if (kr.verdict == KrawczykResult::NoRoot)
            throw std::runtime_error("RootRefiner: certified box lost its root");
        if (kr.image_valid) {
            auto meet = X.intersect(kr.image);
            if (meet) {
                Box cand{(*meet)[0].outward_dyadic(bits), (*meet)[1].outward_dyadic(bits)};
                cand = *X.intersect(cand);
                if (half_width(cand) * Rational(8) <= half_width(X) * Rational(7)) {
                    root_.box = cand;
                    continue;
                }
            }
        }
        // fallback: split on a root-free line and mini-subdivide until the
        // unique root is certified in a strictly smaller box
        size_t axis = X[0].width() >= X[1].width() ? 0 : 1;
        Rational split = free_split_value(split_, axis == 0, X[axis], X[axis == 0 ? 1 : 0]);
        Box left = X, right = X;
        left[axis] = RInterval{X[axis].lo(), split};
        right[axis] = RInterval{split, X[axis].hi()};
        std::deque<Box> work{left, right};
        std::vector<Box> hits;
        long steps = 0;
        while (!work.empty()) {
            if (++steps > 200000) throw std::runtime_error("RootRefiner: subdivision budget exceeded");
            Box cur = work.front();
            work.pop_front();
            auto k2 = krawczyk2(factor_, cur);
            if (k2.verdict == KrawczykResult::NoRoot) continue;
            if (k2.verdict == KrawczykResult::UniqueRoot) {
                hits.push_back(*cur.intersect(k2.image));
                continue;
            }
            size_t ax = cur[0].width() >= cur[1].width() ? 0 : 1;
            Rational sv = free_split_value(split_, ax == 0, cur[ax], cur[ax == 0 ? 1 : 0]);
            Box l2 = cur, r2 = cur;
            l2[ax] = RInterval{cur[ax].lo(), sv};
            r2[ax] = RInterval{sv, cur[ax].hi()};
            work.push_back(l2);
            work.push_back(r2);
        }
        if (hits.size() != 1)
            throw std::runtime_error("RootRefiner: lost uniqueness during refinement");
        root_.box = hits.front();
    }
}

IsolatedRoot refine_root(const UniPoly& p, const IsolatedRoot& root, const Rational& target_radius) {
    if (target_radius.sign() <= 0)
        throw std::invalid_argument("refine_root: target radius must be positive");
    if (!root.certified_unique)
        throw std::invalid_argument("refine_root: root must be certified unique");
    RootRefiner ref(p, root);
    ref.refine_to(target_radius);
    IsolatedRoot out = ref.root();
    out.multiplicity = root.multiplicity;
    return out;
}

// ---------------------------------------------------------------------------
// Semialgebraic solving
// ---------------------------------------------------------------------------

namespace {

struct ComponentSolution {
    std::map<unsigned, RInterval> values;
    std::shared_ptr<RootRefiner> refiner;  // null for exact points
    unsigned var_re = 0, var_im = 0;
    bool from_complex_block = false;
    bool conjugate = false;  // mirror the refiner's imaginary part

    void pull_from_refiner() {
        if (!refiner) return;
        const Box& b = refiner->root().box;
        values[var_re] = b[0];
        if (from_complex_block && b.dim() > 1) values[var_im] = conjugate ? -b[1] : b[1];
    }

    void refine_step() {
        if (!refiner) return;
        Rational w = refiner->root().box.width();
        if (w.is_zero()) return;
        refiner->refine_to(w / Rational(4));
        pull_from_refiner();
    }
};

struct Component {
    std::vector<unsigned> vars;
    std::vector<ComponentSolution> solutions;
    std::vector<Box> unknown_regions;  // component-local coordinates
};

struct VarUnion {
    std::vector<unsigned> parent;
    explicit VarUnion(unsigned n) : parent(n) {
        for (unsigned i = 0; i < n; ++i) parent[i] = i;
    }
    unsigned find(unsigned x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(unsigned a, unsigned b) { parent[find(a)] = find(b); }
};

}  // namespace

SolveResult solve_semialgebraic(const SemialgebraicSystem& sys, const SolveOptions& opts) {
    const unsigned dim = sys.dimension;
    if (dim < 1 || dim > 3) throw std::invalid_argument("solve_semialgebraic: dimension must be 1-3");

    VarUnion uf(dim);
    for (const auto& blk : sys.complex_blocks) uf.unite(blk.var_re, blk.var_im);

    struct EqItem {
        MPoly eq;
        std::vector<unsigned> vars;
    };
    std::vector<EqItem> eq_items;
    for (const auto& e : sys.equations) {
        EqItem item{e, e.support()};
        if (item.vars.empty()) {
            if (!e.is_zero()) return {};  // unsatisfiable constant equation
            continue;
        }
        eq_items.push_back(std::move(item));
    }
    std::stable_sort(eq_items.begin(), eq_items.end(),
                     [](const EqItem& a, const EqItem& b) { return a.vars.size() < b.vars.size(); });

    // keep each variable component square; overflow equations become filters
    std::map<unsigned, std::vector<MPoly>> comp_eqs;
    std::map<unsigned, unsigned> comp_eq_count;
    std::map<unsigned, const SemialgebraicSystem::ComplexPairBlock*> comp_complex;
    std::vector<MPoly> equality_filters;

    for (const auto& blk : sys.complex_blocks) {
        unsigned root = uf.find(blk.var_re);
        comp_complex[root] = &blk;
        comp_eq_count[root] += 2;
    }
    auto comp_size = [&](unsigned root) {
        unsigned n = 0;
        for (unsigned v = 0; v < dim; ++v)
            if (uf.find(v) == root) ++n;
        return n;
    };
    for (auto& item : eq_items) {
        std::set<unsigned> roots;
        for (unsigned v : item.vars) roots.insert(uf.find(v));
        unsigned total_eqs = 0, total_vars = 0;
        for (unsigned r : roots) {
            auto it = comp_eq_count.find(r);
            total_eqs += it == comp_eq_count.end() ? 0 : it->second;
            total_vars += comp_size(r);
        }
        if (total_eqs + 1 > total_vars) {
            unsigned r0 = uf.find(item.vars[0]);
            if (item.vars.size() == 1 && comp_eq_count[r0] == 1 && !comp_complex.count(r0)) {
                // overdetermined univariate pair: the conjunction is a gcd
                UniPoly merged = poly_gcd(comp_eqs[r0][0].to_univariate(item.vars[0]),
                                          item.eq.to_univariate(item.vars[0]));
                if (merged.degree() < 1) return {};  // coprime: no common root
                comp_eqs[r0][0] = MPoly::from_univariate(merged, item.vars[0], dim);
            } else {
                equality_filters.push_back(item.eq);
            }
            continue;
        }
        unsigned target = uf.find(item.vars[0]);
        for (unsigned v : item.vars) uf.unite(v, target);
        unsigned root = uf.find(target);
        std::vector<MPoly> merged_eqs;
        unsigned merged_count = 0;
        const SemialgebraicSystem::ComplexPairBlock* merged_blk = nullptr;
        for (unsigned r : roots) {
            if (auto it = comp_eqs.find(r); it != comp_eqs.end()) {
                merged_eqs.insert(merged_eqs.end(), it->second.begin(), it->second.end());
                comp_eqs.erase(it);
            }
            if (auto it = comp_eq_count.find(r); it != comp_eq_count.end()) {
                merged_count += it->second;
                comp_eq_count.erase(it);
            }
            if (auto it = comp_complex.find(r); it != comp_complex.end()) {
                merged_blk = it->second;
                comp_complex.erase(it);
            }
        }
        merged_eqs.push_back(item.eq);
        comp_eqs[root] = std::move(merged_eqs);
        comp_eq_count[root] = merged_count + 1;
        if (merged_blk) comp_complex[root] = merged_blk;
    }

    std::map<unsigned, Component> components;
    for (unsigned v = 0; v < dim; ++v) components[uf.find(v)].vars.push_back(v);
    for (auto& [root, comp] : components) {
        unsigned eqs = comp_eq_count.count(root) ? comp_eq_count[root] : 0;
        if (eqs != comp.vars.size())
            throw std::invalid_argument("solve_semialgebraic: equation subsystem is not square");
    }

    for (auto& [root, comp] : components) {
        if (comp_complex.count(root)) {
            const auto* blk = comp_complex[root];
            for (const auto& part : squarefree_factorization(blk->q).factors) {
                for (const auto& r : isolate_complex_roots(part.factor)) {
                    ComponentSolution sol;
                    sol.from_complex_block = true;
                    sol.var_re = blk->var_re;
                    sol.var_im = blk->var_im;
                    sol.values[blk->var_re] = r.box[0];
                    sol.values[blk->var_im] =
                        r.box.dim() > 1 ? r.box[1] : RInterval{Rational(0)};
                    if (r.box.dim() > 1) {
                        bool lower = r.box[1].hi().sign() < 0;
                        IsolatedRoot upper = r;
                        if (lower) upper.box = Box{r.box[0], -r.box[1]};
                        sol.refiner = std::make_shared<RootRefiner>(part.factor, upper);
                        sol.conjugate = lower;
                    } else if (!r.box[0].is_point()) {
                        sol.refiner = std::make_shared<RootRefiner>(part.factor, r);
                    }
                    comp.solutions.push_back(std::move(sol));
                }
            }
            continue;
        }
        const auto& eqs = comp_eqs[root];
        if (comp.vars.size() == 1) {
            unsigned v = comp.vars[0];
            UniPoly p = eqs[0].to_univariate(v);
            if (p.degree() < 1) {
                if (!p.is_zero()) return {};
                throw std::invalid_argument("solve_semialgebraic: identically zero equation");
            }
            std::optional<RInterval> domain;
            if (sys.search_region) domain = (*sys.search_region)[v];
            for (const auto& part : squarefree_factorization(p).factors) {
                for (const auto& r : isolate_real_roots(part.factor, domain)) {
                    ComponentSolution sol;
                    sol.var_re = v;
                    sol.values[v] = r.box[0];
                    if (!r.box[0].is_point())
                        sol.refiner = std::make_shared<RootRefiner>(part.factor, r);
                    comp.solutions.push_back(std::move(sol));
                }
            }
            continue;
        }
        // generic block: branch and prune with the Krawczyk inclusion test
        if (!sys.search_region)
            throw std::invalid_argument("solve_semialgebraic: generic blocks need a search region");
        size_t n = comp.vars.size();
        std::vector<MPoly> local_eqs;
        for (const auto& e : eqs) {
            MPoly le(static_cast<unsigned>(n));
            for (const auto& [exp, c] : e.terms()) {
                MPoly::Exps lexp{0, 0, 0};
                for (size_t j = 0; j < n; ++j) lexp[j] = exp[comp.vars[j]];
                le.add_term(lexp, c);
            }
            local_eqs.push_back(std::move(le));
        }
        auto local_jac = jacobian_of(local_eqs, n);
        std::vector<RInterval> dims;
        for (unsigned v : comp.vars) dims.push_back((*sys.search_region)[v]);
        Box region = n == 2 ? Box{dims[0], dims[1]} : Box{dims[0], dims[1], dims[2]};
        std::deque<std::pair<Box, unsigned>> work{{region, 0}};
        while (!work.empty()) {
            auto [X, depth] = work.front();
            work.pop_front();
            auto kr = krawczyk_n(local_eqs, local_jac, X);
            if (kr.verdict == KrawczykResult::NoRoot) continue;
            if (kr.verdict == KrawczykResult::UniqueRoot) {
                Box tight = *X.intersect(kr.image);
                ComponentSolution sol;
                for (size_t j = 0; j < n; ++j) sol.values[comp.vars[j]] = tight[j];
                comp.solutions.push_back(std::move(sol));
                continue;
            }
            if (depth >= opts.max_refine_rounds) {
                comp.unknown_regions.push_back(X);
                continue;
            }
            size_t axis = 0;
            for (size_t j = 1; j < n; ++j)
                if (X[j].width() > X[axis].width()) axis = j;
            Rational m = X[axis].midpoint();
            Box left = X, right = X;
            left[axis] = RInterval{X[axis].lo(), m};
            right[axis] = RInterval{m, X[axis].hi()};
            work.emplace_back(left, depth + 1);
            work.emplace_back(right, depth + 1);
        }
    }

    struct Candidate {
        std::vector<ComponentSolution*> parts;
    };
    std::vector<Candidate> pending{Candidate{}};
    std::vector<Component*> comp_order;
    for (auto& [root, comp] : components) comp_order.push_back(&comp);
    for (Component* comp : comp_order) {
        std::vector<Candidate> next;
        for (const auto& cand : pending) {
            for (auto& sol : comp->solutions) {
                Candidate c = cand;
                c.parts.push_back(&sol);
                next.push_back(std::move(c));
            }
        }
        pending = std::move(next);
    }

    auto assemble = [&](const Candidate& cand) {
        std::vector<RInterval> dims(dim, RInterval{Rational(0)});
        for (const auto* part : cand.parts)
            for (const auto& [v, iv] : part->values) dims[v] = iv;
        return Box(std::move(dims));
    };

    SolveResult result;
    for (unsigned round = 0; round <= opts.max_refine_rounds && !pending.empty(); ++round) {
        std::vector<Candidate> still_pending;
        for (auto& cand : pending) {
            Box box = assemble(cand);
            bool dropped = false, undecided = false;
            for (const auto& [g, s] : sys.strict_inequalities) {
                RInterval img = g.interval_eval(box);
                if (img.is_point()) {
                    if (img.lo().sign() != s) dropped = true;
                } else if (s > 0 && img.lo().sign() > 0) {
                } else if (s < 0 && img.hi().sign() < 0) {
                } else if (s > 0 && img.hi().sign() <= 0) {
                    dropped = true;
                } else if (s < 0 && img.lo().sign() >= 0) {
                    dropped = true;
                } else {
                    undecided = true;
                }
                if (dropped) break;
            }
            if (!dropped) {
                for (const auto& e : equality_filters) {
                    RInterval img = e.interval_eval(box);
                    if (img.is_point()) {
                        if (!img.lo().is_zero()) dropped = true;
                    } else if (!img.contains_zero()) {
                        dropped = true;
                    } else {
                        undecided = true;
                    }
                    if (dropped) break;
                }
            }
            if (dropped) continue;
            if (!undecided) {
                result.solutions.push_back(box);
                continue;
            }
            if (round == opts.max_refine_rounds) {
                result.undecided.push_back(box);
                continue;
            }
            std::set<RootRefiner*> seen;
            for (auto* part : cand.parts) {
                if (part->refiner && seen.insert(part->refiner.get()).second) part->refine_step();
                part->pull_from_refiner();
            }
            still_pending.push_back(std::move(cand));
        }
        pending = std::move(still_pending);
    }

    for (Component* comp : comp_order) {
        for (const auto& unknown : comp->unknown_regions) {
            std::vector<RInterval> dims(dim, RInterval{Rational(0)});
            for (size_t j = 0; j < comp->vars.size(); ++j) dims[comp->vars[j]] = unknown[j];
            result.undecided.push_back(Box(std::move(dims)));
        }
    }

    auto box_less = [](const Box& a, const Box& b) {
        for (size_t i = 0; i < a.dim(); ++i) {
            Rational ma = a[i].midpoint(), mb = b[i].midpoint();
            if (ma < mb) return true;
            if (mb < ma) return false;
        }
        return false;
    };
    std::sort(result.solutions.begin(), result.solutions.end(), box_less);
    std::sort(result.undecided.begin(), result.undecided.end(), box_less);
    return result;
}

}  // namespace certival
