#include "certival/nonnegativity.hpp"

#include <algorithm>
#include <memory>

namespace certival {

namespace {

Rational mod_upper_tol(const ComplexRational& z, const Rational& tol) {
    if (z.is_zero()) return Rational(0);
    if (z.is_real()) return abs(z.re());
    return modulus_bounds(z, tol).upper;
}

Rational mod_lower_tol(const ComplexRational& z, const Rational& tol) {
    if (z.is_zero()) return Rational(0);
    if (z.is_real()) return abs(z.re());
    return modulus_bounds(z, tol).lower;
}

// smallest integer n with t^n >= K, for t > 1 and K > 0
long min_power_at_least(const Rational& t, const Rational& K) {
    if (t <= Rational(1)) throw std::domain_error("min_power_at_least: base must exceed 1");
    if (K.sign() <= 0) throw std::domain_error("min_power_at_least: K must be positive");
    if (K == Rational(1)) return 0;
    auto search_up = [&](const Rational& target) {
        // smallest j >= 1 with t^j >= target (target > 1)
        long hi = 1;
        Rational thi = t;
        while (thi < target) {
            hi *= 2;
            thi = thi * thi;
            if (hi > (1L << 40)) throw std::runtime_error("min_power_at_least: exponent overflow");
        }
        long lo = hi / 2;  // t^lo < target (or lo == 0)
        while (lo + 1 < hi) {
            long mid = lo + (hi - lo) / 2;
            if (t.pow_int(mid) >= target)
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    };
    if (K > Rational(1)) return search_up(K);
    // K < 1: answer is -j where j is the largest exponent with t^j <= 1/K
    Rational inv = Rational(1) / K;
    long j = search_up(inv);            // smallest j with t^j >= 1/K
    if (t.pow_int(j) == inv) return -j; // exact hit
    return -(j - 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// classify_roots
// ---------------------------------------------------------------------------

RootClassification classify_roots(const UniPoly& q, const ClassifyOptions& opts) {
    if (q.degree() < 1) throw std::invalid_argument("classify_roots: degree must be >= 1");
    if (q.eval<Rational>(Rational(0)).is_zero())
        throw std::invalid_argument("classify_roots: q(0) must be nonzero");
    if (poly_gcd(q, q.derivative()).degree() > 0)
        throw std::invalid_argument("classify_roots: q must be squarefree");

    SolveOptions sopts{opts.refine_rounds};
    RootClassification out;

    // P = { p in R : q(p) = 0, p > 0 }
    SemialgebraicSystem sys_p;
    sys_p.dimension = 1;
    sys_p.equations.push_back(MPoly::from_univariate(q, 0, 1));
    sys_p.strict_inequalities.emplace_back(MPoly::variable(0, 1), +1);
    SolveResult P = solve_semialgebraic(sys_p, sopts);
    if (P.solutions.empty()) {
        out.has_positive_root = false;
        out.smallest_in_modulus = SmallestModulus::No;
        out.evidence = "P";
        return out;
    }
    out.has_positive_root = true;
    IsolatedRoot alpha1;
    alpha1.box = Box{P.solutions.front()[0]};
    alpha1.is_real = true;
    out.alpha1 = alpha1;

    // N = { n : q(-n) = 0, n > 0 } and the balanced set B
    UniPoly q_neg = q.negate_arg();
    SemialgebraicSystem sys_n;
    sys_n.dimension = 1;
    sys_n.equations.push_back(MPoly::from_univariate(q_neg, 0, 1));
    sys_n.strict_inequalities.emplace_back(MPoly::variable(0, 1), +1);
    SolveResult N = solve_semialgebraic(sys_n, sopts);
    if (!N.solutions.empty()) {
        UniPoly bal = poly_gcd(q, q_neg);
        if (bal.degree() > 0) {
            // a root of gcd(q(x), q(-x)) inside alpha1's isolating interval
            // is necessarily alpha1 itself
            if (!isolate_real_roots(bal, alpha1.box[0]).empty()) {
                out.smallest_in_modulus = SmallestModulus::No;
                out.evidence = "B";
                return out;
            }
        }
        // alpha1 not in B, so alpha1 != min N and refinement decides the order
        RootRefiner ref_a(q, alpha1);
        RootRefiner ref_n(q_neg, IsolatedRoot{Box{N.solutions.front()[0]}, 1, true, true});
        while (true) {
            const RInterval& ia = ref_a.root().box[0];
            const RInterval& in = ref_n.root().box[0];
            if (in.hi() < ia.lo()) {
                out.smallest_in_modulus = SmallestModulus::No;
                out.evidence = "N";
                return out;
            }
            if (ia.hi() < in.lo()) break;  // alpha1 < min N
            Rational w = max(ia.width(), in.width());
            if (w.is_zero()) break;
            ref_a.refine_to(w / Rational(4));
            ref_n.refine_to(w / Rational(4));
        }
        out.alpha1->box = ref_a.root().box;
    }

    // complex roots: L and E on (r, a, b)
    size_t real_count = isolate_real_roots(q).size();
    if (static_cast<size_t>(q.degree()) > real_count) {
        MPoly sphere = MPoly::variable(1, 3) * MPoly::variable(1, 3) +
                       MPoly::variable(2, 3) * MPoly::variable(2, 3) -
                       MPoly::variable(0, 3) * MPoly::variable(0, 3);
        SemialgebraicSystem sys_l;
        sys_l.dimension = 3;
        sys_l.equations.push_back(MPoly::from_univariate(q, 0, 3));
        sys_l.complex_blocks.push_back({q, 1, 2});
        sys_l.strict_inequalities.emplace_back(MPoly::variable(0, 3), +1);
        sys_l.strict_inequalities.emplace_back(MPoly::variable(2, 3), +1);
        sys_l.strict_inequalities.emplace_back(sphere, -1);
        SolveResult L = solve_semialgebraic(sys_l, sopts);

        SemialgebraicSystem sys_e = sys_l;
        sys_e.strict_inequalities.pop_back();
        sys_e.equations.push_back(sphere);  // overflow equation becomes an equality filter
        SolveResult E = solve_semialgebraic(sys_e, sopts);

        const RInterval& a1 = out.alpha1->box[0];
        auto matches_alpha1 = [&](const Box& sol) { return !sol[0].disjoint(a1); };
        for (const Box& sol : L.solutions) {
            if (matches_alpha1(sol)) {
                out.smallest_in_modulus = SmallestModulus::No;
                out.evidence = "L";
                return out;
            }
        }
        for (const Box& sol : E.solutions) {
            if (matches_alpha1(sol)) {
                out.smallest_in_modulus = SmallestModulus::No;
                out.evidence = "E";
                return out;
            }
        }
        for (const Box& sol : L.undecided) {
            if (matches_alpha1(sol)) {
                out.smallest_in_modulus = SmallestModulus::Unknown;
                out.evidence = "L";
                return out;
            }
        }
        for (const Box& sol : E.undecided) {
            if (matches_alpha1(sol)) {
                out.smallest_in_modulus = SmallestModulus::Unknown;
                out.evidence = "E";
                return out;
            }
        }
    }
    out.smallest_in_modulus = SmallestModulus::Yes;
    out.evidence = "P,N,B,L,E";
    return out;
}

// ---------------------------------------------------------------------------
// taylor_coeffs_recurrence
// ---------------------------------------------------------------------------

std::vector<Rational> taylor_coeffs_recurrence(const UniPoly& f, const UniPoly& q, long N) {
    if (q.is_zero() || q.eval<Rational>(Rational(0)).is_zero())
        throw std::domain_error("taylor_coeffs_recurrence: q(0) must be nonzero");
    if (N < 0) return {};
    Rational q0 = q.coeff(0);
    std::vector<Rational> R;
    R.reserve(static_cast<size_t>(N) + 1);
    for (long n = 0; n <= N; ++n) {
        Rational acc = f.coeff(static_cast<size_t>(n));
        long top = std::min<long>(n, q.degree());
        for (long j = 1; j <= top; ++j)
            acc -= q.coeff(static_cast<size_t>(j)) * R[static_cast<size_t>(n - j)];
        R.push_back(acc / q0);
    }
    return R;
}

// ---------------------------------------------------------------------------
// coefficient_formula_check
// ---------------------------------------------------------------------------

RInterval coefficient_formula_check(const UniPoly& p, const UniPoly& q, long n, const Rational& tol) {
    if (tol.sign() <= 0) throw std::invalid_argument("coefficient_formula_check: tol must be > 0");
    if (n < 0) throw std::invalid_argument("coefficient_formula_check: n must be >= 0");
    if (q.eval<Rational>(Rational(0)).is_zero())
        throw std::invalid_argument("coefficient_formula_check: q(0) must be nonzero");
    if (poly_gcd(q, q.derivative()).degree() > 0)
        throw std::invalid_argument("coefficient_formula_check: q must be squarefree");
    if (!p.is_zero() && p.degree() >= q.degree())
        throw std::invalid_argument("coefficient_formula_check: deg p must be < deg q");

    long d = q.degree();
    Rational eps = tol / (Rational(2) * Rational(d + 1));
    // r_n = sum_i -p(a_i) / (a_i^(n+1) q'(a_i))
    UniPoly den = UniPoly::monomial(Rational(1), static_cast<unsigned>(n + 1)) * q.derivative();
    EvalFunction fn(RationalFn(-p, den));
    std::vector<EvalFunction> fs{fn};
    std::vector<HolderProvider> providers{default_provider(fn)};

    ComplexRational sum;
    Rational err(0);
    for (auto& root : isolate_complex_roots(q)) {
        RootRefiner ref(q, root);
        RootEvaluator ev(ref, eps);
        auto results = ev.run(fs, providers);
        sum += results[0].approx.value;
        err += results[0].approx.error;
    }
    return {sum.re() - err, sum.re() + err};
}

// ---------------------------------------------------------------------------
// threshold_N
// ---------------------------------------------------------------------------

Rational threshold_N(const std::vector<Rational>& c_bounds, const Rational& m, const Rational& M) {
    if (c_bounds.empty() || c_bounds[0].sign() <= 0)
        throw std::domain_error("threshold_N: need a positive lower bound on |C_1|");
    if (!(Rational(0) < m && m < M)) throw std::domain_error("threshold_N: need 0 < m < M");
    Rational K(0);
    for (size_t i = 1; i < c_bounds.size(); ++i) {
        if (c_bounds[i].sign() < 0) throw std::domain_error("threshold_N: negative modulus bound");
        K += c_bounds[i];
    }
    K = K / c_bounds[0];
    if (K.is_zero()) return Rational(-1);  // no competing roots: holds from n = 0
    return Rational(min_power_at_least(M / m, K));
}

// ---------------------------------------------------------------------------
// certify_nonnegativity
// ---------------------------------------------------------------------------

namespace {

SignVerdict not_applicable(const std::string& reason) {
    SignVerdict v;
    v.kind = SignVerdict::Kind::NotApplicable;
    v.reason = reason;
    return v;
}

struct RootHandle {
    std::unique_ptr<RootRefiner> refiner;
    UniPoly factor;
};

}  // namespace

SignVerdict certify_nonnegativity(const UniPoly& f, const UniPoly& q, const NonnegOptions& opts,
                                  std::vector<CertState>* trace) {
    if (q.is_zero()) return not_applicable("q is identically zero");
    if (f.is_zero()) {
        SignVerdict v;
        v.kind = SignVerdict::Kind::AllNonnegative;
        v.n0_star = 0;
        return v;
    }
    if (q.eval<Rational>(Rational(0)).is_zero()) return not_applicable("q(0) = 0: pole at the origin");
    if (q.degree() < 1) return not_applicable("q is constant: no strictly smallest positive root");
    if (poly_gcd(q, q.derivative()).degree() > 0)
        return not_applicable("q has repeated roots");
    if (poly_gcd(f, q).degree() > 0) return not_applicable("f and q share a common factor");

    RootClassification cls = classify_roots(q, opts.classify);
    if (!cls.has_positive_root) return not_applicable("q has no positive real root");
    if (cls.smallest_in_modulus == SmallestModulus::Unknown)
        return not_applicable("modulus comparison undecided (set " + cls.evidence + ")");
    if (cls.smallest_in_modulus == SmallestModulus::No)
        return not_applicable("positive root is not strictly smallest in modulus (set " +
                              cls.evidence + ")");

    auto [g, p] = poly_divmod(f, q);
    const long d = q.degree();
    UniPoly h = UniPoly::monomial(Rational(1), 1) * q.derivative();
    UniPoly u = -(p.derivative() * h) + p * h.derivative();
    Rational cd2 = q.leading() * q.leading();

    // persistent refiners: q's roots with alpha_1 first, then h's roots
    std::vector<RootHandle> alphas;
    {
        std::vector<RootHandle> rest;
        const RInterval& a1 = cls.alpha1->box[0];
        for (auto& root : isolate_complex_roots(q)) {
            RootHandle hnd;
            hnd.factor = q;
            bool is_alpha1 = root.is_real && !root.box[0].disjoint(a1);
            hnd.refiner = std::make_unique<RootRefiner>(q, root);
            if (is_alpha1)
                alphas.insert(alphas.begin(), std::move(hnd));
            else
                rest.push_back(std::move(hnd));
        }
        for (auto& r : rest) alphas.push_back(std::move(r));
        if (alphas.size() != static_cast<size_t>(d))
            throw std::runtime_error("certify_nonnegativity: root count mismatch");
    }
    std::vector<RootHandle> betas;
    for (const auto& part : squarefree_factorization(h).factors) {
        for (auto& root : isolate_complex_roots(part.factor)) {
            RootHandle hnd;
            hnd.factor = part.factor;
            hnd.refiner = std::make_unique<RootRefiner>(part.factor, root);
            betas.push_back(std::move(hnd));
        }
    }

    EvalFunction c_fn{RationalFn(-p, h)};
    std::vector<EvalFunction> c_fs{c_fn};
    std::vector<HolderProvider> c_providers{default_provider(c_fn)};

    auto run_level = [&](unsigned k, CertState& st) -> bool {
        st.k = k;
        st.eps_k = Rational::pow2(-static_cast<long>(k));
        const Rational& eps = st.eps_k;
        Rational tight = eps / Rational(16);
        for (auto& a : alphas) a.refiner->refine_to(tight);
        for (auto& b : betas) b.refiner->refine_to(tight);

        st.alpha_star.clear();
        st.beta_star.clear();
        for (auto& a : alphas) st.alpha_star.push_back(a.refiner->midpoint());
        for (auto& b : betas) st.beta_star.push_back(b.refiner->midpoint());
        st.s1 = st.alpha_star[0].is_real();  // |alpha* - alpha| <= eps/8 by refinement
        if (!st.s1) return false;

        // S2: {0, alpha_1*, ..., alpha_d*} pairwise separated by 2 eps
        Rational sep2 = Rational(4) * eps * eps;
        st.s2 = true;
        std::vector<ComplexRational> pts = st.alpha_star;
        pts.emplace_back(Rational(0));
        for (size_t i = 0; i < pts.size() && st.s2; ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                if ((pts[i] - pts[j]).norm() < sep2) {
                    st.s2 = false;
                    break;
                }
        if (!st.s2) return false;

        // S3: gamma* lower-bounds every |alpha_i* - beta_j*| and clears the
        // 2 eps + eps^(1/(4d)) threshold
        Rational modtol = eps / Rational(16);
        bool first = true;
        for (const auto& a : st.alpha_star)
            for (const auto& b : st.beta_star) {
                Rational low = mod_lower_tol(a - b, modtol);
                if (first || low < st.gamma_star) st.gamma_star = low;
                first = false;
            }
        long root_exp = static_cast<long>(st.k) / (4 * d);
        Rational root_4d_up = Rational::pow2(-root_exp);  // >= eps^(1/(4d))
        st.s3 = st.gamma_star > Rational(2) * eps + root_4d_up;
        if (!st.s3) return false;

        // S4: m* = alpha_1* + eps separated from M* = min_{i>=2} |alpha_i*| - eps
        st.m_star = st.alpha_star[0].re() + eps;
        if (d >= 2) {
            Rational mmin;
            bool got = false;
            for (size_t i = 1; i < st.alpha_star.size(); ++i) {
                Rational low = mod_lower_tol(st.alpha_star[i], modtol);
                if (!got || low < mmin) mmin = low;
                got = true;
            }
            st.M_star = mmin - eps;
            st.s4 = st.m_star.sign() > 0 && st.m_star < *st.M_star;
        } else {
            st.M_star.reset();
            st.s4 = st.m_star.sign() > 0;
        }
        if (!st.s4) return false;

        // S5: certified evaluations of C(x) = -p(x)/(x q'(x)) at the roots
        st.C_star.clear();
        st.C_err.clear();
        for (auto& a : alphas) {
            RootEvaluator ev(*a.refiner, eps / Rational(2));
            auto res = ev.run(c_fs, c_providers);
            st.C_star.push_back(res[0].approx.value);
            st.C_err.push_back(res[0].approx.error);
        }
        st.s5 = true;

        // S6: L_i* >= |c_d|^-2 sum_l |u^(l)(alpha_i*)| eps^l / l!
        st.L_star.clear();
        for (const auto& a : st.alpha_star) {
            auto taylor = taylor_coeffs_at(u, a);
            Rational sum(0);
            Rational epow(1);
            for (const auto& t : taylor) {
                sum += mod_upper_tol(t, modtol) * epow;
                epow *= eps;
            }
            st.L_star.push_back(sum / cd2);
        }
        st.s6 = true;

        // S7: sign of C_1 decided through the enclosure C_1* +- w_1
        Rational sqrt_up = Rational::pow2(-static_cast<long>(st.k / 2));
        Rational w1 = max(st.C_err[0], st.L_star[0] * sqrt_up);
        Rational c1 = st.C_star[0].re();
        st.s7a = c1 + w1 < Rational(0);
        st.s7b = c1 - w1 > Rational(0);
        if (!(st.s7a || st.s7b)) return false;

        // final quantities
        Rational b_star = min(abs(c1 - w1), abs(c1 + w1));
        Rational K_star(0);
        for (size_t i = 1; i < st.C_star.size(); ++i) {
            Rational wi = max(st.C_err[i], st.L_star[i] * sqrt_up);
            K_star += mod_upper_tol(st.C_star[i], modtol) + wi;
        }
        K_star = K_star / b_star;
        long A_star;
        if (K_star.is_zero()) {
            A_star = -1;
        } else {
            // conservative dyadic rounding keeps the powering cheap
            Rational m_r = st.m_star.round_up_dyadic(192);
            Rational M_r = st.M_star ? st.M_star->round_down_dyadic(192) : Rational(0);
            Rational K_r = K_star.round_up_dyadic(192) + Rational::pow2(-192);
            if (!st.M_star || !(m_r < M_r)) return false;
            A_star = min_power_at_least(M_r / m_r, K_r);
        }
        st.b_star = b_star;
        st.K_star = K_star;
        st.A_star = A_star;
        st.N0_star = std::max<long>(f.degree() - q.degree(), A_star);
        st.all_met = true;
        return true;
    };

    // geometric schedule until the conditions hold, then a few unit steps
    std::optional<CertState> final_state;
    CertState last;
    unsigned k = 1;
    while (k <= opts.k_cap) {
        CertState st;
        bool ok = run_level(k, st);
        if (trace) trace->push_back(st);
        last = st;
        if (ok) {
            final_state = st;
            break;
        }
        k = k < 8 ? k + 1 : k * 2;
    }
    if (!final_state) {
        std::string failing = !last.s1   ? "S1"
                              : !last.s2 ? "S2"
                              : !last.s3 ? "S3"
                              : !last.s4 ? "S4"
                              : !last.s5 ? "S5"
                              : !last.s6 ? "S6"
                                         : "S7";
        return not_applicable("termination conditions not met by k = " + std::to_string(last.k) +
                              " (last failing: " + failing + ")");
    }
    for (unsigned extra = 1; extra <= opts.extra_halvings; ++extra) {
        CertState st;
        if (run_level(final_state->k + 1, st)) {
            if (trace) trace->push_back(st);
            final_state = st;
        } else {
            break;
        }
    }

    const CertState& st = *final_state;
    long N0 = *st.N0_star;
    if (st.s7a) {
        long n0 = N0 + 1;
        auto R = taylor_coeffs_recurrence(f, q, n0);
        if (!(R[static_cast<size_t>(n0)] < Rational(0)))
            throw std::runtime_error("certify_nonnegativity: tail certificate contradicted");
        SignVerdict v;
        v.kind = SignVerdict::Kind::Counterexample;
        v.n0 = n0;
        v.value = R[static_cast<size_t>(n0)];
        v.n0_star = N0;
        return v;
    }
    long n_check = std::max<long>(N0, f.degree() - q.degree() + 1);
    if (n_check >= 0) {
        auto R = taylor_coeffs_recurrence(f, q, n_check);
        for (long n = 0; n <= n_check; ++n) {
            if (R[static_cast<size_t>(n)] < Rational(0)) {
                SignVerdict v;
                v.kind = SignVerdict::Kind::Counterexample;
                v.n0 = n;
                v.value = R[static_cast<size_t>(n)];
                v.n0_star = N0;
                return v;
            }
        }
    }
    SignVerdict v;
    v.kind = SignVerdict::Kind::AllNonnegative;
    v.n0_star = std::max<long>(n_check, -1);
    return v;
}

}  // namespace certival
