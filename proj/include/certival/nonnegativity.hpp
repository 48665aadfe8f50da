#ifndef CERTIVAL_NONNEGATIVITY_HPP
#define CERTIVAL_NONNEGATIVITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "certival/certified_eval.hpp"
#include "certival/isolation.hpp"

namespace certival {

enum class SmallestModulus { Yes, No, Unknown };

/// Outcome of the root classification: does q have a positive real root that
/// is strictly smallest in modulus among all complex roots?
struct RootClassification {
    bool has_positive_root = false;
    std::optional<IsolatedRoot> alpha1;
    SmallestModulus smallest_in_modulus = SmallestModulus::No;
    /// Which of the sets P, N, B, L, E decided the outcome.
    std::string evidence;
};

struct ClassifyOptions {
    unsigned refine_rounds = 96;
};

/// Classifies the roots of a squarefree q with q(0) != 0 per the positive /
/// negative / balanced / less-than / equal-modulus root sets.
RootClassification classify_roots(const UniPoly& q, const ClassifyOptions& opts = {});

/// Exact Taylor coefficients R_0..R_N of f/q at the origin via the linear
/// recurrence sum_j q_j R_{n-j} = f_n; requires q(0) != 0.
std::vector<Rational> taylor_coeffs_recurrence(const UniPoly& f, const UniPoly& q, long N);

/// Certified enclosure of width <= tol around the n-th Taylor coefficient of
/// p/q, computed from the root-sum formula by certified evaluation of
/// -p(x)/(x^(n+1) q'(x)) at the roots of q.
RInterval coefficient_formula_check(const UniPoly& p, const UniPoly& q, long n, const Rational& tol);

/// Certified integer upper bound on log(K)/log(M/m) where
/// K = (sum of c_bounds[1..]) / c_bounds[0]: the smallest integer N with
/// (M/m)^N >= K.  Nonpositive results mean the tail condition already holds
/// for every n >= 0.
Rational threshold_N(const std::vector<Rational>& c_bounds, const Rational& m, const Rational& M);

struct SignVerdict {
    enum class Kind { AllNonnegative, Counterexample, NotApplicable };
    Kind kind = Kind::NotApplicable;
    /// AllNonnegative: every index up to n0_star was checked exactly and the
    /// tail beyond it is certified positive.
    long n0_star = 0;
    /// Counterexample: R_{n0} < 0 exactly.
    long n0 = -1;
    Rational value;
    std::string reason;
};

/// Snapshot of the certification state for one error level eps_k = 2^-k.
struct CertState {
    unsigned k = 0;
    Rational eps_k;
    std::vector<ComplexRational> alpha_star;  // alpha_star[0] is alpha_1
    std::vector<ComplexRational> beta_star;
    Rational gamma_star;
    Rational m_star;
    std::optional<Rational> M_star;  // absent when deg q == 1
    std::vector<ComplexRational> C_star;
    std::vector<Rational> C_err;   // certified |C_i* - C(alpha_i)| bounds
    std::vector<Rational> L_star;
    bool s1 = false, s2 = false, s3 = false, s4 = false, s5 = false, s6 = false;
    bool s7a = false, s7b = false;
    bool all_met = false;
    // final quantities, present once the termination conditions hold
    std::optional<Rational> b_star;
    std::optional<Rational> K_star;
    std::optional<long> A_star;
    std::optional<long> N0_star;
};

struct NonnegOptions {
    /// Cap on k in eps_k = 2^-k.  The S3 threshold eps_k^(1/(4d)) forces
    /// k on the order of 4*d*log2(1/gamma), so high-degree denominators need
    /// far more than the first hundred levels.
    unsigned k_cap = 1024;
    /// Additional unit steps of k after the conditions first hold, tightening
    /// m*/M* and hence N0*.
    unsigned extra_halvings = 4;
    ClassifyOptions classify;
};

/// Decides whether every Taylor coefficient of f/q at the origin is
/// non-negative, exhibits the first negative index otherwise, or reports why
/// the method does not apply.
SignVerdict certify_nonnegativity(const UniPoly& f, const UniPoly& q,
                                  const NonnegOptions& opts = {},
                                  std::vector<CertState>* trace = nullptr);

}  // namespace certival

#endif
