#ifndef CERTIVAL_CERTIFIED_EVAL_HPP
#define CERTIVAL_CERTIFIED_EVAL_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "certival/decimal.hpp"
#include "certival/holder.hpp"
#include "certival/isolation.hpp"

namespace certival {

/// Error accounting for one root: target epsilon, evaluation error delta,
/// current root error gamma, and the final refinement radius mu.
struct ErrorBudget {
    Rational epsilon;
    Rational delta;
    Rational gamma;
    Rational mu;
};

/// Decimal value with a certified bound on its distance from the exact
/// value of the function at the associated root.
struct CertifiedValue {
    DecimalString value;
    Rational error_bound;
};

struct RootRecord {
    ComplexRational approx;
    Rational error;
    unsigned multiplicity = 1;
    bool is_real = false;
    Box box;
};

/// Full answer of the certified evaluation pipeline: one approximation per
/// distinct root and a function-major matrix of certified evaluations;
/// evaluations[i][j] corresponds to roots[j].
struct EvaluationReport {
    std::vector<RootRecord> roots;
    std::vector<std::vector<CertifiedValue>> evaluations;
};

struct EvalOptions {
    /// delta = epsilon * delta_factor, as in the evaluation error budget.
    Rational delta_factor{1, 10};
    /// Printing precision for reported decimals (fraction of epsilon).
    Rational print_factor{1, 100};
    /// Hard cap on gamma halvings while hunting for a valid Hölder disk.
    unsigned shrink_cap = 64;
    /// The final refinement tightens mu by this many extra bits; certificates
    /// are stated with mu itself, so this only adds slack.
    unsigned extra_refine_bits = 16;
};

/// Raised when the gamma-shrinking loop exhausts its budget; usually means an
/// evaluation function is undefined at (or extremely close to) a root.
class ShrinkLoopExhausted : public std::runtime_error {
public:
    explicit ShrinkLoopExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Largest refinement radius that keeps the Hölder displacement error within
/// the budget: mu <= min(gamma, ((epsilon - delta)/C)^(1/alpha)), returned as
/// a positive rational (gamma when C = 0).
Rational compute_mu(const ErrorBudget& budget, const HolderInfo& info);

/// Certified evaluation of f at an exactly known point: the printed decimal
/// is within delta of f(z).
CertifiedValue evaluate_with_error(const EvalFunction& f, const ComplexRational& z,
                                   const Rational& delta);

/// Computes roots of p within epsilon and certified evaluations of every
/// function at every distinct root, all within epsilon.
EvaluationReport certify_evaluations(const UniPoly& p, const std::vector<EvalFunction>& fs,
                                     const std::vector<HolderProvider>& providers,
                                     const Rational& epsilon, const EvalOptions& opts = {});

/// Per-root evaluation engine reused by the report pipeline and by the
/// certification procedures that manage root sets themselves.
class RootEvaluator {
public:
    /// The refiner must wrap a certified root of its squarefree factor.
    RootEvaluator(RootRefiner& refiner, const Rational& epsilon, const EvalOptions& opts = {});

    struct Result {
        ComplexRational z_star;
        /// Exact value f(z_star) when the function admits exact evaluation.
        std::optional<ComplexRational> exact;
        /// Always-valid enclosure: |approx.value - f(root)| <= approx.error.
        ApproxValue approx;
    };

    /// Runs the budgeted evaluation loop for all functions at this root.
    std::vector<Result> run(const std::vector<EvalFunction>& fs,
                            const std::vector<HolderProvider>& providers);

    const ErrorBudget& budget() const { return budget_; }

private:
    RootRefiner& refiner_;
    ErrorBudget budget_;
    EvalOptions opts_;
};

}  // namespace certival

#endif
