#ifndef CERTIVAL_ISOLATION_HPP
#define CERTIVAL_ISOLATION_HPP

#include <optional>
#include <vector>

#include "certival/bipoly.hpp"
#include "certival/mpoly.hpp"
#include "certival/polynomial.hpp"

namespace certival {

/// Certified isolating box for one root of a squarefree polynomial.
/// Real roots carry a 1-dimensional box with exactly zero imaginary part;
/// complex roots carry a 2-dimensional (re, im) box.  Multiplicity refers to
/// the original polynomial when the root came through a squarefree
/// factorization.
struct IsolatedRoot {
    Box box;
    unsigned multiplicity = 1;
    bool is_real = false;
    bool certified_unique = true;

    ComplexRational approx() const;
    /// Certified bound on |z - approx()| for the enclosed root z.
    Rational error_radius() const;
};

/// Isolates every real root of a squarefree polynomial, optionally
/// restricted to a closed domain interval.  Boxes are pairwise disjoint and
/// each contains exactly one root; the count is exact.
std::vector<IsolatedRoot> isolate_real_roots(const UniPoly& p,
                                             const std::optional<RInterval>& domain = std::nullopt);

/// Isolates all deg(p) complex roots of a squarefree polynomial.  Non-real
/// roots are certified by the Krawczyk test on the (q_r, q_i) system in the
/// upper half-plane and mirrored to their conjugates; output is sorted by
/// (re, im) of the box midpoints.
std::vector<IsolatedRoot> isolate_complex_roots(const UniPoly& p);

enum class KrawczykResult { UniqueRoot, NoRoot, Unknown };

/// Krawczyk existence/uniqueness test for a square system of 2 or 3
/// polynomial equations on a box of matching dimension.
KrawczykResult krawczyk_test(const std::vector<MPoly>& system, const Box& box);

/// Shrinks a certified isolating box until its width is at most
/// 2*target_radius; the result still contains the same root.
IsolatedRoot refine_root(const UniPoly& p, const IsolatedRoot& root, const Rational& target_radius);

/// Stateful refiner for repeated refinement of one root; keeps the
/// real/imaginary split of the factor cached across calls.
class RootRefiner {
public:
    RootRefiner(UniPoly squarefree_factor, IsolatedRoot root);

    const IsolatedRoot& root() const { return root_; }
    ComplexRational midpoint() const { return root_.approx(); }
    Rational error_radius() const { return root_.error_radius(); }
    /// Refines until every box dimension has half-width <= bound.
    void refine_to(const Rational& half_width_bound);

private:
    void refine_real(const Rational& bound);
    void refine_complex(const Rational& bound);
    void init_bracket();

    UniPoly factor_;
    UniPoly dfactor_;
    BiPolyPair split_;  // restrictions feed the root-free line scans
    IsolatedRoot root_;
    int sign_lo_ = 0;  // 1D bracket state; 0 once the root is pinned exactly
    bool exact_ = false;
};

/// Zero-dimensional semialgebraic system in up to three variables:
/// polynomial equations plus strict sign conditions.  Conjugate-pair blocks
/// express q(x_re + i x_im) = 0 exactly and unlock the complete complex
/// isolation machinery for that variable pair.
struct SemialgebraicSystem {
    struct ComplexPairBlock {
        UniPoly q;
        unsigned var_re;
        unsigned var_im;
    };

    unsigned dimension = 1;
    std::vector<MPoly> equations;
    std::vector<ComplexPairBlock> complex_blocks;
    /// (g, +1) demands g > 0 on solutions, (g, -1) demands g < 0.
    std::vector<std::pair<MPoly, int>> strict_inequalities;
    std::optional<Box> search_region;
};

struct SolveOptions {
    unsigned max_refine_rounds = 128;
};

struct SolveResult {
    std::vector<Box> solutions;
    /// Boxes on which some sign condition could not be decided within the
    /// refinement budget (possible solution, not certified either way).
    std::vector<Box> undecided;
};

SolveResult solve_semialgebraic(const SemialgebraicSystem& sys, const SolveOptions& opts = {});

}  // namespace certival

#endif
