#ifndef CERTIVAL_MPOLY_HPP
#define CERTIVAL_MPOLY_HPP

#include <array>
#include <map>
#include <vector>

#include "certival/bipoly.hpp"
#include "certival/polynomial.hpp"

namespace certival {

/// Sparse polynomial in up to three variables; used by the semialgebraic
/// solver where systems mix univariate and conjugate-pair equations.
class MPoly {
public:
    using Exps = std::array<unsigned, 3>;

    MPoly() : nvars_(0) {}
    explicit MPoly(unsigned nvars) : nvars_(nvars) {}

    static MPoly from_univariate(const UniPoly& p, unsigned var, unsigned nvars);
    static MPoly from_bipoly(const BiPoly& p, unsigned var_x, unsigned var_y, unsigned nvars);
    static MPoly constant(const Rational& c, unsigned nvars);
    static MPoly variable(unsigned var, unsigned nvars);

    unsigned nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exps, Rational>& terms() const { return terms_; }
    bool depends_on(unsigned var) const;
    unsigned degree(unsigned var) const;

    void add_term(const Exps& e, const Rational& c);

    Rational eval(const std::vector<Rational>& point) const;
    RInterval interval_eval(const Box& box) const;
    MPoly derivative(unsigned var) const;
    /// All variables present in this polynomial.
    std::vector<unsigned> support() const;
    /// Restriction to a single variable (throws if more than one is present).
    UniPoly to_univariate(unsigned var) const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;

private:
    unsigned nvars_;
    std::map<Exps, Rational> terms_;
};

}  // namespace certival

#endif
