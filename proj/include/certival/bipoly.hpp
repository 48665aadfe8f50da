#ifndef CERTIVAL_BIPOLY_HPP
#define CERTIVAL_BIPOLY_HPP

#include <vector>

#include "certival/polynomial.hpp"

namespace certival {

/// Dense bivariate polynomial over Q stored as a coefficient grid,
/// c[i][j] being the coefficient of x^i y^j.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<std::vector<Rational>> grid);

    bool is_zero() const { return grid_.empty(); }
    int deg_x() const { return static_cast<int>(grid_.size()) - 1; }
    /// Degree in y of the coefficient row attached to x^i (-1 if empty).
    int deg_y_row(size_t i) const {
        return i < grid_.size() ? static_cast<int>(grid_[i].size()) - 1 : -1;
    }
    Rational coeff(size_t i, size_t j) const;

    Rational eval(const Rational& x, const Rational& y) const;
    RInterval interval_eval(const RInterval& x, const RInterval& y) const;

    BiPoly dx() const;
    BiPoly dy() const;

    /// Univariate restriction q(v, y) as a polynomial in y.
    UniPoly at_x(const Rational& v) const;
    /// Univariate restriction q(x, v) as a polynomial in x.
    UniPoly at_y(const Rational& v) const;

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const Rational& s) const;

private:
    void trim();
    // grid_[i] holds the y-coefficients attached to x^i
    std::vector<std::vector<Rational>> grid_;
};

/// Real and imaginary parts of q(x + i y) as exact bivariate polynomials.
struct BiPolyPair {
    BiPoly re;
    BiPoly im;
};

BiPolyPair real_imag_parts(const UniPoly& p);

/// Enclosure pair (re, im) of q over a 2-dimensional box.
CInterval interval_eval(const BiPolyPair& q, const Box& box);

}  // namespace certival

#endif
