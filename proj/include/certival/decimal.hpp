#ifndef CERTIVAL_DECIMAL_HPP
#define CERTIVAL_DECIMAL_HPP

#include <string>

#include "certival/rational.hpp"

namespace certival {

/// Finite decimal rendering of a complex rational together with the exact
/// rounding error committed: |printed - exact| <= error_bound componentwise.
struct DecimalString {
    std::string re;
    std::string im;
    Rational error_bound;
};

/// Renders z with the fewest decimal places such that each component is
/// within delta of its exact value.
DecimalString to_decimal(const ComplexRational& z, const Rational& delta);

/// Single-component version; err_out (if non-null) receives the exact
/// rounding error.
std::string decimal_of_rational(const Rational& r, const Rational& delta, Rational* err_out = nullptr);

/// Exact value of a plain decimal string (inverse of the printers above).
Rational parse_decimal(const std::string& text);

}  // namespace certival

#endif
