#ifndef CERTIVAL_PARSE_HPP
#define CERTIVAL_PARSE_HPP

#include <stdexcept>
#include <string>

#include "certival/holder.hpp"
#include "certival/polynomial.hpp"

namespace certival {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    size_t position() const { return position_; }

private:
    size_t position_;
};

/// Parsed polynomial expression: the source text plus its exact value as a
/// polynomial or reduced rational function in x.
struct PolyExpr {
    std::string source;
    UniPoly num;
    UniPoly den;  // constant 1 for plain polynomials

    bool is_polynomial() const { return den.degree() == 0; }
    UniPoly as_polynomial() const;
    RationalFn as_rational() const { return RationalFn(num, den); }
    EvalFunction as_function() const;
};

/// Grammar: integer/rational coefficients, x, ^, + - * /, parentheses, and
/// implicit multiplication as in "21x^8 - 42x^4".
PolyExpr parse_polynomial(const std::string& text);

}  // namespace certival

#endif
