#ifndef CERTIVAL_TEST_UTIL_HPP
#define CERTIVAL_TEST_UTIL_HPP

#include <random>

#include "certival/polynomial.hpp"
#include "certival/rational.hpp"

namespace certival::testutil {

inline Rational random_rational(std::mt19937_64& rng, long num_bound = 1000000, long den_bound = 1000) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound);
    std::uniform_int_distribution<long> den(1, den_bound);
    return Rational(num(rng), den(rng));
}

inline ComplexRational random_complex(std::mt19937_64& rng, long num_bound = 1000, long den_bound = 100) {
    return {random_rational(rng, num_bound, den_bound), random_rational(rng, num_bound, den_bound)};
}

inline UniPoly random_poly(std::mt19937_64& rng, int degree, long coeff_bound = 1000) {
    std::uniform_int_distribution<long> coeff(-coeff_bound, coeff_bound);
    std::vector<Rational> c(static_cast<size_t>(degree) + 1);
    for (auto& v : c) v = Rational(coeff(rng));
    while (c.back().is_zero()) c.back() = Rational(coeff(rng));
    return UniPoly(std::move(c));
}

inline UniPoly poly_from_ints(std::initializer_list<long> ascending) {
    std::vector<Rational> c;
    for (long v : ascending) c.emplace_back(v);
    return UniPoly(std::move(c));
}

}  // namespace certival::testutil

#endif
