#ifndef CERTIVAL_BENCH_HPP
#define CERTIVAL_BENCH_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "certival/holder.hpp"
#include "certival/polynomial.hpp"

namespace certival {

/// Benchmark sweep configuration; defaults mirror the standard setup
/// (d = 5, D = 5, n = 1, eps = 1e-14, 50 trials, coefficients up to 1e10).
struct BenchConfig {
    enum class Sweep { Degree, EvalDegree, FunctionCount, Epsilon };
    Sweep sweep = Sweep::Degree;
    long range_lo = 1;
    long range_hi = 25;
    unsigned trials = 50;
    long degree = 5;
    long eval_degree = 5;
    long function_count = 1;
    Rational epsilon = Rational(1, 1) / Rational::pow2(0);  // replaced below
    uint64_t seed = 0;
    long coeff_bound = 10000000000L;  // 1e10

    BenchConfig();
};

struct BenchRow {
    std::string axis;
    std::string value;
    double mean_seconds = 0;
    double std_seconds = 0;
};

/// Random dense polynomial of exact degree `degree` with integer
/// coefficients uniform in [-bound, bound] (leading coefficient nonzero).
UniPoly random_polynomial(std::mt19937_64& rng, long degree, long bound);

/// Random rational function with numerator and denominator of the given
/// degree; the denominator is coprime to `avoid` so evaluation at the roots
/// of `avoid` is well defined.
RationalFn random_rational_fn(std::mt19937_64& rng, long degree, long bound, const UniPoly& avoid);

std::vector<BenchRow> run_bench(const BenchConfig& config);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace certival

#endif
