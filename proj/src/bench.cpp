#include "certival/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "certival/certified_eval.hpp"

namespace certival {

BenchConfig::BenchConfig() : epsilon(Rational::from_string("1e-14")) {}

UniPoly random_polynomial(std::mt19937_64& rng, long degree, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Rational> c(static_cast<size_t>(degree) + 1);
    for (auto& v : c) v = Rational(dist(rng));
    while (c.back().is_zero()) c.back() = Rational(dist(rng));
    return UniPoly(std::move(c));
}

RationalFn random_rational_fn(std::mt19937_64& rng, long degree, long bound, const UniPoly& avoid) {
    UniPoly num = random_polynomial(rng, degree, bound);
    for (int attempt = 0; attempt < 256; ++attempt) {
        UniPoly den = random_polynomial(rng, degree, bound);
        if (poly_gcd(den, avoid).degree() == 0 && poly_gcd(den, num).degree() == 0)
            return RationalFn(num, den);
    }
    throw std::runtime_error("random_rational_fn: could not draw a coprime denominator");
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    std::mt19937_64 rng(config.seed);
    std::vector<BenchRow> rows;
    const char* axis = config.sweep == BenchConfig::Sweep::Degree         ? "d"
                       : config.sweep == BenchConfig::Sweep::EvalDegree   ? "D"
                       : config.sweep == BenchConfig::Sweep::FunctionCount ? "n"
                                                                           : "eps";
    for (long point = config.range_lo; point <= config.range_hi; ++point) {
        long d = config.degree;
        long D = config.eval_degree;
        long n = config.function_count;
        Rational eps = config.epsilon;
        std::string value = std::to_string(point);
        switch (config.sweep) {
            case BenchConfig::Sweep::Degree: d = point; break;
            case BenchConfig::Sweep::EvalDegree: D = point; break;
            case BenchConfig::Sweep::FunctionCount: n = point; break;
            case BenchConfig::Sweep::Epsilon:
                // axis point j means eps = 10^-j
                eps = Rational(1) / Rational(10).pow_int(point);
                value = "1e-" + std::to_string(point);
                break;
        }
        std::vector<double> samples;
        samples.reserve(config.trials);
        for (unsigned trial = 0; trial < config.trials; ++trial) {
            UniPoly p = random_polynomial(rng, d, config.coeff_bound);
            while (poly_gcd(p, p.derivative()).degree() > 0)
                p = random_polynomial(rng, d, config.coeff_bound);
            std::vector<EvalFunction> fs;
            std::vector<HolderProvider> providers;
            for (long i = 0; i < n; ++i) {
                EvalFunction f{random_rational_fn(rng, D, config.coeff_bound, p)};
                providers.push_back(default_provider(f));
                fs.push_back(std::move(f));
            }
            auto start = std::chrono::steady_clock::now();
            certify_evaluations(p, fs, providers, eps);
            auto stop = std::chrono::steady_clock::now();
            samples.push_back(std::chrono::duration<double>(stop - start).count());
        }
        double mean = 0;
        for (double s : samples) mean += s;
        mean /= static_cast<double>(samples.size());
        double var = 0;
        for (double s : samples) var += (s - mean) * (s - mean);
        var /= static_cast<double>(samples.size());
        rows.push_back({axis, value, mean, std::sqrt(var)});
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "axis,value,mean_seconds,std_seconds\n";
    for (const auto& r : rows)
        os << r.axis << "," << r.value << "," << r.mean_seconds << "," << r.std_seconds << "\n";
    return os.str();
}

}  // namespace certival
