#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certival/certified_eval.hpp"
#include "test_util.hpp"

using namespace certival;
using certival::testutil::poly_from_ints;
using certival::testutil::random_poly;

namespace {
const UniPoly quintic = poly_from_ints({-1, -1, 0, 0, 0, 1});
const UniPoly objective = [] {
    std::vector<Rational> c(9, Rational(0));
    c[0] = Rational(3);
    c[3] = Rational(-56);
    c[4] = Rational(-42);
    c[8] = Rational(21);
    return UniPoly(std::move(c));
}();  // 21x^8 - 42x^4 - 56x^3 + 3
const UniPoly objective_derivative = objective.derivative();  // 168x^2 (x^5 - x - 1)

Rational parse_value(const CertifiedValue& cv) { return parse_decimal(cv.value.re); }
}  // namespace

TEST_CASE("compute_mu examples") {
    ErrorBudget b;
    b.epsilon = Rational::from_string("1e-14");
    b.delta = Rational::from_string("1e-15");
    b.gamma = Rational::from_string("5e-15");
    HolderInfo lip{Rational(1), Rational(3)};
    CHECK(compute_mu(b, lip) == Rational::from_string("3e-15"));

    HolderInfo flat{Rational(1), Rational(0)};
    CHECK(compute_mu(b, flat) == b.gamma);

    // alpha = 1/3: the bound is ((eps-delta)/C)^3, and the budget identity
    // delta + C mu^alpha <= eps holds exactly
    ErrorBudget b2;
    b2.epsilon = Rational(9, 1000);
    b2.delta = Rational(1, 1000);
    b2.gamma = Rational(1);
    HolderInfo cube{Rational(1, 3), Rational(1)};
    Rational mu = compute_mu(b2, cube);
    CHECK(mu == Rational(8, 1000).pow_int(3));
    // exact check of delta + C mu^(1/3) <= eps via cubes
    CHECK(mu <= ((b2.epsilon - b2.delta) / cube.constant).pow_int(3));
}

TEST_CASE("budget identity holds for fuzzed budgets") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        ErrorBudget b;
        b.epsilon = Rational(1 + iter % 50, 1000);
        b.delta = b.epsilon / Rational(10);
        b.gamma = b.epsilon / Rational(2);
        HolderInfo info;
        long s = 1 + iter % 4;
        info.exponent = Rational(1, s);
        info.constant = Rational(iter % 100, 7);
        Rational mu = compute_mu(b, info);
        CHECK(mu.sign() > 0);
        CHECK(mu <= b.gamma);
        if (!info.constant.is_zero()) {
            // delta + C mu^alpha <= eps  <=>  mu <= ((eps-delta)/C)^s
            Rational t = (b.epsilon - b.delta) / info.constant;
            CHECK(mu <= t.pow_int(s));
        }
    }
}

TEST_CASE("evaluate_with_error examples") {
    // polynomial at 0: "3" exactly
    auto three = evaluate_with_error(EvalFunction(objective), ComplexRational(),
                                     Rational::from_string("1e-15"));
    CHECK(three.value.re == "3");
    CHECK(three.error_bound == Rational(0));

    // |x|^(1/3) at -8: 2 within 1e-6
    auto two = evaluate_with_error(EvalFunction(PowerAbs{3}), ComplexRational(Rational(-8)),
                                   Rational::from_string("1e-6"));
    CHECK(abs(parse_decimal(two.value.re) - Rational(2)) <= Rational::from_string("1e-6"));

    // 1/(1-x) at 1/2 is exactly 2
    RationalFn f(UniPoly::constant(Rational(1)), poly_from_ints({1, -1}));
    auto v = evaluate_with_error(EvalFunction(f), ComplexRational(Rational(1, 2)),
                                 Rational(1, 1000));
    CHECK(v.value.re == "2");

    CHECK_THROWS_AS(
        evaluate_with_error(EvalFunction(f), ComplexRational(Rational(1)), Rational(1, 10)),
        std::domain_error);
}

TEST_CASE("certify_evaluations reproduces the worked example") {
    Rational eps = Rational::from_string("1e-14");
    std::vector<EvalFunction> fs{EvalFunction(objective), EvalFunction(objective_derivative)};
    auto report = certify_evaluations(objective_derivative, fs, {}, eps);

    REQUIRE(report.roots.size() == 6);
    // multiplicities [.., 2 at zero, ..]
    std::vector<unsigned> mults;
    for (const auto& r : report.roots) mults.push_back(r.multiplicity);
    size_t zero_idx = 0;
    for (size_t j = 0; j < report.roots.size(); ++j)
        if (report.roots[j].approx.is_zero()) zero_idx = j;
    CHECK(report.roots[zero_idx].multiplicity == 2);
    unsigned mult_sum = 0;
    for (unsigned m : mults) mult_sum += m;
    CHECK(mult_sum == 7);  // degree of 168x^2(x^5-x-1)

    // evaluation of the objective at the root 0 is exactly 3
    CHECK(report.evaluations[0][zero_idx].value.re == "3");

    // evaluation at the real quintic root matches the published value
    size_t quintic_idx = 0;
    for (size_t j = 0; j < report.roots.size(); ++j)
        if (report.roots[j].is_real && !report.roots[j].approx.is_zero()) quintic_idx = j;
    CHECK(report.evaluations[0][quintic_idx].value.re == "-91.6600084778015707");
    CHECK(report.evaluations[0][quintic_idx].error_bound <= eps);

    // evaluating p at its own roots gives values within eps of zero
    for (size_t j = 0; j < report.roots.size(); ++j) {
        Rational re = parse_decimal(report.evaluations[1][j].value.re);
        Rational im = parse_decimal(report.evaluations[1][j].value.im);
        CHECK(re * re + im * im <= eps * eps * Rational(4));
    }

    // roots certified within eps of the published rationals
    Rational root_ref(mpz_class("2691619717901426047"), mpz_class("2305843009213693952"));
    CHECK(abs(report.roots[quintic_idx].approx.re() - root_ref) <= Rational(2) * eps);
    CHECK(report.roots[quintic_idx].error <= eps);
}

TEST_CASE("power-abs and custom providers run through the pipeline") {
    Rational eps = Rational::from_string("1e-10");
    // f1 = |x|^(1/3) at roots of x^2 - 64: expect 4 (= 64^(1/2/3)... |8|^(1/3) = 2)
    UniPoly p = poly_from_ints({-64, 0, 1});
    std::vector<EvalFunction> fs{EvalFunction(PowerAbs{3})};
    std::vector<HolderProvider> providers{holder_power_abs(3)};
    auto report = certify_evaluations(p, fs, providers, eps);
    REQUIRE(report.roots.size() == 2);
    for (size_t j = 0; j < 2; ++j)
        CHECK(abs(parse_value(report.evaluations[0][j]) - Rational(2)) <= eps);

    // a custom function: f(x) = x + 1 evaluated through the custom interface
    CustomFunction custom;
    custom.name = "shift";
    custom.provider = [](const EvalFunction&, const ComplexRational&, const Rational&) {
        HolderOutcome out;
        out.info.exponent = Rational(1);
        out.info.constant = Rational(1);
        return out;
    };
    custom.evaluator = [](const ComplexRational& z, const Rational&) {
        return ApproxValue{z + ComplexRational(Rational(1)), Rational(0)};
    };
    std::vector<EvalFunction> cfs{EvalFunction(custom)};
    std::vector<HolderProvider> cproviders{custom.provider};
    auto creport = certify_evaluations(poly_from_ints({-9, 0, 1}), cfs, cproviders, eps);
    REQUIRE(creport.roots.size() == 2);
    CHECK(abs(parse_value(creport.evaluations[0][0]) - Rational(-2)) <= eps);
    CHECK(abs(parse_value(creport.evaluations[0][1]) - Rational(4)) <= eps);
}

TEST_CASE("shrink loop exercises at least one halving and terminates") {
    // denominator root 1e-6 away from the evaluated root 1 forces the
    // initial Hölder disk (radius eps) to shrink... radius 2*gamma = eps
    // with eps = 1e-3 >> 1e-6 distance, so halvings must occur
    Rational eps(1, 1000);
    UniPoly p = poly_from_ints({-1, 1});  // root at 1
    Rational near = Rational(1) + Rational(1, 1000000);
    UniPoly den = UniPoly(std::vector<Rational>{-near, Rational(1)});
    RationalFn f(UniPoly::constant(Rational(1)), den);
    std::vector<EvalFunction> fs{EvalFunction(f)};
    auto report = certify_evaluations(p, fs, {}, eps);
    REQUIRE(report.roots.size() == 1);
    // exact value 1/(1 - near) = -1e6
    CHECK(abs(parse_value(report.evaluations[0][0]) - Rational(-1000000)) <= eps);

    // a function undefined at the root exhausts the loop with a diagnostic
    RationalFn pole(UniPoly::constant(Rational(1)), poly_from_ints({-1, 1}));
    std::vector<EvalFunction> bad{EvalFunction(pole)};
    CHECK_THROWS_AS(certify_evaluations(p, bad, {}, eps), ShrinkLoopExhausted);
}

TEST_CASE("end-to-end certificate against a high-precision oracle (fuzzed)") {
    std::mt19937_64 rng(123);
    Rational eps = Rational::from_string("1e-12");
    int done = 0;
    while (done < 6) {
        UniPoly p = random_poly(rng, 3 + done % 4, 50);
        if (poly_gcd(p, p.derivative()).degree() > 0) continue;
        UniPoly f = random_poly(rng, 2 + done % 5, 50);
        bool with_rational = done % 2 == 0;
        UniPoly den = random_poly(rng, 2, 20);
        if (with_rational && poly_gcd(den, p).degree() > 0) continue;
        ++done;
        std::vector<EvalFunction> fs{EvalFunction(f)};
        if (with_rational) fs.emplace_back(RationalFn(f, den));
        auto report = certify_evaluations(p, fs, {}, eps);
        REQUIRE(report.roots.size() == static_cast<size_t>(p.degree()));
        // oracle: refine each root to 1e-40 independently and evaluate exactly
        for (auto& root : isolate_complex_roots(p)) {
            auto fine = refine_root(p, root, Rational::from_string("1e-40"));
            bool matched = false;
            for (size_t j = 0; j < report.roots.size(); ++j) {
                ComplexRational diff = report.roots[j].approx - fine.approx();
                if (diff.norm() <= eps * eps * Rational(9)) {
                    matched = true;
                    for (size_t i = 0; i < fs.size(); ++i) {
                        ComplexRational oracle =
                            i == 0 ? eval_exact(f, fine.approx())
                                   : std::get<RationalFn>(fs[1].payload()).eval(fine.approx());
                        Rational re = parse_decimal(report.evaluations[i][j].value.re);
                        Rational im = parse_decimal(report.evaluations[i][j].value.im);
                        ComplexRational err = ComplexRational{re, im} - oracle;
                        CHECK(err.norm() <= eps * eps * Rational(9));
                    }
                    break;
                }
            }
            CHECK(matched);
        }
    }
}

TEST_CASE("report ordering pairs evaluations with roots") {
    Rational eps = Rational::from_string("1e-10");
    UniPoly p = poly_from_ints({2, -3, 1});  // roots 1, 2
    UniPoly f = poly_from_ints({0, 0, 1});   // x^2
    auto report = certify_evaluations(p, {EvalFunction(f)}, {}, eps);
    REQUIRE(report.roots.size() == 2);
    CHECK(report.roots[0].approx.re() < report.roots[1].approx.re());
    CHECK(abs(parse_value(report.evaluations[0][0]) - Rational(1)) <= eps);
    CHECK(abs(parse_value(report.evaluations[0][1]) - Rational(4)) <= eps);
}
