#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certival/bipoly.hpp"
#include "certival/mpoly.hpp"
#include "certival/polynomial.hpp"
#include "test_util.hpp"

using namespace certival;
using certival::testutil::poly_from_ints;
using certival::testutil::random_poly;
using certival::testutil::random_rational;

namespace {
const UniPoly quintic = poly_from_ints({-1, -1, 0, 0, 0, 1});  // x^5 - x - 1
const UniPoly objective = [] {
    std::vector<Rational> c(9, Rational(0));
    c[0] = Rational(3);
    c[3] = Rational(-56);
    c[4] = Rational(-42);
    c[8] = Rational(21);
    return UniPoly(std::move(c));
}();  // 21x^8 - 42x^4 - 56x^3 + 3
}  // namespace

TEST_CASE("eval_exact examples") {
    CHECK(eval_exact(quintic, ComplexRational(Rational(1))) == ComplexRational(Rational(-1)));
    UniPoly x2p1 = poly_from_ints({1, 0, 1});
    CHECK(eval_exact(x2p1, {Rational(0), Rational(1)}).is_zero());
    CHECK(eval_exact(objective, ComplexRational()) == ComplexRational(Rational(3)));
}

TEST_CASE("taylor_coeffs_at examples") {
    UniPoly x2 = poly_from_ints({0, 0, 1});
    auto t = taylor_coeffs_at(x2, Rational(1));
    REQUIRE(t.size() == 3);
    CHECK(t[0] == Rational(1));
    CHECK(t[1] == Rational(2));
    CHECK(t[2] == Rational(1));

    auto t5 = taylor_coeffs_at(quintic, Rational(0));
    REQUIRE(t5.size() == 6);
    CHECK(t5[0] == Rational(-1));
    CHECK(t5[1] == Rational(-1));
    CHECK(t5[5] == Rational(1));

    UniPoly x3 = poly_from_ints({0, 0, 0, 1});
    auto t3 = taylor_coeffs_at(x3, Rational(2));
    REQUIRE(t3.size() == 4);
    CHECK(t3[0] == Rational(8));
    CHECK(t3[1] == Rational(12));
    CHECK(t3[2] == Rational(6));
    CHECK(t3[3] == Rational(1));
}

TEST_CASE("taylor reassembly reproduces the polynomial (fuzzed)") {
    std::mt19937_64 rng(31337);
    for (int iter = 0; iter < 50; ++iter) {
        UniPoly p = random_poly(rng, 1 + iter % 8);
        Rational c = random_rational(rng, 50, 20);
        auto t = taylor_coeffs_at(p, c);
        // rebuild sum t[i] (x-c)^i
        UniPoly shifted = UniPoly::constant(Rational(0));
        UniPoly basis = UniPoly::constant(Rational(1));
        UniPoly xmc = UniPoly(std::vector<Rational>{-c, Rational(1)});
        for (size_t i = 0; i < t.size(); ++i) {
            shifted = shifted + basis * t[i];
            basis = basis * xmc;
        }
        CHECK(shifted == p);
    }
}

TEST_CASE("poly_divmod examples and identity") {
    UniPoly x2 = poly_from_ints({0, 0, 1});
    UniPoly xm1 = poly_from_ints({-1, 1});
    auto [g, r] = poly_divmod(x2, xm1);
    CHECK(g == poly_from_ints({1, 1}));
    CHECK(r == UniPoly::constant(Rational(1)));

    UniPoly big = [] {
        std::vector<Rational> c(19, Rational(0));
        c[0] = Rational(1);
        c[3] = Rational(-1);
        c[7] = Rational(-1);
        c[18] = Rational(1);
        return UniPoly(std::move(c));
    }();
    auto [g2, r2] = poly_divmod(UniPoly::constant(Rational(1)), big);
    CHECK(g2.is_zero());
    CHECK(r2 == UniPoly::constant(Rational(1)));

    UniPoly x18 = UniPoly::monomial(Rational(1), 18);
    UniPoly x18m1 = x18 - UniPoly::constant(Rational(1));
    auto [g3, r3] = poly_divmod(x18, x18m1);
    CHECK(g3 == UniPoly::constant(Rational(1)));
    CHECK(r3 == UniPoly::constant(Rational(1)));

    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 60; ++iter) {
        UniPoly f = random_poly(rng, 1 + iter % 10);
        UniPoly q = random_poly(rng, 1 + iter % 5);
        auto [quo, rem] = poly_divmod(f, q);
        CHECK(q * quo + rem == f);
        CHECK(rem.degree() < q.degree());
    }
}

TEST_CASE("squarefree factorization examples") {
    // 168 x^2 (x^5 - x - 1)
    UniPoly p = UniPoly::monomial(Rational(168), 2) * quintic;
    auto sf = squarefree_factorization(p);
    REQUIRE(sf.factors.size() == 2);
    bool found_x = false, found_quintic = false;
    for (const auto& part : sf.factors) {
        if (part.factor == poly_from_ints({0, 1})) {
            CHECK(part.multiplicity == 2);
            found_x = true;
        }
        if (part.factor == quintic) {
            CHECK(part.multiplicity == 1);
            found_quintic = true;
        }
    }
    CHECK(found_x);
    CHECK(found_quintic);

    UniPoly cube = poly_from_ints({-1, 1});
    auto sf3 = squarefree_factorization(cube * cube * cube);
    REQUIRE(sf3.factors.size() == 1);
    CHECK(sf3.factors[0].factor == cube);
    CHECK(sf3.factors[0].multiplicity == 3);

    UniPoly x2p1 = poly_from_ints({1, 0, 1});
    auto sf1 = squarefree_factorization(x2p1);
    REQUIRE(sf1.factors.size() == 1);
    CHECK(sf1.factors[0].factor == x2p1);
    CHECK(sf1.factors[0].multiplicity == 1);
}

TEST_CASE("squarefree factorization reconstructs input (fuzzed)") {
    std::mt19937_64 rng(555);
    for (int iter = 0; iter < 40; ++iter) {
        UniPoly a = random_poly(rng, 1 + iter % 3, 10);
        UniPoly b = random_poly(rng, 1 + iter % 2, 10);
        UniPoly p = a * a * b;
        if (p.degree() < 1) continue;
        auto sf = squarefree_factorization(p);
        UniPoly prod = UniPoly::constant(Rational(1));
        for (const auto& part : sf.factors) {
            for (unsigned m = 0; m < part.multiplicity; ++m) prod = prod * part.factor;
            // each factor squarefree: gcd(f, f') constant
            CHECK(poly_gcd(part.factor, part.factor.derivative()).degree() == 0);
        }
        // product equals p up to a rational constant
        CHECK(primitive_part(prod) == primitive_part(p));
        // factors pairwise coprime
        for (size_t i = 0; i < sf.factors.size(); ++i)
            for (size_t j = i + 1; j < sf.factors.size(); ++j)
                CHECK(poly_gcd(sf.factors[i].factor, sf.factors[j].factor).degree() == 0);
    }
}

TEST_CASE("real_imag_parts examples") {
    UniPoly x2 = poly_from_ints({0, 0, 1});
    auto pair = real_imag_parts(x2);
    // q_r = x^2 - y^2, q_i = 2xy
    CHECK(pair.re.coeff(2, 0) == Rational(1));
    CHECK(pair.re.coeff(0, 2) == Rational(-1));
    CHECK(pair.im.coeff(1, 1) == Rational(2));

    UniPoly x2p1 = poly_from_ints({1, 0, 1});
    auto pair2 = real_imag_parts(x2p1);
    CHECK(pair2.re.coeff(0, 0) == Rational(1));
    CHECK(pair2.re.eval(Rational(1), Rational(2)) == Rational(1 - 4 + 1));
}

TEST_CASE("real_imag_parts vanishes at an isolated real root") {
    // q_r(x, 0) equals the polynomial itself, so near the quintic's real root
    // the restriction must be tiny
    auto pair = real_imag_parts(quintic);
    Rational approx(mpz_class("2691619717901426047"), mpz_class("2305843009213693952"));
    Rational v = pair.re.eval(approx, Rational(0));
    CHECK(abs(v) <= Rational::from_string("1e-13"));
    CHECK(pair.im.eval(approx, Rational(0)).is_zero());
}

TEST_CASE("real_imag_parts identity (fuzzed)") {
    std::mt19937_64 rng(808);
    for (int iter = 0; iter < 100; ++iter) {
        UniPoly p = random_poly(rng, 1 + iter % 8, 50);
        auto pair = real_imag_parts(p);
        Rational x = random_rational(rng, 20, 10);
        Rational y = random_rational(rng, 20, 10);
        ComplexRational v = eval_exact(p, {x, y});
        CHECK(pair.re.eval(x, y) == v.re());
        CHECK(pair.im.eval(x, y) == v.im());
    }
}

TEST_CASE("interval_eval encloses exact values") {
    UniPoly x2 = poly_from_ints({0, 0, 1});
    RInterval box{Rational(1), Rational(2)};
    RInterval img = interval_eval(x2, box);
    CHECK(img.contains(Rational(1)));
    CHECK(img.contains(Rational(4)));

    UniPoly xm1 = poly_from_ints({-1, 1});
    CHECK(interval_eval(xm1, RInterval{Rational(2), Rational(3)}) ==
          RInterval{Rational(1), Rational(2)});

    RInterval root_box{Rational(11, 10), Rational(12, 10)};
    CHECK(interval_eval(quintic, root_box).contains_zero());
}

TEST_CASE("cauchy_root_bound examples") {
    CHECK(cauchy_root_bound(poly_from_ints({-2, 0, 1})) == Rational(3));
    CHECK(cauchy_root_bound(quintic) == Rational(2));
    CHECK(cauchy_root_bound(poly_from_ints({-10, 1})) == Rational(11));
}

TEST_CASE("poly_gcd") {
    UniPoly a = poly_from_ints({-1, 1}) * poly_from_ints({2, 1});
    UniPoly b = poly_from_ints({-1, 1}) * poly_from_ints({5, 3});
    CHECK(poly_gcd(a, b) == poly_from_ints({-1, 1}));
    CHECK(poly_gcd(quintic, quintic.derivative()).degree() == 0);
}

TEST_CASE("mpoly basics") {
    MPoly s = MPoly::variable(0, 3) * MPoly::variable(0, 3) +
              MPoly::variable(1, 3) * MPoly::variable(1, 3) -
              MPoly::variable(2, 3) * MPoly::variable(2, 3);
    CHECK(s.eval({Rational(3), Rational(4), Rational(5)}).is_zero());
    Box box{RInterval{Rational(0), Rational(1)}, RInterval{Rational(0), Rational(1)},
            RInterval{Rational(2), Rational(3)}};
    RInterval img = s.interval_eval(box);
    CHECK(img.hi() <= Rational(-2));
    MPoly dx = s.derivative(0);
    CHECK(dx.eval({Rational(3), Rational(0), Rational(0)}) == Rational(6));

    std::mt19937_64 rng(606);
    for (int iter = 0; iter < 50; ++iter) {
        UniPoly p = random_poly(rng, 1 + iter % 6, 30);
        auto pair = real_imag_parts(p);
        MPoly mre = MPoly::from_bipoly(pair.re, 1, 2, 3);
        Rational x = random_rational(rng, 10, 10);
        Rational y = random_rational(rng, 10, 10);
        CHECK(mre.eval({Rational(0), x, y}) == pair.re.eval(x, y));
    }
}
