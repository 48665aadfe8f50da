#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certival/holder.hpp"
#include "test_util.hpp"

using namespace certival;
using certival::testutil::poly_from_ints;
using certival::testutil::random_poly;
using certival::testutil::random_rational;

namespace {

// random rational point inside the closed disk B(center, radius)
ComplexRational sample_in_disk(std::mt19937_64& rng, const ComplexRational& center,
                               const Rational& radius) {
    std::uniform_int_distribution<long> coord(-1000, 1000);
    while (true) {
        Rational dx = radius * Rational(coord(rng), 1000);
        Rational dy = radius * Rational(coord(rng), 1000);
        if (dx * dx + dy * dy <= radius * radius) return center + ComplexRational{dx, dy};
    }
}

// sound violation test: lower(|f(u)-f(v)|) > C * upper(|u-v|^alpha)
bool holder_violated(const ComplexRational& fu, const ComplexRational& fv,
                     const ComplexRational& u, const ComplexRational& v, const HolderInfo& info) {
    Rational lhs_low = modulus_bounds(fu - fv, Rational(1, 1000000000)).lower;
    Rational dist_norm = (u - v).norm();  // |u-v|^2 exactly
    // |u-v|^alpha with alpha = s/t: bound (|u-v|^2)^(s) under a 2t-th root
    long s = info.exponent.numerator().get_si();
    long t = info.exponent.denominator().get_si();
    Rational powered = dist_norm.pow_int(s);
    Rational rhs_up = powered.is_zero()
                          ? Rational(0)
                          : kth_root_bounds(powered, static_cast<unsigned>(2 * t),
                                            max(powered / Rational(1024),
                                                Rational(1, mpz_class(1) << 80)))
                                .upper;
    return lhs_low > info.constant * rhs_up + Rational(1, mpz_class(1) << 70);
}

}  // namespace

TEST_CASE("holder_polynomial examples") {
    // f = x^2 around 1 with radius 1/2: C = 2 + 2*(1/2) = 3
    auto one = holder_polynomial(poly_from_ints({0, 0, 1}), ComplexRational(Rational(1)),
                                 Rational(1, 2));
    REQUIRE(one.ok());
    CHECK(one.info.exponent == Rational(1));
    CHECK(one.info.constant == Rational(3));

    auto constant = holder_polynomial(UniPoly::constant(Rational(5)), ComplexRational(), Rational(1));
    REQUIRE(constant.ok());
    CHECK(constant.info.constant == Rational(0));

    // x^5 - x - 1 at 0, radius 1: 1 + 5 = 6
    auto quintic = holder_polynomial(poly_from_ints({-1, -1, 0, 0, 0, 1}), ComplexRational(),
                                     Rational(1));
    REQUIRE(quintic.ok());
    CHECK(quintic.info.constant == Rational(6));
}

TEST_CASE("holder_rational examples") {
    // f = 1/(1-x) at 0 with radius 1/2: certificate holds, min |b| = 1/2
    RationalFn f(UniPoly::constant(Rational(1)), poly_from_ints({1, -1}));
    auto ok = holder_rational(f, ComplexRational(), Rational(1, 2));
    REQUIRE(ok.ok());
    CHECK(ok.info.exponent == Rational(1));
    // C = maxA'/minB + maxA*maxB'/minB^2 = 0/(1/2) + 1*1/(1/4) = 4,
    // which is exactly max |f'| on the disk
    CHECK(ok.info.constant == Rational(4));

    auto too_big = holder_rational(f, ComplexRational(), Rational(2));
    CHECK(too_big.status == HolderStatus::DomainFailure);

    RationalFn pole(UniPoly::constant(Rational(1)), poly_from_ints({0, 1}));
    auto at_pole = holder_rational(pole, ComplexRational(), Rational(1, 10));
    CHECK(at_pole.status == HolderStatus::DomainFailure);
}

TEST_CASE("holder_power_abs examples") {
    auto p3 = holder_power_abs(3);
    EvalFunction f{PowerAbs{3}};
    auto info = p3(f, ComplexRational(Rational(7)), Rational(100));
    REQUIRE(info.ok());
    CHECK(info.info.exponent == Rational(1, 3));
    CHECK(info.info.constant == Rational(1));

    auto p1 = holder_power_abs(1);
    auto lipschitz = p1(f, ComplexRational(), Rational(1));
    CHECK(lipschitz.info.exponent == Rational(1));
    CHECK(lipschitz.info.constant == Rational(1));

    // the provider is constant in (center, radius)
    auto other = p3(f, ComplexRational{Rational(-5), Rational(2)}, Rational(1, 1000));
    CHECK(other.info.exponent == info.info.exponent);
    CHECK(other.info.constant == info.info.constant);
}

TEST_CASE("holder soundness sampling: polynomial provider") {
    std::mt19937_64 rng(11);
    for (int cfg = 0; cfg < 12; ++cfg) {
        UniPoly f = random_poly(rng, 1 + cfg % 6, 40);
        ComplexRational center = certival::testutil::random_complex(rng, 40, 8);
        Rational radius = abs(random_rational(rng, 30, 10)) + Rational(1, 10);
        auto out = holder_polynomial(f, center, radius);
        REQUIRE(out.ok());
        ComplexRational fc = eval_exact(f, center);
        for (int s = 0; s < 120; ++s) {
            ComplexRational y = sample_in_disk(rng, center, radius);
            CHECK(!holder_violated(fc, eval_exact(f, y), center, y, out.info));
        }
    }
}

TEST_CASE("holder soundness sampling: rational provider") {
    std::mt19937_64 rng(22);
    int done = 0;
    while (done < 10) {
        UniPoly num = random_poly(rng, 1 + done % 4, 30);
        UniPoly den = random_poly(rng, 1 + done % 3, 30);
        ComplexRational center = certival::testutil::random_complex(rng, 20, 6);
        if (eval_exact(den, center).is_zero()) continue;
        RationalFn f(num, den);
        // shrink the radius until the certificate holds
        Rational radius(1, 2);
        HolderOutcome out = holder_rational(f, center, radius);
        int guard = 0;
        while (!out.ok() && guard++ < 60) {
            radius = radius / Rational(2);
            out = holder_rational(f, center, radius);
        }
        if (!out.ok()) continue;
        ++done;
        ComplexRational fc = f.eval(center);
        for (int s = 0; s < 120; ++s) {
            ComplexRational y = sample_in_disk(rng, center, radius);
            CHECK(!holder_violated(fc, f.eval(y), center, y, out.info));
        }
    }
}

TEST_CASE("holder soundness sampling: power-abs provider") {
    std::mt19937_64 rng(33);
    for (unsigned r : {1u, 2u, 3u, 5u}) {
        auto provider = holder_power_abs(r);
        EvalFunction f{PowerAbs{r}};
        for (int cfg = 0; cfg < 8; ++cfg) {
            ComplexRational center = certival::testutil::random_complex(rng, 30, 6);
            Rational radius = abs(random_rational(rng, 20, 10)) + Rational(1, 4);
            HolderInfo info = provider(f, center, radius).info;
            for (int s = 0; s < 60; ++s) {
                ComplexRational y = sample_in_disk(rng, center, radius);
                // |x|^(1/r) via certified enclosures of width 2^-70
                auto fy = kth_root_bounds(y.norm(), 2 * r, Rational(1, mpz_class(1) << 70));
                auto fc = kth_root_bounds(center.norm(), 2 * r, Rational(1, mpz_class(1) << 70));
                ComplexRational fu{(fc.lower + fc.upper) / Rational(2)};
                ComplexRational fv{(fy.lower + fy.upper) / Rational(2)};
                CHECK(!holder_violated(fu, fv, center, y, info));
            }
        }
    }
}

TEST_CASE("holder_polynomial dominates the derivative on sampled points") {
    std::mt19937_64 rng(44);
    for (int cfg = 0; cfg < 10; ++cfg) {
        UniPoly f = random_poly(rng, 2 + cfg % 5, 25);
        UniPoly df = f.derivative();
        ComplexRational center = certival::testutil::random_complex(rng, 10, 4);
        Rational radius = Rational(1 + cfg % 3, 2);
        auto out = holder_polynomial(f, center, radius);
        REQUIRE(out.ok());
        for (int s = 0; s < 100; ++s) {
            ComplexRational m = sample_in_disk(rng, center, radius);
            Rational dmod_low = modulus_bounds(eval_exact(df, m), Rational(1, 1 << 20)).lower;
            CHECK(out.info.constant >= dmod_low);
        }
    }
}

TEST_CASE("holder constant is nondecreasing in radius") {
    std::mt19937_64 rng(55);
    for (int cfg = 0; cfg < 20; ++cfg) {
        UniPoly f = random_poly(rng, 1 + cfg % 6, 40);
        ComplexRational center = certival::testutil::random_complex(rng, 10, 4);
        Rational r1 = abs(random_rational(rng, 5, 5)) + Rational(1, 8);
        Rational r2 = r1 * Rational(3, 2);
        auto a = holder_polynomial(f, center, r1);
        auto b = holder_polynomial(f, center, r2);
        CHECK(a.info.constant <= b.info.constant);
    }
}

TEST_CASE("holder_rational denominator bound is genuine") {
    std::mt19937_64 rng(66);
    RationalFn f(UniPoly::constant(Rational(1)), poly_from_ints({1, -1}));  // 1/(1-x)
    ComplexRational center;
    Rational radius(1, 2);
    auto out = holder_rational(f, center, radius);
    REQUIRE(out.ok());
    // min |b| on the disk is 1/2 for b = 1 - x
    for (int s = 0; s < 500; ++s) {
        ComplexRational y = sample_in_disk(rng, center, radius);
        ComplexRational by = eval_exact(poly_from_ints({1, -1}), y);
        CHECK(by.norm() >= Rational(1, 4));
    }
}
