#include "certival/holder.hpp"

#include <stdexcept>

namespace certival {

namespace {

// rational upper bound on |z|, tolerance scaled to the magnitude
Rational mod_upper(const ComplexRational& z) {
    if (z.is_zero()) return Rational(0);
    if (z.is_real()) return abs(z.re());
    Rational scale = max(abs(z.re()), abs(z.im()));
    return modulus_bounds(z, scale / Rational(1 << 20)).upper;
}

Rational mod_lower(const ComplexRational& z) {
    if (z.is_zero()) return Rational(0);
    if (z.is_real()) return abs(z.re());
    Rational scale = max(abs(z.re()), abs(z.im()));
    return modulus_bounds(z, scale / Rational(1 << 20)).lower;
}

// sum_{i=1..d} |f^(i)(center)| / (i-1)! * radius^(i-1)
//   = sum_{i=1..d} i * |t_i| * radius^(i-1)  with t_i the Taylor coefficients;
// bounds max |f'| on the disk
Rational derivative_triangle_bound(const std::vector<ComplexRational>& taylor,
                                   const Rational& radius) {
    Rational c(0);
    Rational rpow(1);
    for (size_t i = 1; i < taylor.size(); ++i) {
        c += Rational(static_cast<long>(i)) * mod_upper(taylor[i]) * rpow;
        rpow *= radius;
    }
    return c;
}

// sum_{i=0..d} |t_i| * radius^i; bounds max |f| on the disk
Rational value_triangle_bound(const std::vector<ComplexRational>& taylor, const Rational& radius) {
    Rational c(0);
    Rational rpow(1);
    for (size_t i = 0; i < taylor.size(); ++i) {
        c += mod_upper(taylor[i]) * rpow;
        rpow *= radius;
    }
    return c;
}

}  // namespace

RationalFn::RationalFn(UniPoly n, UniPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::invalid_argument("RationalFn: zero denominator");
    UniPoly g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = poly_divmod(num, g).first;
        den = poly_divmod(den, g).first;
    }
}

ComplexRational RationalFn::eval(const ComplexRational& z) const {
    ComplexRational d = eval_exact(den, z);
    if (d.is_zero()) throw std::domain_error("RationalFn: evaluation at a pole");
    return eval_exact(num, z) / d;
}

std::string EvalFunction::describe() const {
    if (auto* p = std::get_if<UniPoly>(&payload_)) return poly_to_string(*p);
    if (auto* r = std::get_if<RationalFn>(&payload_))
        return "(" + poly_to_string(r->num) + ")/(" + poly_to_string(r->den) + ")";
    if (auto* pa = std::get_if<PowerAbs>(&payload_))
        return "|x|^(1/" + std::to_string(pa->r) + ")";
    return std::get<CustomFunction>(payload_).name;
}

HolderOutcome holder_polynomial(const UniPoly& f, const ComplexRational& center,
                                const Rational& radius) {
    if (radius.sign() <= 0) throw std::invalid_argument("holder_polynomial: radius must be > 0");
    HolderOutcome out;
    out.info.exponent = Rational(1);
    if (f.degree() <= 0) {
        out.info.constant = Rational(0);
        return out;
    }
    auto taylor = taylor_coeffs_at(f, center);
    out.info.constant = derivative_triangle_bound(taylor, radius);
    return out;
}

HolderOutcome holder_rational(const RationalFn& f, const ComplexRational& center,
                              const Rational& radius) {
    if (radius.sign() <= 0) throw std::invalid_argument("holder_rational: radius must be > 0");
    auto den_taylor = taylor_coeffs_at(f.den, center);

    // |b(y)| >= |b(center)| - sum_{i>=1} |b_i| r^i must certify positivity
    Rational b0_low = mod_lower(den_taylor[0]);
    Rational tail(0);
    {
        Rational rpow = radius;
        for (size_t i = 1; i < den_taylor.size(); ++i) {
            tail += mod_upper(den_taylor[i]) * rpow;
            rpow *= radius;
        }
    }
    Rational min_b = b0_low - tail;
    if (min_b.sign() <= 0) {
        HolderOutcome fail;
        fail.status = HolderStatus::DomainFailure;
        fail.detail = "denominator not certified nonzero on the disk";
        return fail;
    }

    auto num_taylor = taylor_coeffs_at(f.num, center);
    Rational max_a = value_triangle_bound(num_taylor, radius);
    Rational max_da = derivative_triangle_bound(num_taylor, radius);
    Rational max_db = derivative_triangle_bound(den_taylor, radius);

    HolderOutcome out;
    out.info.exponent = Rational(1);
    out.info.constant = max_da / min_b + max_a * max_db / (min_b * min_b);
    return out;
}

HolderProvider holder_power_abs(unsigned r) {
    if (r < 1) throw std::invalid_argument("holder_power_abs: r must be >= 1");
    return [r](const EvalFunction&, const ComplexRational&, const Rational&) {
        HolderOutcome out;
        out.info.exponent = Rational(1, static_cast<long>(r));
        out.info.constant = Rational(1);
        return out;
    };
}

HolderProvider default_provider(const EvalFunction& f) {
    if (f.is_polynomial()) {
        return [](const EvalFunction& fn, const ComplexRational& c, const Rational& r) {
            return holder_polynomial(std::get<UniPoly>(fn.payload()), c, r);
        };
    }
    if (f.is_rational()) {
        return [](const EvalFunction& fn, const ComplexRational& c, const Rational& r) {
            return holder_rational(std::get<RationalFn>(fn.payload()), c, r);
        };
    }
    if (f.is_power_abs()) return holder_power_abs(std::get<PowerAbs>(f.payload()).r);
    return std::get<CustomFunction>(f.payload()).provider;
}

}  // namespace certival
