#include "certival/decimal.hpp"

#include <stdexcept>

namespace certival {

namespace {

// nearest multiple of 10^-places, ties away from zero
Rational round_places(const Rational& r, long places, mpz_class* scaled_out) {
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(places));
    Rational scaled = r * Rational(p10);
    // round half away from zero: sign * floor(|x| + 1/2)
    Rational half(1, 2);
    mpz_class n = (abs(scaled) + half).floor();
    if (r.sign() < 0) n = -n;
    *scaled_out = n;
    return Rational(n, p10);
}

std::string format_scaled(const mpz_class& n, long places) {
    mpz_class a = ::abs(n);
    std::string digits = a.get_str();
    std::string out;
    if (places == 0) {
        out = digits;
    } else {
        if (static_cast<long>(digits.size()) <= places)
            digits.insert(0, static_cast<size_t>(places) - digits.size() + 1, '0');
        out = digits.substr(0, digits.size() - static_cast<size_t>(places)) + "." +
              digits.substr(digits.size() - static_cast<size_t>(places));
    }
    if (sgn(n) < 0) out.insert(0, 1, '-');
    return out;
}

}  // namespace

std::string decimal_of_rational(const Rational& r, const Rational& delta, Rational* err_out) {
    if (delta.sign() <= 0) throw std::invalid_argument("decimal_of_rational: delta must be > 0");
    for (long places = 0;; ++places) {
        mpz_class scaled;
        Rational rounded = round_places(r, places, &scaled);
        Rational err = abs(r - rounded);
        if (err <= delta) {
            if (err_out) *err_out = err;
            return format_scaled(scaled, places);
        }
        // guaranteed to succeed once the half-grid is below delta
    }
}

DecimalString to_decimal(const ComplexRational& z, const Rational& delta) {
    DecimalString out;
    Rational err_re(0), err_im(0);
    out.re = decimal_of_rational(z.re(), delta, &err_re);
    out.im = decimal_of_rational(z.im(), delta, &err_im);
    out.error_bound = max(err_re, err_im);
    return out;
}

Rational parse_decimal(const std::string& text) { return Rational::from_string(text); }

}  // namespace certival
