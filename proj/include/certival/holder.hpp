#ifndef CERTIVAL_HOLDER_HPP
#define CERTIVAL_HOLDER_HPP

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "certival/polynomial.hpp"

namespace certival {

/// Local Hölder data for a function on a disk B(center, radius):
/// |f(u) - f(v)| <= constant * |u - v|^exponent for u, v in the disk.
struct HolderInfo {
    Rational exponent;  // in (0, 1]
    Rational constant;  // >= 0
    bool all_defined = true;
    std::vector<ComplexRational> undefined_points;  // known gaps inside the disk
};

enum class HolderStatus {
    Ok,
    /// The function could not be certified to be defined on the disk; the
    /// caller is expected to shrink the radius and retry.
    DomainFailure,
};

struct HolderOutcome {
    HolderStatus status = HolderStatus::Ok;
    HolderInfo info;
    std::string detail;

    bool ok() const { return status == HolderStatus::Ok; }
};

/// Reduced ratio of two polynomials; denominator is nonzero and shares no
/// factor with the numerator.
struct RationalFn {
    UniPoly num;
    UniPoly den;

    RationalFn(UniPoly n, UniPoly d);
    ComplexRational eval(const ComplexRational& z) const;  // throws on poles
};

/// |x|^(1/r)
struct PowerAbs {
    unsigned r = 1;
};

/// Approximate value with a certified error radius.
struct ApproxValue {
    ComplexRational value;
    Rational error;
};

class EvalFunction;

/// Provider signature mirrors the extension interface: given the function, a
/// disk center and a radius, produce Hölder data valid on that disk.
using HolderProvider =
    std::function<HolderOutcome(const EvalFunction&, const ComplexRational&, const Rational&)>;
/// Custom evaluator contract: |returned.value - f(z)| <= delta, with
/// returned.error <= delta.
using CustomEvaluator = std::function<ApproxValue(const ComplexRational&, const Rational&)>;

struct CustomFunction {
    std::string name;
    HolderProvider provider;
    CustomEvaluator evaluator;
};

/// A function that can be certifiably evaluated at polynomial roots.
class EvalFunction {
public:
    using Payload = std::variant<UniPoly, RationalFn, PowerAbs, CustomFunction>;

    EvalFunction(UniPoly p) : payload_(std::move(p)) {}
    EvalFunction(RationalFn f) : payload_(std::move(f)) {}
    EvalFunction(PowerAbs p) : payload_(p) {}
    EvalFunction(CustomFunction c) : payload_(std::move(c)) {}

    const Payload& payload() const { return payload_; }
    bool is_polynomial() const { return std::holds_alternative<UniPoly>(payload_); }
    bool is_rational() const { return std::holds_alternative<RationalFn>(payload_); }
    bool is_power_abs() const { return std::holds_alternative<PowerAbs>(payload_); }
    bool is_custom() const { return std::holds_alternative<CustomFunction>(payload_); }
    std::string describe() const;

private:
    Payload payload_;
};

/// Lipschitz data for a polynomial on B(center, radius) via the Taylor
/// triangle-inequality bound.
HolderOutcome holder_polynomial(const UniPoly& f, const ComplexRational& center,
                                const Rational& radius);

/// Lipschitz data for a rational function; fails with DomainFailure when the
/// denominator cannot be bounded away from zero on the disk.
HolderOutcome holder_rational(const RationalFn& f, const ComplexRational& center,
                              const Rational& radius);

/// Constant provider for |x|^(1/r): exponent 1/r, constant 1, every disk.
HolderProvider holder_power_abs(unsigned r);

/// Built-in provider choice matching the function's own class.
HolderProvider default_provider(const EvalFunction& f);

}  // namespace certival

#endif
