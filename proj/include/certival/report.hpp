#ifndef CERTIVAL_REPORT_HPP
#define CERTIVAL_REPORT_HPP

#include <json.hpp>
#include <string>

#include "certival/certified_eval.hpp"
#include "certival/nonnegativity.hpp"

namespace certival {

/// Stable JSON encoding of the evaluation report: exact rationals as
/// num/den strings plus decimal renderings with explicit error bounds.
nlohmann::json report_to_json(const EvaluationReport& report,
                              const std::vector<EvalFunction>& fs, const Rational& epsilon);

std::string report_to_text(const EvaluationReport& report, const std::vector<EvalFunction>& fs,
                           const Rational& epsilon);

nlohmann::json verdict_to_json(const SignVerdict& verdict);
std::string verdict_to_text(const SignVerdict& verdict);

nlohmann::json rational_to_json(const Rational& r);

}  // namespace certival

#endif
