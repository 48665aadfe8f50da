#include "certival/report.hpp"

#include <sstream>

namespace certival {

nlohmann::json rational_to_json(const Rational& r) {
    return {{"num", r.numerator().get_str()}, {"den", r.denominator().get_str()}};
}

nlohmann::json report_to_json(const EvaluationReport& report,
                              const std::vector<EvalFunction>& fs, const Rational& epsilon) {
    Rational delta_print = epsilon / Rational(100);
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : report.roots) {
        DecimalString dec = to_decimal(r.approx, delta_print);
        nlohmann::json box = nlohmann::json::array();
        for (size_t dimension = 0; dimension < r.box.dim(); ++dimension)
            box.push_back({{"lo", rational_to_json(r.box[dimension].lo())},
                           {"hi", rational_to_json(r.box[dimension].hi())}});
        roots.push_back({{"re", rational_to_json(r.approx.re())},
                         {"im", rational_to_json(r.approx.im())},
                         {"decimal", {{"re", dec.re}, {"im", dec.im}}},
                         {"multiplicity", r.multiplicity},
                         {"is_real", r.is_real},
                         {"error", rational_to_json(r.error)},
                         {"box", box}});
    }
    nlohmann::json evals = nlohmann::json::array();
    for (const auto& row : report.evaluations) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const auto& cv : row) {
            jrow.push_back({{"re", cv.value.re},
                            {"im", cv.value.im},
                            {"error", rational_to_json(cv.error_bound)}});
        }
        evals.push_back(std::move(jrow));
    }
    nlohmann::json functions = nlohmann::json::array();
    for (const auto& f : fs) functions.push_back(f.describe());
    return {{"epsilon", rational_to_json(epsilon)},
            {"functions", functions},
            {"roots", roots},
            {"evaluations", evals}};
}

namespace {

std::string complex_text(const std::string& re, const std::string& im) {
    if (im == "0") return re;
    std::string im_abs = im;
    bool neg = !im_abs.empty() && im_abs[0] == '-';
    if (neg) im_abs.erase(0, 1);
    return re + (neg ? " - " : " + ") + im_abs + "i";
}

}  // namespace

std::string report_to_text(const EvaluationReport& report, const std::vector<EvalFunction>& fs,
                           const Rational& epsilon) {
    Rational delta_print = epsilon / Rational(100);
    std::ostringstream os;
    os << "roots (" << report.roots.size() << "), certified within " << epsilon.to_string()
       << ":\n";
    bool roots_only = report.evaluations.empty();
    for (size_t j = 0; j < report.roots.size(); ++j) {
        const auto& r = report.roots[j];
        DecimalString dec = to_decimal(r.approx, delta_print);
        os << "  [" << j << "] " << complex_text(dec.re, dec.im);
        os << "   exact " << r.approx.re().to_string();
        if (!r.approx.im().is_zero()) os << " + (" << r.approx.im().to_string() << ")*i";
        if (r.multiplicity > 1) os << "   multiplicity " << r.multiplicity;
        os << "\n";
        if (roots_only) os << "      box " << r.box.to_string() << "\n";
    }
    for (size_t i = 0; i < report.evaluations.size(); ++i) {
        os << "evaluations of " << fs[i].describe() << ":\n";
        for (size_t j = 0; j < report.evaluations[i].size(); ++j) {
            const auto& cv = report.evaluations[i][j];
            os << "  [" << j << "] " << complex_text(cv.value.re, cv.value.im) << "\n";
        }
    }
    return os.str();
}

nlohmann::json verdict_to_json(const SignVerdict& verdict) {
    nlohmann::json v;
    switch (verdict.kind) {
        case SignVerdict::Kind::AllNonnegative:
            v["outcome"] = "all_nonnegative";
            v["n0_star"] = verdict.n0_star;
            break;
        case SignVerdict::Kind::Counterexample:
            v["outcome"] = "counterexample";
            v["n0"] = verdict.n0;
            v["value"] = rational_to_json(verdict.value);
            break;
        case SignVerdict::Kind::NotApplicable:
            v["outcome"] = "not_applicable";
            v["reason"] = verdict.reason;
            break;
    }
    return {{"verdict", v}};
}

std::string verdict_to_text(const SignVerdict& verdict) {
    std::ostringstream os;
    switch (verdict.kind) {
        case SignVerdict::Kind::AllNonnegative:
            os << "AllNonnegative: every Taylor coefficient is non-negative "
               << "(coefficients 0.." << verdict.n0_star
               << " checked exactly, tail certified positive)\n";
            break;
        case SignVerdict::Kind::Counterexample:
            os << "Counterexample: coefficient R_" << verdict.n0 << " = " << verdict.value.to_string()
               << " is negative\n";
            break;
        case SignVerdict::Kind::NotApplicable:
            os << "NotApplicable: " << verdict.reason << "\n";
            break;
    }
    return os.str();
}

}  // namespace certival
