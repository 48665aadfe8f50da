#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "certival/bench.hpp"
#include "certival/certified_eval.hpp"
#include "certival/nonnegativity.hpp"
#include "certival/parse.hpp"
#include "certival/report.hpp"

namespace {

using namespace certival;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotApplicable = 2;
constexpr int kExitCap = 3;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct FunctionSpec {
    std::vector<EvalFunction> fs;
    std::vector<HolderProvider> providers;
};

// --functions entries paired with --holder entries (single holder broadcasts);
// holder "powerabs:r" replaces the slot's function by |x|^(1/r)
FunctionSpec build_functions(const std::vector<std::string>& exprs,
                             const std::vector<std::string>& holders) {
    FunctionSpec spec;
    if (!holders.empty() && holders.size() != 1 && holders.size() != exprs.size())
        throw std::invalid_argument("--holder must give one entry or one per function");
    for (size_t i = 0; i < exprs.size(); ++i) {
        std::string holder = holders.empty() ? "" : (holders.size() == 1 ? holders[0] : holders[i]);
        if (holder.rfind("powerabs:", 0) == 0) {
            unsigned r = static_cast<unsigned>(std::stoul(holder.substr(9)));
            std::string trimmed = exprs[i];
            trimmed.erase(0, trimmed.find_first_not_of(" \t"));
            trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
            if (trimmed != "x")
                throw std::invalid_argument("powerabs holder applies to the function 'x' only");
            EvalFunction f{PowerAbs{r}};
            spec.providers.push_back(holder_power_abs(r));
            spec.fs.push_back(std::move(f));
            continue;
        }
        PolyExpr expr = parse_polynomial(exprs[i]);
        EvalFunction f = expr.as_function();
        if (holder == "poly" || holder == "polynomial") {
            if (!f.is_polynomial())
                throw std::invalid_argument("holder 'poly' requires a polynomial function");
        } else if (holder == "rational") {
            if (f.is_polynomial()) f = EvalFunction(RationalFn(expr.num, expr.den));
        } else if (!holder.empty()) {
            throw std::invalid_argument("unknown holder '" + holder + "'");
        }
        spec.providers.push_back(default_provider(f));
        spec.fs.push_back(std::move(f));
    }
    return spec;
}

int not_applicable_exit(const SignVerdict& v) {
    if (v.reason.find("undecided") != std::string::npos ||
        v.reason.find("termination conditions not met") != std::string::npos)
        return kExitCap;
    return kExitNotApplicable;
}

int run(int argc, char** argv) {
    CLI::App app{"certified evaluations of Hölder continuous functions at polynomial roots"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --output after the subcommand name

    std::string output = "text";
    app.add_option("--output", output, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // roots
    auto* cmd_roots = app.add_subcommand("roots", "isolate and refine all complex roots");
    std::string roots_poly;
    std::string roots_eps = "1e-14";
    cmd_roots->add_option("polynomial", roots_poly)->required();
    cmd_roots->add_option("--epsilon", roots_eps, "certified root accuracy");

    // eval
    auto* cmd_eval = app.add_subcommand("eval", "certified evaluations at the roots");
    std::string eval_poly, eval_functions, eval_holders;
    std::string eval_eps = "1e-14";
    cmd_eval->add_option("polynomial", eval_poly)->required();
    cmd_eval->add_option("--functions", eval_functions, "comma-separated expressions")->required();
    cmd_eval->add_option("--holder", eval_holders, "poly|rational|powerabs:r per function");
    cmd_eval->add_option("--epsilon", eval_eps, "certified accuracy");

    // critvals
    auto* cmd_crit = app.add_subcommand("critvals", "certified critical values of a polynomial");
    std::string crit_poly;
    std::string crit_eps = "1e-14";
    cmd_crit->add_option("polynomial", crit_poly)->required();
    cmd_crit->add_option("--epsilon", crit_eps, "certified accuracy");

    // nonneg
    auto* cmd_nonneg =
        app.add_subcommand("nonneg", "certify sign pattern of Taylor coefficients of f/q");
    std::vector<std::string> nonneg_args;
    cmd_nonneg->add_option("expression", nonneg_args,
                           "rational function, or numerator and denominator")
        ->expected(1, 2);

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "timing sweeps on random inputs");
    std::string bench_sweep = "d", bench_range, bench_eps = "1e-14";
    unsigned bench_trials = 50;
    long bench_d = 5, bench_D = 5, bench_n = 1;
    uint64_t bench_seed = 0;
    bool seed_set = false;
    cmd_bench->add_option("--sweep", bench_sweep, "d|D|n|eps")
        ->check(CLI::IsMember({"d", "D", "n", "eps"}));
    cmd_bench->add_option("--range", bench_range, "sweep range a..b");
    cmd_bench->add_option("--trials", bench_trials, "trials per sweep point");
    cmd_bench->add_option("--seed", bench_seed, "random seed (required)")
        ->each([&](const std::string&) { seed_set = true; });
    cmd_bench->add_option("--degree", bench_d, "fixed degree d");
    cmd_bench->add_option("--eval-degree", bench_D, "fixed evaluation degree D");
    cmd_bench->add_option("--functions-count", bench_n, "fixed function count n");
    cmd_bench->add_option("--epsilon", bench_eps, "fixed accuracy");

    CLI11_PARSE(app, argc, argv);
    bool json = output == "json";

    if (cmd_roots->parsed()) {
        Rational eps = Rational::from_string(roots_eps);
        UniPoly p = parse_polynomial(roots_poly).as_polynomial();
        EvaluationReport report = certify_evaluations(p, {}, {}, eps);
        std::cout << (json ? report_to_json(report, {}, eps).dump(2) + "\n"
                           : report_to_text(report, {}, eps));
        return kExitOk;
    }

    if (cmd_eval->parsed()) {
        Rational eps = Rational::from_string(eval_eps);
        UniPoly p = parse_polynomial(eval_poly).as_polynomial();
        FunctionSpec spec = build_functions(split_list(eval_functions),
                                            eval_holders.empty() ? std::vector<std::string>{}
                                                                 : split_list(eval_holders));
        EvaluationReport report = certify_evaluations(p, spec.fs, spec.providers, eps);
        std::cout << (json ? report_to_json(report, spec.fs, eps).dump(2) + "\n"
                           : report_to_text(report, spec.fs, eps));
        return kExitOk;
    }

    if (cmd_crit->parsed()) {
        Rational eps = Rational::from_string(crit_eps);
        UniPoly f = parse_polynomial(crit_poly).as_polynomial();
        UniPoly df = f.derivative();
        if (df.degree() < 1) throw std::invalid_argument("critvals: derivative is constant");
        std::vector<EvalFunction> fs{EvalFunction(f)};
        std::vector<HolderProvider> providers{default_provider(fs[0])};
        EvaluationReport report = certify_evaluations(df, fs, providers, eps);

        // certified min/max over the real critical points
        bool have = false;
        size_t min_j = 0, max_j = 0;
        Rational min_v, max_v;
        for (size_t j = 0; j < report.roots.size(); ++j) {
            if (!report.roots[j].is_real) continue;
            Rational v = parse_decimal(report.evaluations[0][j].value.re);
            if (!have || v < min_v) {
                min_v = v;
                min_j = j;
            }
            if (!have || v > max_v) {
                max_v = v;
                max_j = j;
            }
            have = true;
        }
        if (!have) throw std::invalid_argument("critvals: no real critical points");
        if (json) {
            nlohmann::json out = report_to_json(report, fs, eps);
            out["critical_values"] = {
                {"min",
                 {{"value", report.evaluations[0][min_j].value.re}, {"root_index", min_j}}},
                {"max",
                 {{"value", report.evaluations[0][max_j].value.re}, {"root_index", max_j}}},
            };
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << report_to_text(report, fs, eps);
            std::cout << "minimum critical value: " << report.evaluations[0][min_j].value.re
                      << " (error <= " << eps.to_string() << ")\n";
            std::cout << "maximum critical value: " << report.evaluations[0][max_j].value.re
                      << " (error <= " << eps.to_string() << ")\n";
        }
        return kExitOk;
    }

    if (cmd_nonneg->parsed()) {
        UniPoly f, q;
        if (nonneg_args.size() == 2) {
            f = parse_polynomial(nonneg_args[0]).as_polynomial();
            q = parse_polynomial(nonneg_args[1]).as_polynomial();
        } else {
            PolyExpr expr = parse_polynomial(nonneg_args[0]);
            f = expr.num;
            q = expr.den;
            if (q.degree() == 0) {
                f = f * (Rational(1) / q.coeff(0));
                q = UniPoly::constant(Rational(1));
            }
        }
        SignVerdict verdict = certify_nonnegativity(f, q);
        std::cout << (json ? verdict_to_json(verdict).dump(2) + "\n" : verdict_to_text(verdict));
        if (verdict.kind == SignVerdict::Kind::NotApplicable) return not_applicable_exit(verdict);
        return kExitOk;
    }

    if (cmd_bench->parsed()) {
        if (!seed_set) throw std::invalid_argument("bench: --seed is required for reproducibility");
        BenchConfig config;
        config.seed = bench_seed;
        config.trials = bench_trials;
        config.degree = bench_d;
        config.eval_degree = bench_D;
        config.function_count = bench_n;
        config.epsilon = Rational::from_string(bench_eps);
        if (bench_sweep == "d")
            config.sweep = BenchConfig::Sweep::Degree;
        else if (bench_sweep == "D")
            config.sweep = BenchConfig::Sweep::EvalDegree;
        else if (bench_sweep == "n")
            config.sweep = BenchConfig::Sweep::FunctionCount;
        else
            config.sweep = BenchConfig::Sweep::Epsilon;
        if (config.sweep == BenchConfig::Sweep::Epsilon) {
            config.range_lo = 0;
            config.range_hi = 25;
        }
        if (!bench_range.empty()) {
            auto dots = bench_range.find("..");
            if (dots == std::string::npos)
                throw std::invalid_argument("bench: --range must look like a..b");
            config.range_lo = std::stol(bench_range.substr(0, dots));
            config.range_hi = std::stol(bench_range.substr(dots + 2));
        }
        std::cout << bench_csv(run_bench(config));
        return kExitOk;
    }
    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const certival::ShrinkLoopExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const certival::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitCap;
    }
}
