#include "certival/certified_eval.hpp"

#include <algorithm>

namespace certival {

namespace {

// certified upper bound on mu^alpha for alpha = s/q in (0, 1]
Rational pow_alpha_upper(const Rational& mu, const Rational& alpha) {
    long s = static_cast<long>(alpha.numerator().get_si());
    long q = static_cast<long>(alpha.denominator().get_si());
    Rational inner = mu.pow_int(s);
    if (q == 1) return inner;
    Rational tol = inner / Rational(1024) + Rational(1, mpz_class(1) << 64);
    return kth_root_bounds(inner, static_cast<unsigned>(q), tol).upper;
}

}  // namespace

Rational compute_mu(const ErrorBudget& budget, const HolderInfo& info) {
    if (info.constant.sign() < 0) throw std::invalid_argument("compute_mu: negative constant");
    if (info.exponent.sign() <= 0 || info.exponent > Rational(1))
        throw std::invalid_argument("compute_mu: exponent must be in (0, 1]");
    if (budget.gamma.sign() <= 0 || budget.delta.sign() <= 0 || budget.delta >= budget.epsilon)
        throw std::invalid_argument("compute_mu: invalid budget");
    if (info.constant.is_zero()) return budget.gamma;

    // mu <= ((epsilon - delta)/C)^(1/alpha) with alpha = s/q, i.e.
    // mu^s <= ((epsilon - delta)/C)^q; use a certified lower bound on the
    // s-th root so the inequality is preserved exactly
    Rational t = (budget.epsilon - budget.delta) / info.constant;
    long s = static_cast<long>(info.exponent.numerator().get_si());
    long q = static_cast<long>(info.exponent.denominator().get_si());
    Rational tq = t.pow_int(q);
    Rational bound;
    if (s == 1) {
        bound = tq;
    } else {
        Rational tol = tq;
        for (int i = 0; i < 512; ++i) {
            auto b = kth_root_bounds(tq, static_cast<unsigned>(s), tol);
            if (b.lower.sign() > 0) {
                bound = b.lower;
                break;
            }
            tol = tol / Rational(16);
        }
        if (bound.sign() <= 0) throw std::runtime_error("compute_mu: root bound collapsed");
    }
    Rational mu = min(budget.gamma, bound);
    // budget identity, exact: delta + C * mu^alpha <= epsilon
    if (!(mu.pow_int(s) <= tq)) throw std::logic_error("compute_mu: budget identity violated");
    return mu;
}

CertifiedValue evaluate_with_error(const EvalFunction& f, const ComplexRational& z,
                                   const Rational& delta) {
    if (delta.sign() <= 0) throw std::invalid_argument("evaluate_with_error: delta must be > 0");
    if (auto* p = std::get_if<UniPoly>(&f.payload())) {
        DecimalString d = to_decimal(eval_exact(*p, z), delta);
        return {d, d.error_bound};
    }
    if (auto* r = std::get_if<RationalFn>(&f.payload())) {
        DecimalString d = to_decimal(r->eval(z), delta);
        return {d, d.error_bound};
    }
    if (auto* pa = std::get_if<PowerAbs>(&f.payload())) {
        auto b = kth_root_bounds(z.norm(), 2 * pa->r, delta / Rational(2));
        ComplexRational mid((b.lower + b.upper) / Rational(2));
        Rational enc_err = (b.upper - b.lower) / Rational(2);
        DecimalString d = to_decimal(mid, delta / Rational(2));
        return {d, enc_err + d.error_bound};
    }
    const auto& custom = std::get<CustomFunction>(f.payload());
    ApproxValue av = custom.evaluator(z, delta / Rational(2));
    DecimalString d = to_decimal(av.value, delta / Rational(2));
    return {d, av.error + d.error_bound};
}

RootEvaluator::RootEvaluator(RootRefiner& refiner, const Rational& epsilon, const EvalOptions& opts)
    : refiner_(refiner), opts_(opts) {
    if (epsilon.sign() <= 0) throw std::invalid_argument("RootEvaluator: epsilon must be > 0");
    budget_.epsilon = epsilon;
    budget_.delta = epsilon * opts.delta_factor;
    budget_.gamma = epsilon / Rational(2);
    budget_.mu = Rational(0);
}

std::vector<RootEvaluator::Result> RootEvaluator::run(const std::vector<EvalFunction>& fs,
                                                      const std::vector<HolderProvider>& providers) {
    if (!providers.empty() && providers.size() != 1 && providers.size() != fs.size())
        throw std::invalid_argument("RootEvaluator: provider list must broadcast or match");
    auto provider_for = [&](size_t i) -> HolderProvider {
        if (providers.empty()) return default_provider(fs[i]);
        return providers.size() == 1 ? providers[0] : providers[i];
    };

    // gamma-shrinking loop: find a disk on which every function has
    // certified Hölder data
    std::vector<HolderInfo> infos(fs.size());
    ComplexRational x_star;
    bool settled = false;
    for (unsigned attempt = 0; attempt <= opts_.shrink_cap; ++attempt) {
        refiner_.refine_to(budget_.gamma / Rational(2));
        x_star = refiner_.midpoint();
        bool ok = true;
        for (size_t i = 0; i < fs.size(); ++i) {
            HolderOutcome outcome = provider_for(i)(fs[i], x_star, Rational(2) * budget_.gamma);
            if (!outcome.ok()) {
                ok = false;
                break;
            }
            infos[i] = outcome.info;
        }
        if (ok) {
            settled = true;
            break;
        }
        budget_.gamma = budget_.gamma / Rational(2);
    }
    if (!settled)
        throw ShrinkLoopExhausted(
            "Hölder disk search exhausted; a function is likely undefined at a root");

    budget_.mu = budget_.gamma;
    for (const auto& info : infos) budget_.mu = min(budget_.mu, compute_mu(budget_, info));

    // final refinement; tightening beyond mu only strengthens the certificate
    Rational mu_tight = budget_.mu / Rational::pow2(static_cast<long>(opts_.extra_refine_bits));
    refiner_.refine_to(mu_tight / Rational(2));
    ComplexRational z_star = refiner_.midpoint();

    std::vector<Result> results;
    results.reserve(fs.size());
    for (size_t i = 0; i < fs.size(); ++i) {
        Result res;
        res.z_star = z_star;
        Rational displacement(0);
        if (!fs.empty() && !infos[i].constant.is_zero()) {
            Rational ub = infos[i].constant * pow_alpha_upper(budget_.mu, infos[i].exponent);
            displacement = min(ub, budget_.epsilon - budget_.delta);
        }
        if (auto* p = std::get_if<UniPoly>(&fs[i].payload())) {
            ComplexRational v = eval_exact(*p, z_star);
            res.exact = v;
            res.approx = {v, displacement};
        } else if (auto* r = std::get_if<RationalFn>(&fs[i].payload())) {
            ComplexRational v = r->eval(z_star);
            res.exact = v;
            res.approx = {v, displacement};
        } else if (auto* pa = std::get_if<PowerAbs>(&fs[i].payload())) {
            auto b = kth_root_bounds(z_star.norm(), 2 * pa->r, budget_.delta / Rational(2));
            ComplexRational mid((b.lower + b.upper) / Rational(2));
            Rational enc_err = (b.upper - b.lower) / Rational(2);
            res.approx = {mid, enc_err + displacement};
        } else {
            // leave room inside delta for the decimal rendering of the report
            Rational delta_core = budget_.delta - budget_.epsilon * opts_.print_factor;
            if (delta_core.sign() <= 0) delta_core = budget_.delta / Rational(2);
            const auto& custom = std::get<CustomFunction>(fs[i].payload());
            ApproxValue av = custom.evaluator(z_star, delta_core);
            res.approx = {av.value, av.error + displacement};
        }
        results.push_back(std::move(res));
    }
    return results;
}

EvaluationReport certify_evaluations(const UniPoly& p, const std::vector<EvalFunction>& fs,
                                     const std::vector<HolderProvider>& providers,
                                     const Rational& epsilon, const EvalOptions& opts) {
    if (epsilon.sign() <= 0) throw std::invalid_argument("certify_evaluations: epsilon must be > 0");
    if (p.degree() < 1) throw std::invalid_argument("certify_evaluations: degree must be >= 1");

    struct Entry {
        std::unique_ptr<RootRefiner> refiner;
        unsigned multiplicity;
        bool is_real;
        std::vector<RootEvaluator::Result> results;
    };
    std::vector<Entry> entries;
    for (const auto& part : squarefree_factorization(p).factors) {
        for (auto& root : isolate_complex_roots(part.factor)) {
            Entry e;
            e.multiplicity = part.multiplicity;
            e.is_real = root.is_real;
            e.refiner = std::make_unique<RootRefiner>(part.factor, root);
            entries.push_back(std::move(e));
        }
    }

    Rational delta_print = epsilon * opts.print_factor;
    for (auto& e : entries) {
        RootEvaluator evaluator(*e.refiner, epsilon, opts);
        e.results = evaluator.run(fs, providers);
        if (e.results.empty()) e.refiner->refine_to(epsilon / Rational(8));
    }

    // the final tiny boxes order identically to the roots themselves
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        ComplexRational za = a.refiner->midpoint();
        ComplexRational zb = b.refiner->midpoint();
        if (za.re() != zb.re()) return za.re() < zb.re();
        return za.im() < zb.im();
    });

    EvaluationReport report;
    report.evaluations.assign(fs.size(), {});
    for (auto& e : entries) {
        RootRecord rec;
        rec.approx = e.refiner->midpoint();
        rec.error = min(epsilon, e.refiner->error_radius());
        rec.multiplicity = e.multiplicity;
        rec.is_real = e.is_real;
        rec.box = e.refiner->root().box;
        report.roots.push_back(std::move(rec));
        for (size_t i = 0; i < fs.size(); ++i) {
            const auto& res = e.results[i];
            CertifiedValue cv;
            if (res.exact) {
                cv.value = to_decimal(*res.exact, delta_print);
                cv.error_bound = min(epsilon, cv.value.error_bound + res.approx.error);
            } else {
                cv.value = to_decimal(res.approx.value, delta_print);
                cv.error_bound = min(epsilon, cv.value.error_bound + res.approx.error);
            }
            report.evaluations[i].push_back(std::move(cv));
        }
    }
    return report;
}

}  // namespace certival
