#include "certival/mpoly.hpp"

#include <stdexcept>

namespace certival {

MPoly MPoly::from_univariate(const UniPoly& p, unsigned var, unsigned nvars) {
    MPoly out(nvars);
    for (int i = 0; i <= p.degree(); ++i) {
        Exps e{0, 0, 0};
        e[var] = static_cast<unsigned>(i);
        out.add_term(e, p.coeff(static_cast<size_t>(i)));
    }
    return out;
}

MPoly MPoly::from_bipoly(const BiPoly& p, unsigned var_x, unsigned var_y, unsigned nvars) {
    MPoly out(nvars);
    for (int i = 0; i <= p.deg_x(); ++i) {
        for (int j = 0; j <= p.deg_y_row(static_cast<size_t>(i)); ++j) {
            Rational c = p.coeff(static_cast<size_t>(i), static_cast<size_t>(j));
            if (c.is_zero()) continue;
            Exps e{0, 0, 0};
            e[var_x] = static_cast<unsigned>(i);
            e[var_y] = static_cast<unsigned>(j);
            out.add_term(e, c);
        }
    }
    return out;
}

MPoly MPoly::constant(const Rational& c, unsigned nvars) {
    MPoly out(nvars);
    out.add_term({0, 0, 0}, c);
    return out;
}

MPoly MPoly::variable(unsigned var, unsigned nvars) {
    MPoly out(nvars);
    Exps e{0, 0, 0};
    e[var] = 1;
    out.add_term(e, Rational(1));
    return out;
}

bool MPoly::depends_on(unsigned var) const {
    for (const auto& [e, c] : terms_)
        if (e[var] > 0) return true;
    return false;
}

unsigned MPoly::degree(unsigned var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

void MPoly::add_term(const Exps& e, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational MPoly::eval(const std::vector<Rational>& point) const {
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (unsigned v = 0; v < nvars_; ++v)
            if (e[v] > 0) t *= point.at(v).pow_int(e[v]);
        acc += t;
    }
    return acc;
}

RInterval MPoly::interval_eval(const Box& box) const {
    // power tables per variable keep repeated monomial powers cheap
    std::vector<std::vector<RInterval>> powers(nvars_);
    for (unsigned v = 0; v < nvars_; ++v) {
        unsigned d = degree(v);
        powers[v].reserve(d + 1);
        for (unsigned i = 0; i <= d; ++i) powers[v].push_back(box[v].pow(i));
    }
    RInterval acc{Rational(0)};
    for (const auto& [e, c] : terms_) {
        RInterval t{c, c};
        for (unsigned v = 0; v < nvars_; ++v)
            if (e[v] > 0) t = t * powers[v][e[v]];
        acc = acc + t;
    }
    return acc;
}

MPoly MPoly::derivative(unsigned var) const {
    MPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exps d = e;
        d[var] -= 1;
        out.add_term(d, c * Rational(static_cast<long>(e[var])));
    }
    return out;
}

std::vector<unsigned> MPoly::support() const {
    std::vector<unsigned> vars;
    for (unsigned v = 0; v < nvars_; ++v)
        if (depends_on(v)) vars.push_back(v);
    return vars;
}

UniPoly MPoly::to_univariate(unsigned var) const {
    std::vector<Rational> c;
    for (const auto& [e, coef] : terms_) {
        for (unsigned v = 0; v < nvars_; ++v)
            if (v != var && e[v] > 0)
                throw std::invalid_argument("MPoly::to_univariate: polynomial is not univariate");
        if (c.size() <= e[var]) c.resize(e[var] + 1, Rational(0));
        c[e[var]] += coef;
    }
    return UniPoly(std::move(c));
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly out(std::max(nvars_, o.nvars_));
    out.terms_ = terms_;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly out(std::max(nvars_, o.nvars_));
    out.terms_ = terms_;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly out(std::max(nvars_, o.nvars_));
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            out.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
    return out;
}

}  // namespace certival
