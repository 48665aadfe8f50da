#include "certival/bipoly.hpp"

namespace certival {

BiPoly::BiPoly(std::vector<std::vector<Rational>> grid) : grid_(std::move(grid)) { trim(); }

void BiPoly::trim() {
    for (auto& row : grid_)
        while (!row.empty() && row.back().is_zero()) row.pop_back();
    while (!grid_.empty() && grid_.back().empty()) grid_.pop_back();
}

Rational BiPoly::coeff(size_t i, size_t j) const {
    if (i >= grid_.size() || j >= grid_[i].size()) return Rational(0);
    return grid_[i][j];
}

Rational BiPoly::eval(const Rational& x, const Rational& y) const {
    Rational acc(0);
    for (size_t i = grid_.size(); i-- > 0;) {
        Rational inner(0);
        for (size_t j = grid_[i].size(); j-- > 0;) inner = inner * y + grid_[i][j];
        acc = acc * x + inner;
    }
    return acc;
}

RInterval BiPoly::interval_eval(const RInterval& x, const RInterval& y) const {
    RInterval acc{Rational(0)};
    for (size_t i = grid_.size(); i-- > 0;) {
        RInterval inner{Rational(0)};
        for (size_t j = grid_[i].size(); j-- > 0;) inner = inner * y + RInterval(grid_[i][j]);
        acc = acc * x + inner;
    }
    return acc;
}

BiPoly BiPoly::dx() const {
    if (grid_.size() <= 1) return BiPoly();
    std::vector<std::vector<Rational>> g(grid_.size() - 1);
    for (size_t i = 1; i < grid_.size(); ++i) {
        g[i - 1] = grid_[i];
        for (auto& c : g[i - 1]) c *= Rational(static_cast<long>(i));
    }
    return BiPoly(std::move(g));
}

BiPoly BiPoly::dy() const {
    std::vector<std::vector<Rational>> g(grid_.size());
    for (size_t i = 0; i < grid_.size(); ++i) {
        if (grid_[i].size() <= 1) continue;
        g[i].resize(grid_[i].size() - 1);
        for (size_t j = 1; j < grid_[i].size(); ++j)
            g[i][j - 1] = grid_[i][j] * Rational(static_cast<long>(j));
    }
    return BiPoly(std::move(g));
}

UniPoly BiPoly::at_x(const Rational& v) const {
    std::vector<Rational> out;
    for (size_t i = 0; i < grid_.size(); ++i) {
        Rational xv = v.pow_int(static_cast<long>(i));
        for (size_t j = 0; j < grid_[i].size(); ++j) {
            if (out.size() <= j) out.resize(j + 1, Rational(0));
            out[j] += grid_[i][j] * xv;
        }
    }
    return UniPoly(std::move(out));
}

UniPoly BiPoly::at_y(const Rational& v) const {
    std::vector<Rational> out(grid_.size(), Rational(0));
    for (size_t i = 0; i < grid_.size(); ++i) {
        Rational acc(0);
        for (size_t j = grid_[i].size(); j-- > 0;) acc = acc * v + grid_[i][j];
        out[i] = acc;
    }
    return UniPoly(std::move(out));
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    std::vector<std::vector<Rational>> g(std::max(grid_.size(), o.grid_.size()));
    for (size_t i = 0; i < g.size(); ++i) {
        size_t n = std::max(i < grid_.size() ? grid_[i].size() : 0,
                            i < o.grid_.size() ? o.grid_[i].size() : 0);
        g[i].assign(n, Rational(0));
        for (size_t j = 0; j < n; ++j) g[i][j] = coeff(i, j) + o.coeff(i, j);
    }
    return BiPoly(std::move(g));
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (o * Rational(-1)); }

BiPoly BiPoly::operator*(const Rational& s) const {
    auto g = grid_;
    for (auto& row : g)
        for (auto& c : row) c *= s;
    return BiPoly(std::move(g));
}

BiPolyPair real_imag_parts(const UniPoly& p) {
    // iteratively build Re/Im grids of (x+iy)^k and accumulate
    int d = p.degree();
    auto make = [&](int) { return std::vector<std::vector<Rational>>(); };
    (void)make;
    std::vector<std::vector<Rational>> re_acc, im_acc;
    // current power grids
    std::vector<std::vector<Rational>> rk{{Rational(1)}}, ik;  // (x+iy)^0 = 1

    auto add_scaled = [](std::vector<std::vector<Rational>>& acc,
                         const std::vector<std::vector<Rational>>& g, const Rational& s) {
        if (s.is_zero()) return;
        if (acc.size() < g.size()) acc.resize(g.size());
        for (size_t i = 0; i < g.size(); ++i) {
            if (acc[i].size() < g[i].size()) acc[i].resize(g[i].size(), Rational(0));
            for (size_t j = 0; j < g[i].size(); ++j) acc[i][j] += g[i][j] * s;
        }
    };
    auto shift_x = [](const std::vector<std::vector<Rational>>& g) {
        std::vector<std::vector<Rational>> out(g.size() + 1);
        for (size_t i = 0; i < g.size(); ++i) out[i + 1] = g[i];
        return out;
    };
    auto shift_y = [](const std::vector<std::vector<Rational>>& g) {
        std::vector<std::vector<Rational>> out(g.size());
        for (size_t i = 0; i < g.size(); ++i) {
            if (g[i].empty()) continue;
            out[i].resize(g[i].size() + 1, Rational(0));
            for (size_t j = 0; j < g[i].size(); ++j) out[i][j + 1] = g[i][j];
        }
        return out;
    };
    auto minus = [](std::vector<std::vector<Rational>> g) {
        for (auto& row : g)
            for (auto& c : row) c = -c;
        return g;
    };
    auto plus = [&add_scaled](std::vector<std::vector<Rational>> a,
                              const std::vector<std::vector<Rational>>& b) {
        add_scaled(a, b, Rational(1));
        return a;
    };

    for (int k = 0; k <= d; ++k) {
        Rational ck = p.coeff(static_cast<size_t>(k));
        add_scaled(re_acc, rk, ck);
        add_scaled(im_acc, ik, ck);
        if (k < d) {
            // (r + i*s)(x + iy) = (x r - y s) + i (y r + x s)
            auto next_r = plus(shift_x(rk), minus(shift_y(ik)));
            auto next_i = plus(shift_y(rk), shift_x(ik));
            rk = std::move(next_r);
            ik = std::move(next_i);
        }
    }
    return {BiPoly(std::move(re_acc)), BiPoly(std::move(im_acc))};
}

CInterval interval_eval(const BiPolyPair& q, const Box& box) {
    if (box.dim() != 2) throw std::invalid_argument("interval_eval: expected 2-dimensional box");
    return {q.re.interval_eval(box[0], box[1]), q.im.interval_eval(box[0], box[1])};
}

}  // namespace certival
