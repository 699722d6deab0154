#include "zetaglue/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zetaglue {

namespace {

int v_weight(const SymbolTerm& t) {
    int w = 0;
    for (int d : t.v_factors) w += d;
    return w;
}

// canonical order: (total V-derivative weight, xi_power, root_power, factors)
bool term_less(const SymbolTerm& a, const SymbolTerm& b) {
    int wa = v_weight(a), wb = v_weight(b);
    if (wa != wb) return wa < wb;
    if (a.xi_power != b.xi_power) return a.xi_power < b.xi_power;
    if (a.root_power != b.root_power) return a.root_power < b.root_power;
    return a.v_factors < b.v_factors;
}

bool same_key(const SymbolTerm& a, const SymbolTerm& b) {
    return a.xi_power == b.xi_power && a.root_power == b.root_power && a.v_factors == b.v_factors;
}

}  // namespace

void canonicalize(Symbol& s) {
    for (auto& t : s.terms) std::sort(t.v_factors.begin(), t.v_factors.end());
    std::sort(s.terms.begin(), s.terms.end(), term_less);
    std::vector<SymbolTerm> merged;
    for (auto& t : s.terms) {
        if (!merged.empty() && same_key(merged.back(), t))
            merged.back().coeff = merged.back().coeff + t.coeff;
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const SymbolTerm& t) { return t.coeff.is_zero(); });
    s.terms = std::move(merged);
}

Symbol symbol_add(const Symbol& a, const Symbol& b) {
    Symbol out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    canonicalize(out);
    return out;
}

Symbol symbol_mul(const Symbol& a, const Symbol& b) {
    Symbol out;
    for (const auto& x : a.terms)
        for (const auto& y : b.terms) {
            SymbolTerm t;
            t.coeff = x.coeff * y.coeff;
            t.xi_power = x.xi_power + y.xi_power;
            t.root_power = x.root_power + y.root_power;
            t.v_factors = x.v_factors;
            t.v_factors.insert(t.v_factors.end(), y.v_factors.begin(), y.v_factors.end());
            out.terms.push_back(std::move(t));
        }
    canonicalize(out);
    return out;
}

Symbol symbol_scale(const Symbol& a, const GaussianRational& c) {
    Symbol out = a;
    for (auto& t : out.terms) t.coeff = t.coeff * c;
    canonicalize(out);
    return out;
}

Symbol symbol_dxi(const Symbol& a) {
    Symbol out;
    for (const auto& t : a.terms) {
        if (t.xi_power != 0) {
            SymbolTerm d = t;
            d.coeff = d.coeff * Rational(t.xi_power);
            d.xi_power -= 1;
            out.terms.push_back(std::move(d));
        }
        if (t.root_power != 0) {
            // d/dxi (xi^2+t)^{-b/2} = -b xi (xi^2+t)^{-(b+2)/2}
            SymbolTerm d = t;
            d.coeff = d.coeff * Rational(-t.root_power);
            d.xi_power += 1;
            d.root_power += 2;
            out.terms.push_back(std::move(d));
        }
    }
    canonicalize(out);
    return out;
}

Symbol symbol_dy(const Symbol& a) {
    Symbol out;
    const GaussianRational minus_i{Rational(0), Rational(-1)};
    for (const auto& t : a.terms) {
        for (size_t i = 0; i < t.v_factors.size(); ++i) {
            SymbolTerm d = t;
            d.coeff = d.coeff * minus_i;
            d.v_factors[i] += 1;
            out.terms.push_back(std::move(d));
        }
    }
    canonicalize(out);
    return out;
}

SymbolExpansion ricatti_expansion(int depth) {
    if (depth < 1) throw std::invalid_argument("ricatti_expansion: depth must be >= 1");
    SymbolExpansion e;
    Symbol q1;
    q1.terms.push_back({GaussianRational(1), 0, -1, {}});
    e.orders.push_back(q1);

    // cached derivative ladders: dxi[k][w] = d_xi^w q_{1-k}, dy likewise
    std::vector<std::vector<Symbol>> dxi{{q1}}, dy{{q1}};
    auto extend_ladders = [&](int upto_w) {
        for (auto& ladder : dxi)
            while (static_cast<int>(ladder.size()) <= upto_w)
                ladder.push_back(symbol_dxi(ladder.back()));
        for (auto& ladder : dy)
            while (static_cast<int>(ladder.size()) <= upto_w)
                ladder.push_back(symbol_dy(ladder.back()));
    };

    std::vector<Rational> factorial{Rational(1)};
    for (int k = 1; k <= depth; ++k) {
        factorial.push_back(factorial.back() * k);
        extend_ladders(k);
        Symbol rhs;
        if (k == 2) {
            // p_0 = V enters exactly here
            Symbol v;
            v.terms.push_back({GaussianRational(1), 0, 0, {0}});
            rhs = v;
        }
        for (int i = 0; i <= k - 1; ++i)
            for (int j = 0; j <= k - 1; ++j) {
                int w = k - i - j;
                if (w < 0) continue;
                Symbol prod = symbol_mul(dxi[i][w], dy[j][w]);
                prod = symbol_scale(prod, GaussianRational{Rational(-1) / factorial[w], Rational(0)});
                rhs = symbol_add(rhs, prod);
            }
        // q_{1-k} = (2 q_1)^{-1} * rhs: multiply by (1/2) (xi^2+t)^{-1/2}
        Symbol inv2q1;
        inv2q1.terms.push_back({GaussianRational{Rational(1) / 2, Rational(0)}, 0, 1, {}});
        Symbol qk = symbol_mul(rhs, inv2q1);
        for (const auto& t : qk.terms)
            if (t.order() != 1 - k)
                throw std::logic_error("ricatti_expansion: homogeneity violated");
        e.orders.push_back(qk);
        dxi.push_back({qk});
        dy.push_back({qk});
    }
    return e;
}

double TrigPolynomial::derivative(int order, double y) const {
    double out = (order == 0) ? constant : 0.0;
    for (const Mode& m : modes) {
        double a = m.cos_coeff, b = m.sin_coeff;
        for (int d = 0; d < order; ++d) {
            double na = m.k * b, nb = -m.k * a;  // (A cos + B sin)' = kB cos - kA sin
            a = na;
            b = nb;
        }
        out += a * std::cos(m.k * y) + b * std::sin(m.k * y);
    }
    return out;
}

Complex evaluate_symbol(const Symbol& s, const TrigPolynomial& potential, double y, double xi,
                        double t) {
    if (t <= 0.0 && xi == 0.0) throw std::invalid_argument("evaluate_symbol: xi^2 + t must be positive");
    double base = xi * xi + t;
    KahanSum<Complex> acc;
    for (const auto& term : s.terms) {
        double v = 1.0;
        for (int d : term.v_factors) v *= potential.derivative(d, y);
        double mag = std::pow(xi, term.xi_power) * std::pow(base, -0.5 * term.root_power) * v;
        acc.add(term.coeff.to_complex() * mag);
    }
    return acc.value();
}

Complex evaluate_expansion_sum(const SymbolExpansion& e, const TrigPolynomial& potential, double y,
                               double xi, double t) {
    KahanSum<Complex> acc;
    for (const auto& s : e.orders) acc.add(evaluate_symbol(s, potential, y, xi, t));
    return acc.value();
}

std::string symbol_to_string(const Symbol& s) {
    if (s.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : s.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.coeff.re.str();
        if (t.coeff.im != 0) os << (t.coeff.im > 0 ? "+" : "") << t.coeff.im.str() << "i";
        os << ")";
        if (t.xi_power != 0) os << " xi^" << t.xi_power;
        if (t.root_power != 0) os << " (xi^2+t)^(" << -t.root_power << "/2)";
        for (int d : t.v_factors) {
            os << " V";
            for (int j = 0; j < d; ++j) os << "'";
        }
    }
    return os.str();
}

SmoothingReport smoothing_decay_check(double length, double t, double cutoff, int weight_order) {
    if (length <= 0.0 || t <= 0.0)
        throw std::invalid_argument("smoothing_decay_check: length and t must be positive");
    SmoothingReport rep;
    for (double lambda = 0.0; lambda <= cutoff; lambda += 1.0) {
        double mu = std::sqrt(lambda + t);
        double e = std::exp(-2.0 * mu * length);
        double remainder = 2.0 * mu * e / (1.0 - e);  // mu (coth(mu L) - 1)
        double weighted = remainder * std::pow(1.0 + lambda, 0.5 * weight_order);
        rep.rows.push_back({lambda, remainder, weighted});
    }
    size_t arg = 0;
    for (size_t i = 0; i < rep.rows.size(); ++i)
        if (rep.rows[i].weighted > rep.rows[arg].weighted) arg = i;
    rep.sup_lambda = rep.rows[arg].lambda;
    rep.sup_weighted = rep.rows[arg].weighted;
    rep.decreasing_after_sup = true;
    for (size_t i = arg + 1; i + 1 < rep.rows.size(); ++i)
        if (rep.rows[i + 1].weighted > rep.rows[i].weighted) rep.decreasing_after_sup = false;
    return rep;
}

}  // namespace zetaglue
