#include "zetaglue/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zetaglue {

namespace {

void check_grid(const std::vector<double>& r, const std::vector<double>& v) {
    if (r.size() != v.size()) throw std::invalid_argument("extrapolation: size mismatch");
    if (r.size() < 3) throw std::invalid_argument("extrapolation: need at least 3 grid points");
    for (size_t i = 1; i < r.size(); ++i)
        if (r[i] <= r[i - 1]) throw std::invalid_argument("extrapolation: r-grid must increase");
}

}  // namespace

ExtrapolationResult richardson_inverse_r(const std::vector<double>& r,
                                         const std::vector<double>& v) {
    check_grid(r, v);
    const size_t n = r.size();
    std::vector<double> x(n), p(v);
    for (size_t i = 0; i < n; ++i) x[i] = 1.0 / r[i];
    // Neville tableau evaluated at x = 0
    std::vector<double> column_last;
    for (size_t level = 1; level < n; ++level) {
        for (size_t i = 0; i + level < n; ++i) {
            p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
        }
        p.resize(n - level);
        column_last.push_back(p[0]);
    }
    ExtrapolationResult out;
    out.limit = p[0];
    if (column_last.size() >= 2) {
        out.err_estimate = std::abs(column_last.back() - column_last[column_last.size() - 2]);
        out.converged = true;
        // last corrections should shrink; a growing tableau means divergence
        for (size_t i = 1; i + 1 < column_last.size(); ++i) {
            double d0 = std::abs(column_last[i] - column_last[i - 1]);
            double d1 = std::abs(column_last[i + 1] - column_last[i]);
            if (d1 > 4.0 * d0 && d1 > 1e-12) out.converged = false;
        }
    } else {
        out.err_estimate = std::abs(v.back() - out.limit);
        out.converged = true;
    }
    std::ostringstream os;
    os << "richardson(1/r), n=" << n << ", err~" << out.err_estimate;
    out.diagnostics = os.str();
    return out;
}

ExtrapolationResult fit_exp_decay(const std::vector<double>& r, const std::vector<double>& v) {
    check_grid(r, v);
    const size_t n = r.size();
    auto sse_for = [&](double a, double* vinf_out, double* c_out) {
        // linear LSQ in (vinf, c) for the model vinf + c e^{-a r}
        double s1 = static_cast<double>(n), se = 0, see = 0, sv = 0, sve = 0;
        for (size_t i = 0; i < n; ++i) {
            double e = std::exp(-a * r[i]);
            se += e;
            see += e * e;
            sv += v[i];
            sve += v[i] * e;
        }
        double det = s1 * see - se * se;
        double vinf, c;
        if (std::abs(det) < 1e-300) {
            vinf = sv / s1;
            c = 0.0;
        } else {
            vinf = (sv * see - se * sve) / det;
            c = (s1 * sve - se * sv) / det;
        }
        double sse = 0;
        for (size_t i = 0; i < n; ++i) {
            double m = vinf + c * std::exp(-a * r[i]);
            sse += (v[i] - m) * (v[i] - m);
        }
        if (vinf_out) *vinf_out = vinf;
        if (c_out) *c_out = c;
        return sse;
    };

    double best_a = 1.0, best_sse = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 240; ++k) {
        double a = std::pow(10.0, -2.0 + 4.0 * k / 240.0);  // 1e-2 .. 1e2
        double sse = sse_for(a, nullptr, nullptr);
        if (sse < best_sse) {
            best_sse = sse;
            best_a = a;
        }
    }
    // parabolic refinement in log a
    double la = std::log(best_a), h = 4.0 / 240.0 * std::log(10.0);
    for (int it = 0; it < 40; ++it) {
        double f0 = sse_for(std::exp(la - h), nullptr, nullptr);
        double f1 = sse_for(std::exp(la), nullptr, nullptr);
        double f2 = sse_for(std::exp(la + h), nullptr, nullptr);
        double denom = f0 - 2.0 * f1 + f2;
        if (std::abs(denom) > 0.0) {
            double shift = 0.5 * h * (f0 - f2) / denom;
            if (std::abs(shift) < h) la += shift;
        }
        h *= 0.5;
    }
    double vinf = 0.0, c = 0.0;
    double sse = sse_for(std::exp(la), &vinf, &c);

    ExtrapolationResult out;
    out.limit = vinf;
    double tail = std::abs(c) * std::exp(-std::exp(la) * r.back());
    out.err_estimate = std::max(std::sqrt(sse / n), 0.5 * tail);
    out.converged = std::isfinite(vinf) && tail < std::abs(c) + 1.0;
    std::ostringstream os;
    os << "expfit a=" << std::exp(la) << " c=" << c << " rms=" << std::sqrt(sse / n);
    out.diagnostics = os.str();
    return out;
}

}  // namespace zetaglue
