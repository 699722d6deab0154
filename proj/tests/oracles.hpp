#pragma once

// Test-only oracles. These deliberately share no code with the library's
// continuation engine: ODE integration for interval determinants,
// Euler-Maclaurin for Hurwitz zeta values, Stirling for complex log Gamma.

#include <cmath>
#include <complex>

namespace oracles {

using Complex = std::complex<double>;

// Gelfand-Yaglom: for -y'' + w y on [0, L],
//   Det(Dirichlet-Dirichlet) = 2 y(L),   y(0) = 0, y'(0) = 1,
//   Det(Dirichlet-Neumann)   = 2 y'(L).
// RK4 with a fixed fine step.
inline Complex gy_interval_det(double length, Complex w, bool neumann_far) {
    const int steps = 4000;
    double h = length / steps;
    Complex y = 0.0, yp = 1.0;
    auto f = [w](Complex y_, Complex yp_) { return std::pair{yp_, w * y_}; };
    for (int i = 0; i < steps; ++i) {
        auto [k1y, k1p] = f(y, yp);
        auto [k2y, k2p] = f(y + 0.5 * h * k1y, yp + 0.5 * h * k1p);
        auto [k3y, k3p] = f(y + 0.5 * h * k2y, yp + 0.5 * h * k2p);
        auto [k4y, k4p] = f(y + h * k3y, yp + h * k3p);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        yp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }
    return neumann_far ? 2.0 * yp : 2.0 * y;
}

// Hurwitz zeta by Euler-Maclaurin; valid for real s != 1, a > 0.
inline double hurwitz_zeta(double s, double a) {
    const int n = 40;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += std::pow(k + a, -s);
    double na = n + a;
    sum += std::pow(na, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(na, -s);
    // Bernoulli corrections B2/2! s, B4/4! s(s+1)(s+2), B6/6! ...
    double b[3] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0};
    double fact[3] = {2.0, 24.0, 720.0};
    double rising = s;
    double power = std::pow(na, -s - 1.0);
    for (int j = 0; j < 3; ++j) {
        sum += b[j] / fact[j] * rising * power;
        rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
        power /= na * na;
    }
    return sum;
}

// zeta_H'(0, a) closed form (Lerch).
inline double hurwitz_zeta_deriv0(double a) {
    return std::lgamma(a) - 0.5 * std::log(2.0 * M_PI);
}

// Stirling series with argument shift; |w| effectively >= 12.
inline Complex stirling_log_gamma(Complex w) {
    Complex shift = 0.0;
    while (std::abs(w) < 12.0) {
        shift -= std::log(w);
        w += 1.0;
    }
    static const double coeff[5] = {1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
                                    1.0 / 1188.0};
    Complex series = 0.0, wp = 1.0 / w;
    for (double c : coeff) {
        series += c * wp;
        wp /= w * w;
    }
    return shift + (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * M_PI) + series;
}

}  // namespace oracles
