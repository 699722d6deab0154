#include "zetaglue/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace zetaglue {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Sum_{n>=0} (-w)^n / (n! (a+n)); the pole structure of g in closed form.
// Usable for moderate |w| (cancellation grows like e^{|w|}).
Complex g_kernel_series(double a, Complex w) {
    Complex term = 1.0;
    KahanSum<Complex> s;
    s.add(term / Complex(a));
    for (int n = 1; n < 400; ++n) {
        term *= -w / static_cast<double>(n);
        Complex contrib = term / Complex(a + n);
        s.add(contrib);
        if (std::abs(term) < 1e-20 * (1.0 + std::abs(s.value())) && n > std::abs(w)) break;
    }
    return s.value();
}

// Modified Lentz continued fraction for Gamma(a, w), Re w > 0, |w| not small.
Complex upper_gamma_cf(double a, Complex w) {
    const double tiny = 1e-300;
    Complex b = w + 1.0 - a;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i <= 300; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        Complex delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 4.0 * kEps) break;
    }
    return std::exp(-w + a * std::log(w)) * h;
}

}  // namespace

Complex expint_e1(Complex w) {
    if (w == Complex(0.0)) throw std::invalid_argument("expint_e1: w = 0");
    if (std::abs(w) <= 3.5) {
        // E1(w) = -gamma - log w + sum_{k>=1} (-1)^{k+1} w^k / (k k!)
        Complex term = 1.0;
        KahanSum<Complex> s;
        for (int k = 1; k < 80; ++k) {
            term *= -w / static_cast<double>(k);
            s.add(-term / static_cast<double>(k));
            if (std::abs(term) < 1e-20) break;
        }
        return -kEulerGamma - std::log(w) + s.value();
    }
    return upper_gamma_cf(0.0, w);
}

Complex upper_gamma(double a, Complex w) {
    int n0;
    if (a != 0.0 && is_nonpositive_integer(a, &n0))
        throw std::invalid_argument("upper_gamma: order on the pole set");
    if (a == 0.0) return expint_e1(w);
    if (std::abs(w) >= std::max(6.0, a + 2.0)) return upper_gamma_cf(a, w);
    // Gamma(a,w) = Gamma(a) - w^a * series
    return std::tgamma(a) - std::exp(a * std::log(w)) * g_kernel_series(a, w);
}

Complex mellin_g(double a, Complex z) {
    if (is_nonpositive_integer(a)) throw std::invalid_argument("mellin_g: a on the pole set");
    if (z == Complex(0.0)) return 1.0 / a;
    if (std::abs(z) < std::max(6.0, a + 2.0)) return g_kernel_series(a, z);
    return std::exp(-a * std::log(z)) * (std::tgamma(a) - upper_gamma_cf(a, z));
}

MellinPole mellin_g_pole(int n0, Complex z) {
    if (n0 < 0) throw std::invalid_argument("mellin_g_pole: n0 < 0");
    MellinPole out;
    if (z == Complex(0.0)) {
        // g(a, 0) = 1/a: only the a = 0 point is an actual pole.
        out.residue = (n0 == 0) ? 1.0 : 0.0;
        out.regular_part = (n0 == 0) ? 0.0 : -1.0 / static_cast<double>(n0);
        return out;
    }
    // residue at a = -n0 is (-z)^{n0}/n0!
    Complex res = 1.0;
    for (int j = 1; j <= n0; ++j) res *= -z / static_cast<double>(j);
    out.residue = res;
    // Regular parts satisfy S(0) = -gamma - Log z - E1(z) and
    //   S(-j) = -(1/j) [ e^{-z} + z S(-j+1) + z R(-j+1)/j ],
    // with R(-j) = (-z)^j/j!, from g(a-1,z) = (e^{-z} + z g(a,z))/(a-1).
    Complex s_prev = -kEulerGamma - std::log(z) - expint_e1(z);
    Complex r_prev = 1.0;
    Complex ez = std::exp(-z);
    for (int j = 1; j <= n0; ++j) {
        Complex s_cur = -(ez + z * s_prev + z * r_prev / static_cast<double>(j)) /
                        static_cast<double>(j);
        r_prev *= -z / static_cast<double>(j);
        s_prev = s_cur;
    }
    out.regular_part = s_prev;
    return out;
}

bool is_nonpositive_integer(double a, int* n0) {
    double r = std::round(a);
    if (r > 0.25) return false;
    if (std::abs(a - r) > 1e-9) return false;
    if (n0) *n0 = static_cast<int>(-r);
    return true;
}

Complex log_gamma(Complex w) {
    // Lanczos, g = 7, n = 9 (Re w > 0).
    static const double lanczos[9] = {0.99999999999980993,  676.5203681218851,
                                      -1259.1392167224028,  771.32342877765313,
                                      -176.61502916214059,  12.507343278686905,
                                      -0.13857109526572012, 9.9843695780195716e-6,
                                      1.5056327351493116e-7};
    if (w.real() < 0.5) {
        // reflection; not exercised by the engine but kept total
        return std::log(M_PI / std::sin(M_PI * w)) - log_gamma(1.0 - w);
    }
    Complex x = lanczos[0];
    Complex wm1 = w - 1.0;
    for (int i = 1; i < 9; ++i) x += lanczos[i] / (wm1 + static_cast<double>(i));
    Complex t = wm1 + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (wm1 + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace zetaglue
