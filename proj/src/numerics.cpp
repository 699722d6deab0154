#include "zetaglue/numerics.hpp"

#include <array>
#include <cstring>
#include <stdexcept>

namespace zetaglue {

double bernoulli_number(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli_number: negative order");
    if (n == 0) return 1.0;
    if (n == 1) return -0.5;
    if (n % 2 == 1) return 0.0;
    // B_{2m} = (-1)^{m+1} 2 (2m)! zeta(2m) / (2 pi)^{2m}
    int m = n / 2;
    KahanSum<double> s;
    for (int k = 1; k < 50; ++k) s.add(std::pow(static_cast<double>(k), -n));
    const double K = 50.0, nn = n;
    s.add(std::pow(K, 1.0 - nn) / (nn - 1.0) + 0.5 * std::pow(K, -nn) +
          nn / 12.0 * std::pow(K, -nn - 1.0) -
          nn * (nn + 1.0) * (nn + 2.0) / 720.0 * std::pow(K, -nn - 3.0));
    double zeta2m = s.value();
    double log_mag = std::lgamma(2.0 * m + 1.0) - 2.0 * m * std::log(2.0 * M_PI);
    double sign = (m % 2 == 0) ? -1.0 : 1.0;
    return sign * 2.0 * zeta2m * std::exp(log_mag);
}

double bernoulli_poly(int n, double x) {
    if (n < 0 || n > 32) throw std::invalid_argument("bernoulli_poly: order out of range");
    // B_n(x) = sum_k C(n,k) B_k x^{n-k}
    double result = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        result += binom * bernoulli_number(k) * std::pow(x, n - k);
        binom *= static_cast<double>(n - k) / (k + 1);
    }
    return result;
}

namespace {

struct TsNode {
    double x_small;  // abscissa in (0, 1/2]; the mirror is 1 - x_small
    double w;        // weight
};

// Nodes for one tanh-sinh level: x = 1/2 (1 + tanh((pi/2) sinh(k h))).
// The small-side coordinate is computed as 1/(e^{2u}+1) so endpoint
// clustering keeps full relative accuracy.
void ts_level_nodes(int level, std::vector<TsNode>& out) {
    out.clear();
    double h = std::ldexp(1.0, -level);  // 2^-level
    int kmax = static_cast<int>(std::ceil(7.0 / h));
    int step = (level == 0) ? 1 : 2;
    int kstart = (level == 0) ? 0 : 1;
    for (int k = kstart; k <= kmax; k += step) {
        double t = k * h;
        double sh = std::sinh(t);
        double ch = std::cosh(t);
        double u = 0.5 * M_PI * sh;
        if (u > 350.0) break;
        double sech = 1.0 / std::cosh(u);
        double w = 0.25 * M_PI * ch * sech * sech;  // dx/dt up to the h factor
        double x_small = (k == 0) ? 0.5 : 1.0 / (std::exp(2.0 * u) + 1.0);
        if (x_small <= 0.0 || w < 1e-300) break;
        out.push_back({x_small, w});
    }
}

}  // namespace

Complex tanh_sinh_01(const std::function<Complex(double)>& f, double tol, double* err_out) {
    constexpr int kMaxLevel = 11;
    std::vector<TsNode> nodes;
    Complex acc = 0.0;
    double h = 1.0;
    Complex prev = 0.0;
    double err = std::numeric_limits<double>::infinity();
    for (int level = 0; level <= kMaxLevel; ++level) {
        ts_level_nodes(level, nodes);
        KahanSum<Complex> s;
        for (const TsNode& nd : nodes) {
            if (nd.x_small == 0.5) {
                s.add(nd.w * f(0.5));  // center point, its own mirror
            } else {
                s.add(nd.w * (f(nd.x_small) + f(1.0 - nd.x_small)));
            }
        }
        h = std::ldexp(1.0, -level);
        Complex level_sum = s.value();
        if (level == 0) {
            acc = h * level_sum;
        } else {
            acc = 0.5 * acc + h * level_sum;
        }
        if (level >= 2) {
            err = std::abs(acc - prev);
            double scale = std::max(1.0, std::abs(acc));
            if (err <= tol * scale) {
                if (err_out) *err_out = err;
                return acc;
            }
        }
        prev = acc;
    }
    if (err_out) *err_out = err;
    return acc;
}

Complex tanh_sinh(const std::function<Complex(double)>& f, double a, double b, double tol,
                  double* err_out) {
    double len = b - a;
    return tanh_sinh_01([&](double u) { return f(a + len * u) * len; }, tol, err_out);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

}  // namespace zetaglue
