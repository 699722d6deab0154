#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace zetaglue {

using Complex = std::complex<double>;

inline constexpr double kEulerGamma = 0.5772156649015328606065120900824024;

// Compensated accumulator. Sums are always taken in a fixed (ascending
// eigenvalue) order so results do not depend on scheduling.
template <typename T>
class KahanSum {
  public:
    void add(T term) {
        T y = term - comp_;
        T t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    T value() const { return sum_; }

  private:
    T sum_{};
    T comp_{};
};

// Bernoulli number B_n (B_1 = -1/2 convention). Even orders computed from
// zeta(2m) so large n stays accurate; odd n>1 are zero.
double bernoulli_number(int n);

// Bernoulli polynomial B_n(x), n <= 32.
double bernoulli_poly(int n, double x);

// Tanh-sinh quadrature of f over (0,1). Handles integrable endpoint
// behavior; refines levels until the estimated error is below tol or the
// level cap is reached. Returns the integral, writes the error estimate.
Complex tanh_sinh_01(const std::function<Complex(double)>& f, double tol, double* err_out = nullptr);

// Same rule on (a,b).
Complex tanh_sinh(const std::function<Complex(double)>& f, double a, double b, double tol,
                  double* err_out = nullptr);

// FNV-1a over a byte string; used for content-addressed cache keys.
std::uint64_t fnv1a64(const std::string& bytes);

inline bool nearly_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace zetaglue
