#pragma once

#include <string>
#include <vector>

namespace zetaglue {

struct ExtrapolationResult {
    double limit = 0.0;
    double err_estimate = 0.0;
    bool converged = false;
    std::string diagnostics;
};

// Polynomial extrapolation to r = infinity in the variable x = 1/r (Neville
// at x = 0). The right model when a kernel contributes an inverse-power
// error series.
ExtrapolationResult richardson_inverse_r(const std::vector<double>& r,
                                         const std::vector<double>& v);

// Fit v(r) = v_inf + c e^{-a r}; deterministic coarse scan over decay rates
// followed by a parabolic refinement, linear least squares in (v_inf, c).
ExtrapolationResult fit_exp_decay(const std::vector<double>& r, const std::vector<double>& v);

}  // namespace zetaglue
