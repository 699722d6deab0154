#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "zetaglue/spectra.hpp"

namespace zetaglue {

// What the continuation engine consumes: an exhaustively enumerated spectrum,
// the exact small-time expansion, the expansion remainder as a function, and
// certified tail bounds. CrossSection and the double-spectrum cylinders both
// reduce to this.
struct SpectralModel {
    std::vector<EigenEntry> spectrum;  // sorted, includes kernel modes
    double spectrum_cutoff = 0.0;
    std::vector<HeatTerm> terms;
    std::function<Complex(Complex)> theta_remainder;
    std::function<double(double, double)> exp_tail;  // (c, cut) -> bound on tail heat sum
    int kernel_mult = 0;
};

SpectralModel make_spectral_model(const CrossSection& y, double cutoff);

struct EngineOptions {
    double cutoff = 150.0;    // eigenvalue enumeration cutoff for the r>1 Mellin piece
    double quad_tol = 1e-13;  // tanh-sinh target for remainder integrals
};

// Z(s) data at s = 0 for Z(s) = sum mult (e^{-i phi} lambda + z)^{-s}.
struct ZetaPointData {
    Complex zeta0;
    Complex zeta0_deriv;
    double error_bound = 0.0;
};

ZetaPointData zeta_engine_s0(const SpectralModel& m, double phi, Complex z, bool exclude_kernel,
                             const EngineOptions& opt = {});

// Gamma-weighted finite part of Z at s0 (the plain value when s0 is regular);
// also reports the residue there. This is exactly the regularization under
// which interval x Y factorizations match the double-spectrum determinant.
struct ZetaValue {
    Complex finite_part;
    Complex residue;
    double error_bound = 0.0;
};
ZetaValue zeta_engine_value(const SpectralModel& m, double s0, double phi, Complex z,
                            bool exclude_kernel, const EngineOptions& opt = {});

// ---------------------------------------------------------------------------
// Public operations on cross-sections.

struct ZetaResult {
    double zeta0 = 0.0;
    Complex zeta0_prime{0.0, 0.0};
    Complex log_det{0.0, 0.0};  // = -zeta0_prime
    double error_bound = 0.0;
    bool excluded_kernel = false;
};

ZetaResult zeta_invariants(const CrossSection& y, bool exclude_kernel,
                           const EngineOptions& opt = {});

// Ray shift z = e^{i theta} t with the rotation angle phi that moves the
// generator into the right half-plane; phi = 0 whenever |theta| < pi/2.
struct RayShift {
    double theta = 0.0;
    double t = 0.0;
    double phi = 0.0;
    static RayShift make(double theta, double t);
    bool is_zero() const { return t == 0.0; }
    Complex rotated_z() const;    // e^{i(theta-phi)} t
    Complex unrotated_z() const;  // e^{i theta} t
};

// log Det(Delta_Y + e^{i theta} t) with the branch fixed by the phi-rotation;
// real-valued when theta = 0.
Complex log_det_shifted(const CrossSection& y, const RayShift& shift,
                        const EngineOptions& opt = {});

// ---------------------------------------------------------------------------
// Eigenvalue-wise spectral multipliers and their regularized determinants.

struct SpectralMap {
    std::function<Complex(double)> eval;  // lambda > 0
    Complex kernel_value{0.0, 0.0};       // declared branch at lambda = 0
    double asym_order = std::numeric_limits<double>::quiet_NaN();  // p
    Complex asym_const{std::numeric_limits<double>::quiet_NaN(), 0.0};  // c
    // |eval/(c mu^p) - 1| <= remainder_amp * e^{-remainder_rate sqrt(lambda)}
    // for lambda >= remainder_from
    double remainder_amp = 0.0;
    double remainder_rate = 0.0;
    double remainder_from = 0.0;
    bool has_asymptotics() const {
        return !std::isnan(asym_order) && !std::isnan(asym_const.real());
    }
};

// log Det f(Delta + e^{i theta} t) for f(lambda) = c mu^p (1 + eps(lambda)),
// mu = sqrt(lambda + z). Kernel eigenvalues use the declared kernel branch
// when the shift vanishes.
Complex log_det_multiplier(const CrossSection& y, const SpectralMap& map,
                           const RayShift& shift = {}, const EngineOptions& opt = {});

// ---------------------------------------------------------------------------
// Least-squares extraction of the zero coefficient of large-t expansions.

struct FitBasisFn {
    double power;
    bool with_log;
};

struct AsymptoticFit {
    std::vector<FitBasisFn> basis;
    std::vector<Complex> coefficients;
    Complex pi0{0.0, 0.0};
    double residual_norm = 0.0;
    double pi0_stability = 0.0;  // shift of pi0 when refit on the upper half-window
    double condition_number = 0.0;
};

AsymptoticFit asymptotic_zero_coeff(const std::vector<std::pair<double, Complex>>& samples,
                                    const std::vector<FitBasisFn>& basis);

// Fit basis induced by a model's exponent grid: powers t^{-p} for declared
// heat powers p, log-companions exactly where the Gamma factor has a pole
// (nonpositive integer p), the constant, and decaying guard powers.
std::vector<FitBasisFn> log_det_fit_basis(const CrossSection& y);

}  // namespace zetaglue
