#include "zetaglue/zeta.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "zetaglue/errors.hpp"
#include "zetaglue/special.hpp"

namespace zetaglue {

namespace {

// Declared terms with the rotation applied and the kernel removed from the
// constant coefficient when requested.
std::vector<std::pair<double, Complex>> rotated_terms(const SpectralModel& m, double phi,
                                                      bool exclude_kernel) {
    std::vector<std::pair<double, Complex>> out;
    bool constant_seen = false;
    for (const HeatTerm& t : m.terms) {
        double b = t.coeff;
        if (exclude_kernel && std::abs(t.power) < 1e-12) {
            b -= m.kernel_mult;
            constant_seen = true;
        }
        Complex c = b * std::exp(Complex(0.0, -t.power * phi));
        out.emplace_back(t.power, c);
    }
    if (exclude_kernel && !constant_seen && m.kernel_mult > 0)
        out.emplace_back(0.0, Complex(-static_cast<double>(m.kernel_mult), 0.0));
    return out;
}

// Integrand r^{s-1} e^{-rz} rho(r e^{-i phi}); evaluated in log form so the
// endpoint clustering of tanh-sinh nodes cannot overflow r^{s-1}.
Complex remainder_integrand(const SpectralModel& m, double s, double phi, Complex z, double r) {
    Complex rho = m.theta_remainder(r * std::exp(Complex(0.0, -phi)));
    if (rho == Complex(0.0)) return 0.0;
    return std::exp(std::log(rho) - r * z + (s - 1.0) * std::log(r));
}

double e1_tail_bound(const SpectralModel& m, double phi, Complex z) {
    double cphi = std::cos(phi);
    double cut = m.spectrum_cutoff;
    if (cut <= 0.0 || !m.exp_tail) return 0.0;
    double tail_heat = m.exp_tail(cphi, cut);
    double denom = std::max(cut * cphi + z.real(), 1.0);
    return 2.0 * std::exp(-std::max(z.real(), 0.0)) * tail_heat / denom;
}

}  // namespace

SpectralModel make_spectral_model(const CrossSection& y, double cutoff) {
    SpectralModel m;
    if (y.finitely_enumerable()) {
        // a listed spectrum is complete as given; no tail beyond it
        m.spectrum = y.complete_spectrum();
        m.spectrum_cutoff = std::numeric_limits<double>::max() / 4.0;
        m.exp_tail = [](double, double) { return 0.0; };
    } else {
        EigenvalueStream s = y.enumerate(cutoff);
        m.spectrum = s.entries;
        m.spectrum_cutoff = cutoff;
        m.exp_tail = [y](double c, double cut) { return y.exp_tail_bound(c, cut); };
    }
    m.terms = y.heat_expansion().terms;
    m.theta_remainder = [y](Complex w) { return y.theta_remainder(w); };
    m.kernel_mult = y.kernel_dim();
    return m;
}

ZetaPointData zeta_engine_s0(const SpectralModel& m, double phi, Complex z, bool exclude_kernel,
                             const EngineOptions& opt) {
    ZetaPointData out;
    if (m.spectrum.empty() && m.terms.empty()) return out;
    if (z == Complex(0.0) && m.kernel_mult > 0 && !exclude_kernel)
        throw KernelError("zeta at zero shift requires kernel exclusion for a non-invertible operator");
    if (z != Complex(0.0)) exclude_kernel = false;

    KahanSum<Complex> z0, z0p;
    for (const auto& [p, c] : rotated_terms(m, phi, exclude_kernel)) {
        int n0;
        if (is_nonpositive_integer(p, &n0)) {
            MellinPole pole = mellin_g_pole(n0, z);
            z0.add(c * pole.residue);
            z0p.add(c * (kEulerGamma * pole.residue + pole.regular_part));
        } else {
            z0p.add(c * mellin_g(p, z));
        }
    }
    // large-r Mellin piece: sum of exponential integrals over the spectrum
    Complex rot = std::exp(Complex(0.0, -phi));
    for (const EigenEntry& e : m.spectrum) {
        if (exclude_kernel && e.lambda == 0.0) continue;
        Complex w = rot * e.lambda + z;
        Complex t = static_cast<double>(e.multiplicity) * expint_e1(w);
        z0p.add(t);
        if (std::abs(t) < 1e-22 && e.lambda * std::cos(phi) > 40.0) break;
    }
    double quad_err = 0.0;
    Complex rem = tanh_sinh_01(
        [&](double r) { return remainder_integrand(m, 0.0, phi, z, r); }, opt.quad_tol, &quad_err);
    z0p.add(rem);

    out.zeta0 = z0.value();
    out.zeta0_deriv = z0p.value();
    out.error_bound = quad_err + e1_tail_bound(m, phi, z) +
                      1e-14 * (1.0 + std::abs(out.zeta0_deriv));
    return out;
}

ZetaValue zeta_engine_value(const SpectralModel& m, double s0, double phi, Complex z,
                            bool exclude_kernel, const EngineOptions& opt) {
    ZetaValue out{0.0, 0.0, 0.0};
    if (m.spectrum.empty() && m.terms.empty()) return out;
    if (is_nonpositive_integer(s0) || s0 == 0.0)
        throw std::invalid_argument("zeta_engine_value: s0 must avoid Gamma poles and 0");
    if (z == Complex(0.0) && m.kernel_mult > 0 && !exclude_kernel)
        throw KernelError("zeta at zero shift requires kernel exclusion for a non-invertible operator");
    if (z != Complex(0.0)) exclude_kernel = false;

    KahanSum<Complex> bracket, residues;
    for (const auto& [p, c] : rotated_terms(m, phi, exclude_kernel)) {
        double a = s0 + p;
        int n0;
        if (is_nonpositive_integer(a, &n0)) {
            MellinPole pole = mellin_g_pole(n0, z);
            bracket.add(c * (pole.regular_part + kEulerGamma * pole.residue));
            residues.add(c * pole.residue);
        } else {
            bracket.add(c * mellin_g(a, z));
        }
    }
    Complex rot = std::exp(Complex(0.0, -phi));
    for (const EigenEntry& e : m.spectrum) {
        if (exclude_kernel && e.lambda == 0.0) continue;
        Complex w = rot * e.lambda + z;
        Complex t = static_cast<double>(e.multiplicity) *
                    std::exp(-s0 * std::log(w)) * upper_gamma(s0, w);
        bracket.add(t);
        if (std::abs(t) < 1e-22 && e.lambda * std::cos(phi) > 40.0) break;
    }
    double quad_err = 0.0;
    bracket.add(tanh_sinh_01(
        [&](double r) { return remainder_integrand(m, s0, phi, z, r); }, opt.quad_tol, &quad_err));

    double inv_gamma = 1.0 / std::tgamma(s0);
    out.finite_part = inv_gamma * bracket.value();
    out.residue = inv_gamma * residues.value();
    out.error_bound = std::abs(inv_gamma) *
                      (quad_err + e1_tail_bound(m, phi, z) + 1e-14 * (1.0 + std::abs(bracket.value())));
    return out;
}

ZetaResult zeta_invariants(const CrossSection& y, bool exclude_kernel, const EngineOptions& opt) {
    SpectralModel m = make_spectral_model(y, opt.cutoff);
    ZetaPointData d = zeta_engine_s0(m, 0.0, 0.0, exclude_kernel, opt);
    ZetaResult r;
    r.zeta0 = d.zeta0.real();
    r.zeta0_prime = d.zeta0_deriv;
    r.log_det = -d.zeta0_deriv;
    r.error_bound = d.error_bound;
    r.excluded_kernel = exclude_kernel;
    return r;
}

RayShift RayShift::make(double theta, double t) {
    if (t < 0.0) throw std::invalid_argument("RayShift: t must be nonnegative");
    if (theta <= -M_PI || theta > M_PI) throw std::invalid_argument("RayShift: theta in (-pi, pi]");
    RayShift s;
    s.theta = theta;
    s.t = t;
    s.phi = (std::abs(theta) < M_PI / 2.0) ? 0.0 : theta / 2.0;
    return s;
}

Complex RayShift::rotated_z() const { return t * std::exp(Complex(0.0, theta - phi)); }
Complex RayShift::unrotated_z() const { return t * std::exp(Complex(0.0, theta)); }

Complex log_det_shifted(const CrossSection& y, const RayShift& shift, const EngineOptions& opt) {
    if (std::abs(std::abs(shift.theta) - M_PI) < 1e-14)
        throw std::invalid_argument("log_det_shifted: theta = pi collides with the Agmon ray");
    SpectralModel m = make_spectral_model(y, opt.cutoff);
    if (shift.is_zero()) {
        if (m.kernel_mult > 0)
            throw KernelError("log_det_shifted: zero shift on a non-invertible operator");
        ZetaPointData d = zeta_engine_s0(m, 0.0, 0.0, false, opt);
        return -d.zeta0_deriv;
    }
    ZetaPointData d = zeta_engine_s0(m, shift.phi, shift.rotated_z(), false, opt);
    return Complex(0.0, shift.phi) * d.zeta0 - d.zeta0_deriv;
}

Complex log_det_multiplier(const CrossSection& y, const SpectralMap& map, const RayShift& shift,
                           const EngineOptions& opt) {
    if (!map.has_asymptotics())
        throw MissingAsymptoticsError("log_det_multiplier: map lacks declared asymptotics");
    SpectralModel m = make_spectral_model(y, opt.cutoff);
    const double p = map.asym_order;
    const Complex c = map.asym_const;
    Complex z = shift.unrotated_z();

    Complex zeta0, log_det_sh;
    if (shift.is_zero()) {
        if (m.kernel_mult > 0 && map.kernel_value == Complex(0.0))
            throw KernelError("log_det_multiplier: declared kernel value is zero");
        bool exclude = m.kernel_mult > 0;
        ZetaPointData d = zeta_engine_s0(m, 0.0, 0.0, exclude, opt);
        zeta0 = d.zeta0;
        log_det_sh = -d.zeta0_deriv;
    } else {
        ZetaPointData d = zeta_engine_s0(m, shift.phi, shift.rotated_z(), false, opt);
        zeta0 = d.zeta0;
        log_det_sh = Complex(0.0, shift.phi) * d.zeta0 - d.zeta0_deriv;
    }

    KahanSum<Complex> corr;
    for (const EigenEntry& e : m.spectrum) {
        if (e.lambda == 0.0 && shift.is_zero()) continue;  // declared branch handled below
        Complex mu = std::sqrt(Complex(e.lambda, 0.0) + z);
        Complex ratio = map.eval(e.lambda) / (c * std::pow(mu, p));
        corr.add(static_cast<double>(e.multiplicity) * std::log(ratio));
    }
    Complex kernel_part = 0.0;
    if (shift.is_zero() && m.kernel_mult > 0)
        kernel_part = static_cast<double>(m.kernel_mult) * std::log(map.kernel_value);

    return std::log(c) * zeta0 + 0.5 * p * log_det_sh + corr.value() + kernel_part;
}

AsymptoticFit asymptotic_zero_coeff(const std::vector<std::pair<double, Complex>>& samples,
                                    const std::vector<FitBasisFn>& basis) {
    if (basis.empty()) throw std::invalid_argument("asymptotic_zero_coeff: empty basis");
    if (samples.size() < 2 * basis.size())
        throw std::invalid_argument("asymptotic_zero_coeff: need >= 2x samples per basis function");
    double tmin = samples.front().first, tmax = samples.front().first;
    for (const auto& s : samples) {
        tmin = std::min(tmin, s.first);
        tmax = std::max(tmax, s.first);
    }
    if (tmax / tmin < 99.0)
        throw std::invalid_argument("asymptotic_zero_coeff: t-window must span >= 2 decades");

    auto fit_on = [&](const std::vector<std::pair<double, Complex>>& pts, AsymptoticFit& out) {
        const int n = static_cast<int>(pts.size());
        const int k = static_cast<int>(basis.size());
        Eigen::MatrixXd a(n, k);
        Eigen::VectorXd bre(n), bim(n);
        for (int i = 0; i < n; ++i) {
            double t = pts[i].first;
            for (int j = 0; j < k; ++j) {
                double v = std::pow(t, basis[j].power);
                if (basis[j].with_log) v *= std::log(t);
                a(i, j) = v;
            }
            bre(i) = pts[i].second.real();
            bim(i) = pts[i].second.imag();
        }
        Eigen::VectorXd norms(k);
        for (int j = 0; j < k; ++j) {
            norms(j) = a.col(j).norm();
            if (norms(j) == 0.0) norms(j) = 1.0;
            a.col(j) /= norms(j);
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        double cond = svd.singularValues()(0) / svd.singularValues()(k - 1);
        if (!(cond < 1e12))
            throw ConditioningError("asymptotic_zero_coeff: ill-conditioned basis", cond);
        Eigen::VectorXd xre = svd.solve(bre), xim = svd.solve(bim);
        out.coefficients.resize(k);
        for (int j = 0; j < k; ++j)
            out.coefficients[j] = Complex(xre(j), xim(j)) / norms(j);
        double res = std::sqrt(((a * xre - bre).squaredNorm() + (a * xim - bim).squaredNorm()) / n);
        out.residual_norm = res;
        out.condition_number = cond;
    };

    AsymptoticFit fit;
    fit.basis = basis;
    fit_on(samples, fit);
    int pi0_index = -1;
    for (size_t j = 0; j < basis.size(); ++j)
        if (basis[j].power == 0.0 && !basis[j].with_log) pi0_index = static_cast<int>(j);
    if (pi0_index < 0)
        throw std::invalid_argument("asymptotic_zero_coeff: basis lacks the constant function");
    fit.pi0 = fit.coefficients[pi0_index];

    // stability: refit on the upper half of the window (geometric midpoint)
    double mid = std::sqrt(tmin * tmax);
    std::vector<std::pair<double, Complex>> upper;
    for (const auto& s : samples)
        if (s.first >= mid) upper.push_back(s);
    if (upper.size() >= 2 * basis.size()) {
        AsymptoticFit half;
        half.basis = basis;
        fit_on(upper, half);
        fit.pi0_stability = std::abs(half.coefficients[pi0_index] - fit.pi0);
    } else {
        fit.pi0_stability = std::numeric_limits<double>::quiet_NaN();
    }
    return fit;
}

std::vector<FitBasisFn> log_det_fit_basis(const CrossSection& y) {
    std::vector<FitBasisFn> basis;
    auto add = [&](double power, bool with_log) {
        for (const auto& b : basis)
            if (b.power == power && b.with_log == with_log) return;
        basis.push_back({power, with_log});
    };
    add(0.0, false);
    for (const HeatTerm& t : y.heat_expansion().terms) {
        if (t.power > 2.0) continue;  // t^{-p} beyond t^{-2} is numerically idle
        add(-t.power, false);
        int n0;
        if (is_nonpositive_integer(t.power, &n0) && std::abs(t.coeff) > 0.0)
            add(-t.power, true);
    }
    add(-1.0, false);
    std::sort(basis.begin(), basis.end(), [](const FitBasisFn& a, const FitBasisFn& b) {
        if (a.power != b.power) return a.power > b.power;
        return a.with_log > b.with_log;
    });
    return basis;
}

}  // namespace zetaglue
