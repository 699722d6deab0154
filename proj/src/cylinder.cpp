#include "zetaglue/cylinder.hpp"

#include <algorithm>
#include <cmath>

#include "zetaglue/errors.hpp"

namespace zetaglue {

namespace {

bool is_plain(BoundaryCondition b) {
    return b == BoundaryCondition::dirichlet || b == BoundaryCondition::neumann;
}

// true if exactly one end is Neumann
bool mixed_pair(BoundaryCondition l, BoundaryCondition r) {
    if (!is_plain(l) || !is_plain(r))
        throw std::invalid_argument("cylinder: absolute/relative act through the graded entry point");
    bool ln = (l == BoundaryCondition::neumann), rn = (r == BoundaryCondition::neumann);
    if (ln && rn) throw std::invalid_argument("cylinder: Neumann-Neumann pair unsupported");
    return ln != rn;
}

// Eigenvalues the convergent wrap sums need: e^{-2 mu L} must die out before
// the enumeration stops.
double wrap_cutoff(double length, double engine_cutoff) {
    double need = 33.0 / length;
    return std::max(engine_cutoff, need * need);
}

std::vector<EigenEntry> stream_for(const CrossSection& y, double cutoff) {
    if (y.finitely_enumerable()) return y.complete_spectrum();
    return y.enumerate(cutoff).entries;
}

}  // namespace

Complex interval_log_det(double length, double lambda, BoundaryCondition left,
                         BoundaryCondition right, Complex z) {
    if (length <= 0.0) throw std::invalid_argument("interval_log_det: length must be positive");
    bool mixed = mixed_pair(left, right);
    Complex w = Complex(lambda, 0.0) + z;
    if (w == Complex(0.0)) return mixed ? std::log(2.0) : std::log(2.0 * length);
    Complex mu = std::sqrt(w);
    Complex x = mu * length;
    if (std::abs(x) < 1e-4) {
        if (mixed) return std::log(2.0 * std::cosh(x));
        Complex x2 = x * x;
        // 2 sinh(x)/mu = 2L * sinh(x)/x
        return std::log(2.0 * length) + std::log(1.0 + x2 / 6.0 + x2 * x2 / 120.0);
    }
    if (mixed) return x + std::log(1.0 + std::exp(-2.0 * x));
    return x + std::log(1.0 - std::exp(-2.0 * x)) - std::log(mu);
}

Complex cylinder_log_det(const CylinderOp& op, const EngineOptions& opt) {
    if (op.length <= 0.0) throw std::invalid_argument("cylinder_log_det: length must be positive");
    bool mixed = mixed_pair(op.bc_left, op.bc_right);
    const CrossSection& y = op.cross_section;
    SpectralModel m = make_spectral_model(y, opt.cutoff);
    if (m.spectrum.empty() && m.terms.empty()) return 0.0;
    const double L = op.length;
    double wrap_sign = mixed ? 1.0 : -1.0;  // log(1 - sigma e^{-2 mu L}), sigma = +1 for D-D

    std::vector<EigenEntry> wrap = stream_for(y, wrap_cutoff(L, opt.cutoff));

    if (op.shift.is_zero()) {
        int k = m.kernel_mult;
        Complex zero_part = static_cast<double>(k) *
                            (mixed ? std::log(2.0) : std::log(2.0 * L));
        bool exclude = k > 0;
        ZetaValue smu = zeta_engine_value(m, -0.5, 0.0, Complex(0.0), exclude, opt);
        KahanSum<Complex> conv;
        for (const EigenEntry& e : wrap) {
            if (e.lambda == 0.0) continue;
            double mu = std::sqrt(e.lambda);
            conv.add(static_cast<double>(e.multiplicity) *
                     std::log(1.0 + wrap_sign * std::exp(-2.0 * mu * L)));
        }
        Complex result = L * smu.finite_part + conv.value() + zero_part;
        if (!mixed) {
            ZetaPointData d = zeta_engine_s0(m, 0.0, Complex(0.0), exclude, opt);
            result += 0.5 * d.zeta0_deriv;  // - reg sum of log mu = +1/2 zeta'(0)
        }
        return result;
    }

    double phi = op.shift.phi;
    Complex zr = op.shift.rotated_z();
    Complex zu = op.shift.unrotated_z();
    ZetaValue smu = zeta_engine_value(m, -0.5, phi, zr, false, opt);
    Complex half_phase = std::exp(Complex(0.0, 0.5 * phi));
    Complex reg_mu = half_phase * (smu.finite_part - Complex(0.0, phi) * smu.residue);
    KahanSum<Complex> conv;
    for (const EigenEntry& e : wrap) {
        Complex mu = std::sqrt(Complex(e.lambda, 0.0) + zu);
        conv.add(static_cast<double>(e.multiplicity) *
                 std::log(1.0 + wrap_sign * std::exp(-2.0 * mu * L)));
    }
    Complex result = L * reg_mu + conv.value();
    if (!mixed) {
        ZetaPointData d = zeta_engine_s0(m, phi, zr, false, opt);
        Complex log_det_y = Complex(0.0, phi) * d.zeta0 - d.zeta0_deriv;
        result -= 0.5 * log_det_y;
    }
    return result;
}

SpectralModel interval_product_model(const CrossSection& y, double length, bool mixed_bc,
                                     double cutoff) {
    SpectralModel out;
    const double L = length;

    // interval modes below the cutoff
    std::vector<double> interval;
    for (int j = mixed_bc ? 0 : 1;; ++j) {
        double q = mixed_bc ? (j + 0.5) * M_PI / L : j * M_PI / L;
        double lam = q * q;
        if (lam > cutoff) break;
        interval.push_back(lam);
        if (j > 4000000) throw std::runtime_error("interval mode enumeration runaway");
    }
    std::vector<EigenEntry> fiber = stream_for(y, cutoff);
    std::vector<EigenEntry> spectrum;
    for (double li : interval)
        for (const EigenEntry& e : fiber)
            if (li + e.lambda <= cutoff) spectrum.push_back({li + e.lambda, e.multiplicity});
    std::sort(spectrum.begin(), spectrum.end(),
              [](const EigenEntry& a, const EigenEntry& b) { return a.lambda < b.lambda; });
    std::vector<EigenEntry> merged;
    for (const EigenEntry& e : spectrum) {
        if (!merged.empty() &&
            std::abs(merged.back().lambda - e.lambda) <= 1e-12 * std::max(1.0, e.lambda))
            merged.back().multiplicity += e.multiplicity;
        else
            merged.push_back(e);
    }
    out.spectrum = std::move(merged);
    out.spectrum_cutoff = cutoff;
    out.kernel_mult = 0;

    // declared interval terms and their exact dual-series remainder
    std::vector<HeatTerm> iterms;
    iterms.push_back({-0.5, L / (2.0 * std::sqrt(M_PI))});
    if (!mixed_bc) iterms.push_back({0.0, -0.5});
    std::vector<HeatTerm> yterms = y.heat_expansion().terms;
    std::vector<HeatTerm> prod;
    for (const HeatTerm& a : iterms)
        for (const HeatTerm& b : yterms) prod.push_back({a.power + b.power, a.coeff * b.coeff});
    std::sort(prod.begin(), prod.end(),
              [](const HeatTerm& a, const HeatTerm& b) { return a.power < b.power; });
    std::vector<HeatTerm> pm;
    for (const HeatTerm& t : prod) {
        if (!pm.empty() && std::abs(pm.back().power - t.power) < 1e-12)
            pm.back().coeff += t.coeff;
        else
            pm.push_back(t);
    }
    out.terms = pm;

    auto interval_partial = [iterms](Complex w) {
        Complex s = 0.0;
        for (const HeatTerm& t : iterms) s += t.coeff * std::exp(t.power * std::log(w));
        return s;
    };
    auto interval_remainder = [L, mixed_bc](Complex w) {
        Complex s = 0.0;
        double sign = 1.0;
        for (int m = 1; m < 400; ++m) {
            if (mixed_bc) sign = (m % 2 == 1) ? -1.0 : 1.0;
            Complex t = std::exp(-(static_cast<double>(m) * m) * L * L / w);
            if (std::abs(t) < 1e-22) break;
            s += sign * t;
        }
        if (s == Complex(0.0)) return Complex(0.0);
        return L / std::sqrt(M_PI) * std::exp(-0.5 * std::log(w)) * s;
    };
    auto y_partial = [yterms](Complex w) {
        Complex s = 0.0;
        for (const HeatTerm& t : yterms) s += t.coeff * std::exp(t.power * std::log(w));
        return s;
    };
    CrossSection yc = y;
    out.theta_remainder = [interval_partial, interval_remainder, y_partial, yc](Complex w) {
        Complex ri = interval_remainder(w);
        Complex ry = yc.theta_remainder(w);
        Complex s = 0.0;
        if (ry != Complex(0.0)) s += interval_partial(w) * ry;
        if (ri != Complex(0.0)) s += ri * (y_partial(w) + ry);
        return s;
    };
    // theta factors at c/2 bound the tail heat sum
    out.exp_tail = [yc, interval_partial, interval_remainder](double c, double cut) {
        double half = 0.5 * c;
        Complex ti = interval_partial(Complex(half, 0.0)) + interval_remainder(Complex(half, 0.0));
        Complex ty = yc.heat_theta(Complex(half, 0.0));
        return std::exp(-half * cut) * std::abs(ti) * std::abs(ty);
    };
    return out;
}

Complex cylinder_log_det_2d(const CylinderOp& op, const EngineOptions& opt) {
    if (op.length <= 0.0) throw std::invalid_argument("cylinder_log_det_2d: length must be positive");
    bool mixed = mixed_pair(op.bc_left, op.bc_right);
    if (op.cross_section.kind() == CrossSection::Kind::empty) return 0.0;
    SpectralModel pm = interval_product_model(op.cross_section, op.length, mixed, opt.cutoff);
    if (op.shift.is_zero()) {
        ZetaPointData d = zeta_engine_s0(pm, 0.0, Complex(0.0), false, opt);
        return -d.zeta0_deriv;
    }
    ZetaPointData d = zeta_engine_s0(pm, op.shift.phi, op.shift.rotated_z(), false, opt);
    return Complex(0.0, op.shift.phi) * d.zeta0 - d.zeta0_deriv;
}

double form_cylinder_log_det(const CylinderOp& op, const EngineOptions& opt) {
    if (!op.form_degree)
        throw std::invalid_argument("form_cylinder_log_det: form degree required");
    if (!op.shift.is_zero())
        throw std::invalid_argument("form_cylinder_log_det: shifts unsupported on graded cylinders");
    int q = *op.form_degree;
    CrossSection yq = CrossSection::form_graded(op.cross_section, q);
    CrossSection yqm1 = CrossSection::form_graded(op.cross_section, q - 1);
    auto piece = [&](const CrossSection& fiber, bool neumann_at_y0) {
        CylinderOp sub;
        sub.cross_section = fiber;
        sub.length = op.length;
        sub.bc_left = BoundaryCondition::dirichlet;
        sub.bc_right = neumann_at_y0 ? BoundaryCondition::neumann : BoundaryCondition::dirichlet;
        return cylinder_log_det(sub, opt).real();
    };
    switch (op.bc_right) {
        case BoundaryCondition::absolute:
            // blockwise (Neumann on the degree-q part, Dirichlet on du-wedge)
            return piece(yq, true) + piece(yqm1, false);
        case BoundaryCondition::relative:
            return piece(yq, false) + piece(yqm1, true);
        case BoundaryCondition::dirichlet:
            return piece(yq, false) + piece(yqm1, false);
        default:
            throw std::invalid_argument("form_cylinder_log_det: Y_0 condition must be abs/rel/Dirichlet");
    }
}

}  // namespace zetaglue
