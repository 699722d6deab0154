#include "zetaglue/dtn.hpp"

#include <cmath>

#include "zetaglue/errors.hpp"

namespace zetaglue {

namespace {

Complex mu_of(double lambda, Complex shift) { return std::sqrt(Complex(lambda, 0.0) + shift); }

// mu coth(mu L) and mu tanh(mu L), stable for large Re(mu L).
Complex mu_coth(Complex mu, double L) {
    Complex x = mu * L;
    if (std::abs(x) < 1e-6) return (1.0 + x * x / 3.0) / L;
    Complex e = std::exp(-2.0 * x);
    return mu * (1.0 + e) / (1.0 - e);
}

Complex mu_tanh(Complex mu, double L) {
    Complex x = mu * L;
    if (std::abs(x) < 1e-6) return mu * x * (1.0 - x * x / 3.0);
    Complex e = std::exp(-2.0 * x);
    return mu * (1.0 - e) / (1.0 + e);
}

const SpectralMap& require_q(const std::shared_ptr<SpectralMap>& q, const char* who) {
    if (!q) throw std::invalid_argument(std::string(who) + ": missing component map");
    return *q;
}

}  // namespace

double g_wrap(double r, double lambda) {
    double mu = std::sqrt(lambda);
    if (mu == 0.0) return 2.0 / r;  // declared branch
    double e = std::exp(-2.0 * r * mu);
    return 4.0 * mu * e / (1.0 - e);
}

double h_wrap(double r, double lambda) {
    double mu = std::sqrt(lambda);
    if (mu == 0.0) return 1.0 / (2.0 * r);  // declared branch
    double e = std::exp(-2.0 * r * mu);
    return 2.0 * mu * e / (1.0 - e * e);
}

DtnFamily DtnFamily::q_cylinder(double length, BoundaryCondition far_bc, Complex shift) {
    if (length <= 0.0) throw std::invalid_argument("q_cylinder: length must be positive");
    if (far_bc != BoundaryCondition::dirichlet && far_bc != BoundaryCondition::neumann)
        throw std::invalid_argument("q_cylinder: far end takes Dirichlet or Neumann");
    DtnFamily f;
    f.kind = Kind::q_cylinder;
    f.a = length;
    f.far_bc = far_bc;
    f.shift = shift;
    return f;
}

DtnFamily DtnFamily::r_join(double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("r_join: lengths must be positive");
    DtnFamily f;
    f.kind = Kind::r_join;
    f.a = a;
    f.b = b;
    return f;
}

DtnFamily DtnFamily::r_nr(double r) {
    if (r <= 0.0) throw std::invalid_argument("r_nr: r must be positive");
    DtnFamily f;
    f.kind = Kind::r_nr;
    f.r = r;
    return f;
}

DtnFamily DtnFamily::r_m1r(double r, SpectralMap q1) {
    if (r <= 0.0) throw std::invalid_argument("r_m1r: r must be positive");
    DtnFamily f;
    f.kind = Kind::r_m1r;
    f.r = r;
    f.q1 = std::make_shared<SpectralMap>(std::move(q1));
    return f;
}

DtnFamily DtnFamily::r_m2r(double r, SpectralMap q2) { return r_m1r(r, std::move(q2)); }

DtnFamily DtnFamily::r_mrr(double r, SpectralMap q1, SpectralMap q2) {
    if (r <= 0.0) throw std::invalid_argument("r_mrr: r must be positive");
    DtnFamily f;
    f.kind = Kind::r_mrr;
    f.r = r;
    f.q1 = std::make_shared<SpectralMap>(std::move(q1));
    f.q2 = std::make_shared<SpectralMap>(std::move(q2));
    return f;
}

DtnFamily DtnFamily::rq_tanh(double r, SpectralMap q) {
    DtnFamily f;
    f.kind = Kind::rq_tanh;
    f.r = r;
    f.q1 = std::make_shared<SpectralMap>(std::move(q));
    return f;
}

DtnFamily DtnFamily::rq_coth(double r, SpectralMap q) {
    DtnFamily f;
    f.kind = Kind::rq_coth;
    f.r = r;
    f.q1 = std::make_shared<SpectralMap>(std::move(q));
    return f;
}

Complex dtn_eigenvalue(const DtnFamily& f, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("dtn_eigenvalue: negative fiber eigenvalue");
    switch (f.kind) {
        case DtnFamily::Kind::q_cylinder: {
            Complex mu = mu_of(lambda, f.shift);
            if (mu == Complex(0.0))
                return f.far_bc == BoundaryCondition::dirichlet ? Complex(1.0 / f.a) : Complex(0.0);
            return f.far_bc == BoundaryCondition::dirichlet ? mu_coth(mu, f.a) : mu_tanh(mu, f.a);
        }
        case DtnFamily::Kind::r_join: {
            if (lambda == 0.0) return 1.0 / f.a + 1.0 / f.b;
            Complex mu = std::sqrt(Complex(lambda, 0.0));
            return mu_coth(mu, f.a) + mu_coth(mu, f.b);
        }
        case DtnFamily::Kind::r_nr:
            if (lambda == 0.0) return 2.0 / f.r;
            return 2.0 * std::sqrt(lambda) + g_wrap(f.r, lambda);
        case DtnFamily::Kind::r_m1r: {
            const SpectralMap& q1 = require_q(f.q1, "r_m1r");
            if (lambda == 0.0) return q1.kernel_value + 1.0 / f.r;
            return q1.eval(lambda) + std::sqrt(lambda) + 0.5 * g_wrap(f.r, lambda);
        }
        case DtnFamily::Kind::rq_tanh: {
            const SpectralMap& q = require_q(f.q1, "rq_tanh");
            if (lambda == 0.0) return q.kernel_value;  // mu tanh(mu r) -> 0
            return q.eval(lambda) + mu_tanh(std::sqrt(Complex(lambda, 0.0)), f.r);
        }
        case DtnFamily::Kind::rq_coth: {
            const SpectralMap& q = require_q(f.q1, "rq_coth");
            if (lambda == 0.0) return q.kernel_value + 1.0 / f.r;
            return q.eval(lambda) + mu_coth(std::sqrt(Complex(lambda, 0.0)), f.r);
        }
        case DtnFamily::Kind::r_mrr:
            throw std::invalid_argument("dtn_eigenvalue: block family, use dtn_block");
    }
    throw std::logic_error("dtn_eigenvalue: unreachable");
}

Eigen::Matrix2cd dtn_block(const DtnFamily& f, double lambda) {
    if (f.kind != DtnFamily::Kind::r_mrr)
        throw std::invalid_argument("dtn_block: scalar family, use dtn_eigenvalue");
    const SpectralMap& q1 = require_q(f.q1, "r_mrr");
    const SpectralMap& q2 = require_q(f.q2, "r_mrr");
    Eigen::Matrix2cd m;
    if (lambda == 0.0) {
        double h = 1.0 / (2.0 * f.r);  // declared kernel coupling
        m(0, 0) = q1.kernel_value + h;
        m(1, 1) = q2.kernel_value + h;
        m(0, 1) = m(1, 0) = -h;
        return m;
    }
    double mu = std::sqrt(lambda);
    double h = h_wrap(f.r, lambda);
    double decay = std::exp(-2.0 * f.r * mu);
    m(0, 0) = q1.eval(lambda) + mu + h * decay;
    m(1, 1) = q2.eval(lambda) + mu + h * decay;
    m(0, 1) = m(1, 0) = -h;
    return m;
}

SpectralMap dtn_to_map(const DtnFamily& f) {
    SpectralMap map;
    switch (f.kind) {
        case DtnFamily::Kind::q_cylinder: {
            map.eval = [f](double lambda) { return dtn_eigenvalue(f, lambda); };
            map.kernel_value =
                f.far_bc == BoundaryCondition::dirichlet ? Complex(1.0 / f.a) : Complex(0.0);
            map.asym_order = 1.0;
            map.asym_const = 1.0;
            map.remainder_amp = 3.0;
            map.remainder_rate = 2.0 * f.a * (f.shift == Complex(0.0) ? 1.0 : 0.7);
            map.remainder_from = 1.0;
            return map;
        }
        case DtnFamily::Kind::r_join: {
            map.eval = [f](double lambda) { return dtn_eigenvalue(f, lambda); };
            map.kernel_value = 1.0 / f.a + 1.0 / f.b;
            map.asym_order = 1.0;
            map.asym_const = 2.0;
            map.remainder_amp = 3.0;
            map.remainder_rate = 2.0 * std::min(f.a, f.b);
            map.remainder_from = 1.0;
            return map;
        }
        case DtnFamily::Kind::r_nr: {
            map.eval = [f](double lambda) { return dtn_eigenvalue(f, lambda); };
            map.kernel_value = 2.0 / f.r;
            map.asym_order = 1.0;
            map.asym_const = 2.0;
            map.remainder_amp = 3.0;
            map.remainder_rate = 2.0 * f.r;
            map.remainder_from = 1.0;
            return map;
        }
        case DtnFamily::Kind::r_m1r: {
            const SpectralMap& q1 = require_q(f.q1, "r_m1r");
            if (!q1.has_asymptotics())
                throw MissingAsymptoticsError("r_m1r: component map lacks asymptotics");
            map.eval = [f](double lambda) { return dtn_eigenvalue(f, lambda); };
            map.kernel_value = q1.kernel_value + 1.0 / f.r;
            map.asym_order = 1.0;
            map.asym_const = q1.asym_const + 1.0;
            map.remainder_amp = q1.remainder_amp + 3.0;
            map.remainder_rate = std::min(q1.remainder_rate, 2.0 * f.r);
            map.remainder_from = std::max(1.0, q1.remainder_from);
            return map;
        }
        case DtnFamily::Kind::rq_tanh:
        case DtnFamily::Kind::rq_coth: {
            const SpectralMap& q = require_q(f.q1, "rq branch");
            if (!q.has_asymptotics())
                throw MissingAsymptoticsError("rq branch: component map lacks asymptotics");
            DtnFamily fam = f;
            map.eval = [fam](double lambda) { return dtn_eigenvalue(fam, lambda); };
            map.kernel_value = q.kernel_value +
                               (f.kind == DtnFamily::Kind::rq_coth ? Complex(1.0 / f.r) : Complex(0.0));
            map.asym_order = 1.0;
            map.asym_const = q.asym_const + 1.0;
            map.remainder_amp = q.remainder_amp + 3.0;
            map.remainder_rate = std::min(q.remainder_rate, 2.0 * f.r);
            map.remainder_from = std::max(1.0, q.remainder_from);
            return map;
        }
        case DtnFamily::Kind::r_mrr: {
            const SpectralMap& q1 = require_q(f.q1, "r_mrr");
            const SpectralMap& q2 = require_q(f.q2, "r_mrr");
            if (!q1.has_asymptotics() || !q2.has_asymptotics())
                throw MissingAsymptoticsError("r_mrr: component maps lack asymptotics");
            DtnFamily fam = f;
            map.eval = [fam](double lambda) {
                Eigen::Matrix2cd m = dtn_block(fam, lambda);
                return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
            };
            Eigen::Matrix2cd k = dtn_block(fam, 0.0);
            map.kernel_value = k(0, 0) * k(1, 1) - k(0, 1) * k(1, 0);
            map.asym_order = 2.0;
            map.asym_const = (q1.asym_const + 1.0) * (q2.asym_const + 1.0);
            map.remainder_amp = 2.0 * (q1.remainder_amp + q2.remainder_amp) + 6.0;
            map.remainder_rate =
                std::min({q1.remainder_rate, q2.remainder_rate, 2.0 * f.r});
            map.remainder_from = std::max({1.0, q1.remainder_from, q2.remainder_from});
            return map;
        }
    }
    throw std::logic_error("dtn_to_map: unreachable");
}

Complex dtn_log_det(const DtnFamily& f, const CrossSection& y, const EngineOptions& opt) {
    SpectralMap map = dtn_to_map(f);
    RayShift shift{};  // families carry their shifts inside eval
    return log_det_multiplier(y, map, shift, opt);
}

double min_block_eigen(const DtnFamily& rmrr, const CrossSection& y, double cutoff) {
    if (rmrr.kind != DtnFamily::Kind::r_mrr)
        throw std::invalid_argument("min_block_eigen: needs the block family");
    const SpectralMap& q1 = require_q(rmrr.q1, "min_block_eigen");
    const SpectralMap& q2 = require_q(rmrr.q2, "min_block_eigen");
    double cut = std::max(cutoff, 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        double found = std::numeric_limits<double>::infinity();
        std::vector<EigenEntry> entries =
            y.finitely_enumerable() ? y.complete_spectrum() : y.enumerate(cut).entries;
        for (const EigenEntry& e : entries) {
            double v1 = (e.lambda == 0.0 ? q1.kernel_value : q1.eval(e.lambda)).real();
            double v2 = (e.lambda == 0.0 ? q2.kernel_value : q2.eval(e.lambda)).real();
            if (v1 < -1e-12 || v2 < -1e-12)
                throw std::invalid_argument("min_block_eigen: component maps must be nonnegative");
            Eigen::Matrix2cd m = dtn_block(rmrr, e.lambda);
            double a = m(0, 0).real(), d = m(1, 1).real(), b = m(0, 1).real();
            double tr = a + d;
            double disc = std::sqrt((a - d) * (a - d) + 4.0 * b * b);
            found = std::min(found, 0.5 * (tr - disc));
        }
        if (y.finitely_enumerable()) return found;
        // Gershgorin certificate beyond the cutoff: diagonal >= sqrt(lambda),
        // coupling below h at the cutoff (h decreases in lambda)
        double tail_lower = std::sqrt(cut) - h_wrap(rmrr.r, cut);
        if (tail_lower >= found) return found;
        cut *= 4.0;
    }
    throw std::runtime_error("min_block_eigen: tail certificate failed to close");
}

PerturbationCheck perturbation_bound(const SpectralMap& a, const SpectralMap& k,
                                     const CrossSection& y, const EngineOptions& opt) {
    if (!a.has_asymptotics()) throw MissingAsymptoticsError("perturbation_bound: A lacks asymptotics");
    if (k.remainder_rate <= 0.0)
        throw std::invalid_argument("perturbation_bound: K needs a declared trace-class decay rate");
    // run on the nonzero part of the spectrum (A is an invertible multiplier there)
    double need = 50.0 / k.remainder_rate;
    double cut = std::max(opt.cutoff, need * need);
    std::vector<EigenEntry> spectrum =
        y.finitely_enumerable() ? y.complete_spectrum() : y.enumerate(cut).entries;

    // lambda0 is the model's spectral gap (smallest nonzero eigenvalue); the
    // trace bound Tr(K)/(2 lambda0) is stated against it
    double lambda0 = std::numeric_limits<double>::infinity();
    double a_min = std::numeric_limits<double>::infinity();
    KahanSum<double> trace;
    KahanSum<Complex> shift_sum;  // log Det(A+K) - log Det A fiberwise
    for (const EigenEntry& e : spectrum) {
        if (e.lambda == 0.0) continue;
        Complex av = a.eval(e.lambda), kv = k.eval(e.lambda);
        lambda0 = std::min(lambda0, e.lambda);
        a_min = std::min(a_min, std::abs(av));
        trace.add(e.multiplicity * kv.real());
        shift_sum.add(static_cast<double>(e.multiplicity) * std::log(1.0 + kv / av));
    }
    double tail = k.remainder_amp * y.exp_sqrt_tail_bound(k.remainder_rate, cut);
    double trace_k = trace.value() + tail;
    if (!(a_min > 0.0)) throw KernelError("perturbation_bound: A not invertible on the spectrum");

    PerturbationCheck out;
    out.trace_k = trace_k;
    out.lambda0 = lambda0;
    out.a_min = a_min;
    out.bound = trace_k / (2.0 * lambda0);
    out.actual = std::abs(shift_sum.value());
    return out;
}

}  // namespace zetaglue
