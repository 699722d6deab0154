#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zetaglue/numerics.hpp"

namespace zetaglue {

struct EigenEntry {
    double lambda;
    int multiplicity;
};

// Exhaustive, sorted eigenvalue list below a cutoff.
struct EigenvalueStream {
    std::vector<EigenEntry> entries;
    double cutoff = 0.0;
};

struct HeatTerm {
    double power;  // exponent p in b * r^p
    double coeff;
};

// Small-time expansion of the heat trace. Powers strictly increasing; the
// p = 0 coefficient equals zeta(0) + dim ker.
struct HeatExpansion {
    std::vector<HeatTerm> terms;
    int constant_index = -1;  // position of the p = 0 term, -1 if absent
};

// A model cross-section Y given by its explicit spectrum. Point and Circle
// carry closed forms; Explicit spectra come either as a finite list or as
// the generation rule lambda_n = n + beta; form grading resolves to either
// the base spectrum or the zero bundle.
class CrossSection {
  public:
    enum class Kind { point, circle, shifted_integers, finite_list, empty };

    static CrossSection point();
    static CrossSection circle(double circumference, double holonomy);
    // lambda_n = n + beta, n >= 0, each multiplicity 1 (beta > 0).
    static CrossSection shifted_integers(double beta);
    // Finite explicit list; exhaustive only up to max listed eigenvalue.
    static CrossSection finite_list(std::vector<EigenEntry> entries, int formal_dim);
    static CrossSection form_graded(const CrossSection& base, int degree);
    static CrossSection empty_bundle(int formal_dim);

    Kind kind() const { return kind_; }
    int dim_y() const { return dim_y_; }
    double circumference() const { return circumference_; }
    double holonomy() const { return holonomy_; }
    double beta() const { return beta_; }

    int kernel_dim() const;
    EigenvalueStream enumerate(double cutoff) const;

    // True when the whole spectrum is finitely listed (point, explicit list,
    // zero bundle); complete_spectrum then returns it without a cutoff.
    bool finitely_enumerable() const;
    std::vector<EigenEntry> complete_spectrum() const;

    double heat_trace(double r) const;

    // Tr e^{-w Delta} for complex w, Re w > 0.
    Complex heat_theta(Complex w) const;

    HeatExpansion heat_expansion() const;

    // theta(w) minus all declared expansion terms; exact dual-series forms
    // keep this cancellation-free at small |w|.
    Complex theta_remainder(Complex w) const;

    // Certified bound for sum_{lambda > cut} mult * e^{-c lambda}.
    double exp_tail_bound(double c, double cut) const;
    // Certified bound for sum_{lambda > cut} mult * e^{-c sqrt(lambda)}.
    double exp_sqrt_tail_bound(double c, double cut) const;
    // Certified bound for the full sum of mult * e^{-c sqrt(lambda)}.
    double sqrt_exp_trace_bound(double c) const;

    // Stable textual form for cache keys and reports.
    std::string descriptor() const;

  private:
    CrossSection() = default;
    Kind kind_ = Kind::point;
    int dim_y_ = 0;
    double circumference_ = 0.0;
    double holonomy_ = 0.0;
    double beta_ = 0.0;
    std::vector<EigenEntry> listed_;
    std::vector<double> bernoulli_coeffs_;  // c_j = B_j(1-beta)/j! for shifted rule
};

}  // namespace zetaglue
