#pragma once

#include <string>
#include <vector>

#include "zetaglue/cylinder.hpp"
#include "zetaglue/dtn.hpp"
#include "zetaglue/extrapolate.hpp"

namespace zetaglue {

// The assembled geometry: M_1, M_2 are product cylinders of lengths a, b over
// the cross-section, each with a Dirichlet far end, glued along Y; the collar
// [-r, r] x Y stretches with r.
struct GeometryConfig {
    CrossSection cross_section = CrossSection::point();
    double length_a = 1.0;
    double length_b = 1.0;
    double r = 4.0;
    bool form_graded = false;
};

struct ReportRow {
    std::string identity;
    double r = std::numeric_limits<double>::quiet_NaN();
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    double residual = 0.0;
    double tolerance = std::numeric_limits<double>::quiet_NaN();  // NaN = informational
    bool pass = true;
    std::string note;
};

struct Report {
    std::vector<ReportRow> rows;
    bool all_pass() const;
};

struct Tolerances {
    double exact = 1e-10;        // closed-form identities
    double fixed_r = 1e-6;       // identities checked at one r
    double extrapolated = 1e-3;  // r -> infinity limits
};

// Surgery constant check at zero shift: log Det M - log Det M_1 - log Det M_2
// against -log2 (zeta_Y(0)+k) + log Det R.
Report check_gluing(const GeometryConfig& cfg, const Tolerances& tol = {},
                    const EngineOptions& opt = {});

// Squared-operator version at m = 2: conjugate shifts +-it on both sides.
Report check_power_gluing_m2(const GeometryConfig& cfg, double t, const Tolerances& tol = {},
                             const EngineOptions& opt = {});

enum class AdiabaticIdentity { cor42, thm14, cor151, cor152, cor47 };
const char* adiabatic_identity_name(AdiabaticIdentity id);

Report adiabatic_limit(const GeometryConfig& cfg, const std::vector<double>& r_grid,
                       AdiabaticIdentity id, const Tolerances& tol = {},
                       const EngineOptions& opt = {});

// Per-degree surgery rows at fixed r, the abs/rel/Dirichlet limit rows, the
// torsion-difference limit against log tau(Y), and the closed-model analog.
Report torsion_report(const GeometryConfig& cfg, const std::vector<double>& r_grid,
                      const Tolerances& tol = {}, const EngineOptions& opt = {});

// Fitted zero-coefficient experiments (large-shift expansions).
Report zero_coefficient_report(const GeometryConfig& cfg, const Tolerances& tol = {},
                               const EngineOptions& opt = {});

}  // namespace zetaglue
