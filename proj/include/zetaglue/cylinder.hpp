#pragma once

#include <optional>

#include "zetaglue/zeta.hpp"

namespace zetaglue {

enum class BoundaryCondition { dirichlet, neumann, absolute, relative };

// -d_u^2 + Delta_Y (+ shift) on [0, length] x Y. Absolute/relative apply only
// through the form-graded entry point; plain cylinders take Dirichlet/Neumann.
struct CylinderOp {
    CrossSection cross_section = CrossSection::point();
    double length = 1.0;
    BoundaryCondition bc_left = BoundaryCondition::dirichlet;
    BoundaryCondition bc_right = BoundaryCondition::dirichlet;
    RayShift shift{};
    std::optional<int> form_degree;
};

// Zeta determinant of -d_u^2 + lambda + z on [0, L] for one fiber.
// Dirichlet-Dirichlet: 2 sinh(mu L)/mu; Dirichlet-Neumann: 2 cosh(mu L);
// mu = sqrt(lambda + z), with the mu -> 0 limits 2L and 2.
Complex interval_log_det(double length, double lambda, BoundaryCondition left,
                         BoundaryCondition right, Complex z = Complex(0.0));

// Fiber-factorized regularization: L * (reg sum of mu_k) + convergent wrap
// terms - (reg sum of log mu_k) [Dirichlet pairs], plus explicit zero-mode
// factors. Complex shifts evaluate the mu-sum as a Gamma-weighted finite
// part, which is exactly the normalization the double-spectrum route uses.
Complex cylinder_log_det(const CylinderOp& op, const EngineOptions& opt = {});

// Independent oracle path: enumerate the double spectrum (interval mode +
// fiber eigenvalue) and run the continuation engine on the product heat data.
Complex cylinder_log_det_2d(const CylinderOp& op, const EngineOptions& opt = {});

// Form-graded cylinder with Dirichlet at the far end and absolute, relative
// or Dirichlet condition at Y_0; reduces blockwise to scalar cylinders over
// the degree-q and du-wedge components.
double form_cylinder_log_det(const CylinderOp& op, const EngineOptions& opt = {});

// The product spectral model behind the 2d route (exposed for tests).
SpectralModel interval_product_model(const CrossSection& y, double length, bool mixed_bc,
                                     double cutoff);

}  // namespace zetaglue
