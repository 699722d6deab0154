#pragma once

#include <Eigen/Dense>
#include <memory>

#include "zetaglue/cylinder.hpp"
#include "zetaglue/zeta.hpp"

namespace zetaglue {

// Dirichlet-to-Neumann families as eigenvalue-wise maps. Scalar families
// expand to a SpectralMap directly; the two-interface family is a 2x2 block
// per fiber and enters determinants through its exact per-fiber determinant.
struct DtnFamily {
    enum class Kind {
        q_cylinder,  // one-sided map of a cylinder of length `a`, far end bc
        r_join,      // Q_1 + Q_2 for two cylinders of lengths a, b
        r_nr,        // jump map of the stretched tube [-r, r]
        r_m1r,       // one-sided map with collar of width r glued on
        r_mrr,       // 2x2 block map on the pair of cut interfaces
        rq_tanh,     // graded branch: Q + mu tanh(mu r)  (absolute, degree-q part)
        rq_coth      // graded branch: Q + mu coth(mu r)  (du-wedge / relative part)
    };
    Kind kind = Kind::q_cylinder;
    double a = 1.0;  // q_cylinder / r_join lengths
    double b = 1.0;
    BoundaryCondition far_bc = BoundaryCondition::dirichlet;
    double r = 1.0;
    std::shared_ptr<SpectralMap> q1, q2;  // component maps where applicable
    Complex shift{0.0, 0.0};              // additive spectral shift (q_cylinder)

    static DtnFamily q_cylinder(double length, BoundaryCondition far_bc, Complex shift = Complex(0.0));
    static DtnFamily r_join(double a, double b);
    static DtnFamily r_nr(double r);
    static DtnFamily r_m1r(double r, SpectralMap q1);
    // the second-sided map has the same closed form with Q_2 in place of Q_1
    static DtnFamily r_m2r(double r, SpectralMap q2);
    static DtnFamily r_mrr(double r, SpectralMap q1, SpectralMap q2);
    static DtnFamily rq_tanh(double r, SpectralMap q);
    static DtnFamily rq_coth(double r, SpectralMap q);
};

// Eigenvalue of a scalar family at a fiber (lambda >= 0; lambda = 0 takes the
// declared kernel branch).
Complex dtn_eigenvalue(const DtnFamily& family, double lambda);

// Fiber matrix of the block family (r_mrr only).
Eigen::Matrix2cd dtn_block(const DtnFamily& family, double lambda);

// Expand a family to a spectral map with declared asymptotics; r_mrr expands
// to its per-fiber 2x2 determinant (order 2, constant 4).
SpectralMap dtn_to_map(const DtnFamily& family);

// Regularized log-determinant over a cross-section.
Complex dtn_log_det(const DtnFamily& family, const CrossSection& y, const EngineOptions& opt = {});

// Minimum block eigenvalue of r_mrr over fibers <= cutoff, with a Gershgorin
// tail certificate that fibers above the cutoff cannot go lower.
double min_block_eigen(const DtnFamily& rmrr, const CrossSection& y, double cutoff);

// The first-order trace bound Tr(K)/(2 lambda_0) against the measured
// determinant shift |log Det(A+K) - log Det A|. lambda0 is the model's
// spectral gap; a_min (the smallest |A| eigenvalue) is reported alongside.
struct PerturbationCheck {
    double bound;
    double actual;
    double trace_k;
    double lambda0;
    double a_min;
};
PerturbationCheck perturbation_bound(const SpectralMap& a, const SpectralMap& k,
                                     const CrossSection& y, const EngineOptions& opt = {});

// g_r and h_r wrap corrections of the stretched-tube maps.
double g_wrap(double r, double lambda);  // 4 sqrt(x) e^{-2r sqrt(x)} / (1 - e^{-2r sqrt(x)})
double h_wrap(double r, double lambda);  // 2 sqrt(x) / (e^{2r sqrt(x)} - e^{-2r sqrt(x)})

}  // namespace zetaglue
