#include <doctest.h>

#include "oracles.hpp"
#include "zetaglue/cylinder.hpp"

using namespace zetaglue;

TEST_CASE("interval determinants, closed forms") {
    using BC = BoundaryCondition;
    CHECK(interval_log_det(1.0, 0.0, BC::dirichlet, BC::dirichlet).real() ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    // Gelfand-Yaglom value log(sinh 2)
    CHECK(interval_log_det(1.0, 4.0, BC::dirichlet, BC::dirichlet).real() ==
          doctest::Approx(1.2883673726141681).epsilon(1e-13));
    CHECK(interval_log_det(1.0, 0.0, BC::dirichlet, BC::neumann).real() ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(interval_log_det(3.0, 0.0, BC::dirichlet, BC::dirichlet).real() ==
          doctest::Approx(std::log(6.0)).epsilon(1e-14));
    CHECK_THROWS_AS(interval_log_det(1.0, 1.0, BC::neumann, BC::neumann), std::invalid_argument);
    CHECK_THROWS_AS(interval_log_det(1.0, 1.0, BC::absolute, BC::dirichlet), std::invalid_argument);
}

TEST_CASE("interval determinants against the ODE oracle") {
    using BC = BoundaryCondition;
    for (double L : {0.5, 1.0, 2.5}) {
        for (Complex w : {Complex(0.3), Complex(4.0), Complex(2.0, 3.0), Complex(0.0, 1.0)}) {
            Complex dd = interval_log_det(L, 0.0, BC::dirichlet, BC::dirichlet, w);
            CHECK(std::abs(dd - std::log(oracles::gy_interval_det(L, w, false))) < 1e-8);
            Complex dn = interval_log_det(L, 0.0, BC::dirichlet, BC::neumann, w);
            CHECK(std::abs(dn - std::log(oracles::gy_interval_det(L, w, true))) < 1e-8);
        }
    }
}

TEST_CASE("mu -> 0 continuity") {
    using BC = BoundaryCondition;
    const double L = 1.5;
    for (int j = 4; j <= 9; ++j) {
        double lam = std::pow(10.0, -j);
        double gap = std::abs(interval_log_det(L, lam, BC::dirichlet, BC::dirichlet).real() -
                              std::log(2.0 * L));
        // the determinant itself moves like lam L^2/6 near the limit
        CHECK(gap <= lam * L * L / 6.0 * 1.01 + 1e-12);
    }
    CHECK(std::abs(interval_log_det(L, 1e-9, BC::dirichlet, BC::dirichlet).real() -
                   std::log(2.0 * L)) < 1e-9);
}

TEST_CASE("cylinder determinants: eta oracle and the 2d route") {
    CylinderOp op;
    op.cross_section = CrossSection::circle(2.0 * M_PI, 0.0);
    op.length = M_PI;
    // 2 log eta(i), eta(i) = Gamma(1/4) / (2 pi^{3/4})
    double eta = 2.0 * (std::lgamma(0.25) - std::log(2.0) - 0.75 * std::log(M_PI));
    CHECK(cylinder_log_det(op).real() == doctest::Approx(eta).epsilon(1e-10));
    CHECK(cylinder_log_det_2d(op).real() == doctest::Approx(eta).epsilon(1e-10));
}

TEST_CASE("factorized vs double-spectrum across models") {
    std::vector<CrossSection> fibers{
        CrossSection::point(), CrossSection::circle(2.0 * M_PI, 0.0),
        CrossSection::circle(2.0 * M_PI, 0.5), CrossSection::shifted_integers(0.25)};
    for (const CrossSection& y : fibers) {
        for (double L : {1.0, M_PI}) {
            CylinderOp op;
            op.cross_section = y;
            op.length = L;
            CHECK(std::abs(cylinder_log_det(op) - cylinder_log_det_2d(op)) <= 1e-8);
            op.bc_right = BoundaryCondition::neumann;
            CHECK(std::abs(cylinder_log_det(op) - cylinder_log_det_2d(op)) <= 1e-8);
        }
    }
}

TEST_CASE("factorized vs double-spectrum with complex shifts") {
    for (double theta : {M_PI / 2.0, -M_PI / 2.0, M_PI / 4.0}) {
        for (const CrossSection& y :
             {CrossSection::point(), CrossSection::circle(2.0 * M_PI, 0.5),
              CrossSection::circle(2.0 * M_PI, 0.0)}) {
            CylinderOp op;
            op.cross_section = y;
            op.length = 2.0;
            op.shift = RayShift::make(theta, 1.0);
            Complex fact = cylinder_log_det(op), dd = cylinder_log_det_2d(op);
            CHECK(std::abs(fact - dd) <= 1e-8);
        }
    }
    // point fiber has the interval closed form as a third route
    CylinderOp op;
    op.length = 1.5;
    op.shift = RayShift::make(M_PI / 2.0, 2.0);
    Complex closed = interval_log_det(1.5, 0.0, BoundaryCondition::dirichlet,
                                      BoundaryCondition::dirichlet, op.shift.unrotated_z());
    CHECK(std::abs(cylinder_log_det(op) - closed) < 1e-10);
}

TEST_CASE("monotone in length for the point fiber") {
    double last = -1e300;
    for (double L : {0.5, 1.0, 2.0, 4.0}) {
        CylinderOp op;
        op.length = L;
        double v = cylinder_log_det(op).real();
        CHECK(v > last);
        CHECK(v == doctest::Approx(std::log(2.0 * L)).epsilon(1e-13));
        last = v;
    }
}

TEST_CASE("graded cylinders") {
    // point fiber, q = 1, relative: only the du-wedge block survives with
    // Dirichlet-Neumann ends, Det = 2
    CylinderOp op;
    op.cross_section = CrossSection::point();
    op.length = 1.0;
    op.bc_right = BoundaryCondition::relative;
    op.form_degree = 1;
    CHECK(form_cylinder_log_det(op) == doctest::Approx(std::log(2.0)).epsilon(1e-13));

    // twisted circle at q = 0: absolute reduces to a Dirichlet-Neumann cylinder
    CrossSection tw = CrossSection::circle(2.0 * M_PI, 0.5);
    op.cross_section = tw;
    op.length = M_PI;
    op.form_degree = 0;
    op.bc_right = BoundaryCondition::absolute;
    CylinderOp dn;
    dn.cross_section = tw;
    dn.length = M_PI;
    dn.bc_right = BoundaryCondition::neumann;
    CHECK(form_cylinder_log_det(op) ==
          doctest::Approx(cylinder_log_det(dn).real()).epsilon(1e-12));

    // degree-0/1 symmetry of the twisted circle: abs(q=1) - rel(q=1) = 0
    op.form_degree = 1;
    double abs1 = form_cylinder_log_det(op);
    op.bc_right = BoundaryCondition::relative;
    double rel1 = form_cylinder_log_det(op);
    CHECK(abs1 - rel1 == doctest::Approx(0.0).epsilon(1e-12));

    // blockwise identity: abs - Dirichlet difference is the scalar-block one
    op.bc_right = BoundaryCondition::absolute;
    op.form_degree = 0;
    double abs0 = form_cylinder_log_det(op);
    op.bc_right = BoundaryCondition::dirichlet;
    double dir0 = form_cylinder_log_det(op);
    CylinderOp dd;
    dd.cross_section = tw;
    dd.length = M_PI;
    CHECK(abs0 - dir0 ==
          doctest::Approx((cylinder_log_det(dn) - cylinder_log_det(dd)).real()).epsilon(1e-12));
}
