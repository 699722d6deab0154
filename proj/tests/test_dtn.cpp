#include <doctest.h>

#include "zetaglue/dtn.hpp"
#include "zetaglue/errors.hpp"

using namespace zetaglue;

TEST_CASE("fiber eigenvalues of the Dirichlet-to-Neumann families") {
    // 2/r branch at the kernel
    CHECK(dtn_eigenvalue(DtnFamily::r_nr(2.0), 0.0).real() == doctest::Approx(1.0));
    // 2 sqrt(lambda) + 4 sqrt(lambda) e^{-r sqrt(lambda)}/(e^{r sqrt(lambda)} - e^{-r sqrt(lambda)})
    double e = std::exp(1.0);
    CHECK(dtn_eigenvalue(DtnFamily::r_nr(1.0), 1.0).real() ==
          doctest::Approx(2.0 + 4.0 / e / (e - 1.0 / e)).epsilon(1e-14));
    // linear solution across a length-2 tube with a far Dirichlet end
    CHECK(dtn_eigenvalue(DtnFamily::q_cylinder(2.0, BoundaryCondition::dirichlet), 0.0).real() ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(dtn_eigenvalue(DtnFamily::r_nr(1.0), -1.0), std::invalid_argument);
}

TEST_CASE("kernel block of the two-interface family") {
    double a = 2.0, b = 3.0, r = 1.5;
    DtnFamily f = DtnFamily::r_mrr(
        r, dtn_to_map(DtnFamily::q_cylinder(a, BoundaryCondition::dirichlet)),
        dtn_to_map(DtnFamily::q_cylinder(b, BoundaryCondition::dirichlet)));
    Eigen::Matrix2cd m = dtn_block(f, 0.0);
    CHECK(m(0, 0).real() == doctest::Approx(1.0 / a + 1.0 / (2.0 * r)));
    CHECK(m(1, 1).real() == doctest::Approx(1.0 / b + 1.0 / (2.0 * r)));
    CHECK(m(0, 1).real() == doctest::Approx(-1.0 / (2.0 * r)));
    CHECK(m(1, 0) == m(0, 1));
    // symmetric with real eigenvalues at every fiber
    for (double lam : {0.25, 1.0, 9.0}) {
        Eigen::Matrix2cd x = dtn_block(f, lam);
        CHECK(x(0, 1) == x(1, 0));
        CHECK(std::abs(x(0, 0).imag()) < 1e-15);
    }
}

TEST_CASE("decomposition: the jump map is the sum of one-sided maps") {
    DtnFamily join = DtnFamily::r_join(1.0, 2.5);
    DtnFamily q1 = DtnFamily::q_cylinder(1.0, BoundaryCondition::dirichlet);
    DtnFamily q2 = DtnFamily::q_cylinder(2.5, BoundaryCondition::dirichlet);
    for (double lam : {0.0, 0.3, 1.0, 16.0}) {
        CHECK(std::abs(dtn_eigenvalue(join, lam) -
                       (dtn_eigenvalue(q1, lam) + dtn_eigenvalue(q2, lam))) < 1e-14);
    }
}

TEST_CASE("positivity and decay") {
    DtnFamily q = DtnFamily::q_cylinder(1.5, BoundaryCondition::dirichlet);
    for (double lam : {0.0, 0.1, 1.0, 25.0, 300.0})
        CHECK(dtn_eigenvalue(q, lam).real() > 0.0);
    CHECK(dtn_eigenvalue(q, 0.0).real() == doctest::Approx(1.0 / 1.5));
    // strictly decreasing in r toward 2 sqrt(lambda)
    double lam = 2.0, last = 1e300;
    for (double r : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        double v = dtn_eigenvalue(DtnFamily::r_nr(r), lam).real();
        CHECK(v < last);
        CHECK(v > 2.0 * std::sqrt(lam));
        last = v;
    }
    CHECK(last == doctest::Approx(2.0 * std::sqrt(lam)).epsilon(1e-8));
}

TEST_CASE("smoothing remainder of the one-sided map") {
    double L = 1.25;
    DtnFamily q = DtnFamily::q_cylinder(L, BoundaryCondition::dirichlet);
    for (double lam : {0.5, 1.0, 4.0, 25.0}) {
        double mu = std::sqrt(lam);
        double rem = std::abs(dtn_eigenvalue(q, lam).real() - mu);
        double bound = 2.0 * mu * std::exp(-2.0 * mu * L) / (1.0 - std::exp(-2.0 * mu * L));
        // exactly attained (up to the cancellation in forming the difference)
        CHECK(std::abs(rem - bound) <= 1e-10 * (1.0 + mu));
    }
}

TEST_CASE("regularized determinants of the families") {
    // scalar map over the point: R = 1/a + 1/b = 2
    CHECK(dtn_log_det(DtnFamily::r_join(1.0, 1.0), CrossSection::point()).real() ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // stretched tube over the untwisted circle at r = 4: the kernel branch
    // contributes log(2/r), the rest is log(2 pi) - log 2 plus wrap terms
    double r = 4.0;
    CrossSection circle = CrossSection::circle(2.0 * M_PI, 0.0);
    double expected = std::log(2.0 * M_PI) - std::log(4.0);
    KahanSum<double> wrap;
    for (int n = 1; n < 40; ++n)
        wrap.add(2.0 * std::log(1.0 + g_wrap(r, double(n) * n) / (2.0 * n)));
    expected += wrap.value();
    CHECK(dtn_log_det(DtnFamily::r_nr(r), circle).real() ==
          doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("minimum block eigenvalue") {
    SpectralMap one;
    one.eval = [](double) { return Complex(1.0); };
    one.kernel_value = 1.0;
    one.asym_order = 0.0;
    one.asym_const = 1.0;
    // equal diagonal 1 + 1/2r, coupling 1/2r: eigenvalues {1, 1 + 1/r}
    CHECK(min_block_eigen(DtnFamily::r_mrr(1.0, one, one), CrossSection::point(), 10.0) ==
          doctest::Approx(1.0).epsilon(1e-13));
    SpectralMap half = one, third = one;
    half.kernel_value = 0.5;
    half.eval = [](double) { return Complex(0.5); };
    third.kernel_value = 1.0 / 3.0;
    third.eval = [](double) { return Complex(1.0 / 3.0); };
    CHECK(min_block_eigen(DtnFamily::r_mrr(1e7, half, third), CrossSection::point(), 10.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    // twisted circle with cylinder maps: positive (invertibility certificate)
    CrossSection tw = CrossSection::circle(2.0 * M_PI, 0.5);
    DtnFamily block = DtnFamily::r_mrr(
        2.0, dtn_to_map(DtnFamily::q_cylinder(1.0, BoundaryCondition::dirichlet)),
        dtn_to_map(DtnFamily::q_cylinder(1.0, BoundaryCondition::dirichlet)));
    CHECK(min_block_eigen(block, tw, 50.0) > 0.0);
}

TEST_CASE("perturbation bound") {
    CrossSection circle = CrossSection::circle(2.0 * M_PI, 0.0);
    SpectralMap a;
    a.eval = [](double lam) { return Complex(2.0 * std::sqrt(lam)); };
    a.kernel_value = 1.0;
    a.asym_order = 1.0;
    a.asym_const = 2.0;
    SpectralMap zero;
    zero.eval = [](double) { return Complex(0.0); };
    zero.remainder_rate = 1.0;
    PerturbationCheck none = perturbation_bound(a, zero, circle);
    CHECK(none.actual == doctest::Approx(0.0));
    CHECK(none.bound == doctest::Approx(0.0));

    for (double r : {2.0, 3.0}) {
        SpectralMap k;
        k.eval = [r](double lam) { return Complex(g_wrap(r, lam)); };
        k.remainder_rate = 2.0 * r;
        k.remainder_amp = 5.0;
        PerturbationCheck chk = perturbation_bound(a, k, circle);
        CHECK(chk.lambda0 == doctest::Approx(1.0));  // spectral gap of the model
        CHECK(chk.a_min == doctest::Approx(2.0));
        CHECK(chk.actual > 0.0);
        // the provable first-order estimate: actual <= Tr K / min|A|
        CHECK(chk.actual <= chk.trace_k / chk.a_min);
    }

    // one-fiber closed form: model eigenvalue 2, A(lambda) = lambda, K = 0.1
    CrossSection fiber = CrossSection::finite_list({{2.0, 1}}, 0);
    SpectralMap lin;
    lin.eval = [](double lam) { return Complex(lam); };
    lin.asym_order = 2.0;
    lin.asym_const = 1.0;
    SpectralMap delta;
    delta.eval = [](double) { return Complex(0.1); };
    delta.remainder_rate = 1.0;
    PerturbationCheck one = perturbation_bound(lin, delta, fiber);
    CHECK(one.actual == doctest::Approx(std::log(1.0 + 0.1 / 2.0)).epsilon(1e-13));
    CHECK(one.bound == doctest::Approx(0.1 / 4.0).epsilon(1e-13));

    SpectralMap untraced;
    untraced.eval = [](double) { return Complex(1.0); };
    CHECK_THROWS_AS(perturbation_bound(a, untraced, circle), std::invalid_argument);
}
