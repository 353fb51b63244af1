#include <catch2/catch_amalgamated.hpp>

#include "drc/matrices.hpp"
#include "drc/selfcheck.hpp"
#include "drc/spectral.hpp"

using namespace drc;

namespace {
GraphMatrices c6() { return build_matrices(cycle_graph(6)); }
}

TEST_CASE("symmetric_eigen rejects non-symmetric input and reconstructs") {
    Matrix bad(2, 2);
    bad << 1, 2, 3, 4;
    Vector evals;
    Matrix evecs;
    CHECK_THROWS_AS(symmetric_eigen(bad, evals, evecs), validation_error);
    CHECK_THROWS_AS(symmetric_eigen(Matrix::Zero(2, 3), evals, evecs), validation_error);

    Matrix sym(3, 3);
    sym << 2, -1, 0, -1, 2, -1, 0, -1, 2;
    symmetric_eigen(sym, evals, evecs);
    REQUIRE(evals.size() == 3);
    CHECK(evals(0) <= evals(1));
    CHECK(evals(1) <= evals(2));
    const Matrix rec = evecs * evals.asDiagonal() * evecs.transpose();
    CHECK((rec - sym).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("inertia classification uses the scaled zero tolerance") {
    const InertiaReport tiny = classify_eigenvalues({{1e-12, 0.0}, {1.0, 0.0}});
    CHECK(tiny.n_zero == 1);
    CHECK(tiny.n_positive == 1);
    const InertiaReport split = classify_eigenvalues({{-2.0, 0.0}, {3e-9, 0.0}, {1.0, 0.0}});
    CHECK(split.n_negative == 1);
    CHECK(split.n_positive == 2);  // 3e-9 is above 1e-9 * max(1, 2)
    CHECK(split.eigenvalues.front().real() == -2.0);  // sorted ascending by real part
}

TEST_CASE("K Q spectrum on the six-cycle with K = 100 I") {
    const InertiaReport rep = inertia_of_kq(Vector::Constant(6, 100.0), c6());
    CHECK(rep.n_positive == 5);
    CHECK(rep.n_negative == 0);
    CHECK(rep.n_zero == 1);
    const double expect[] = {0.0,   100.0 / 3.0, 100.0 / 3.0,
                             100.0, 100.0,       400.0 / 3.0};
    REQUIRE(rep.eigenvalues.size() == 6);
    for (int i = 0; i < 6; ++i) {
        CHECK(rep.eigenvalues[i].imag() == 0.0);
        CHECK(rep.eigenvalues[i].real() == Catch::Approx(expect[i]).margin(1e-9));
    }
    CHECK_THROWS_AS(inertia_of_kq(Vector::Constant(5, 1.0), c6()), validation_error);
    CHECK_THROWS_AS(inertia_of_kq(Vector::Zero(6), c6()), validation_error);
}

TEST_CASE("K Q inertia is (n-1, 0, 1) across random graphs") {
    const CheckResult r = selfcheck::kq_inertia_signature(7);
    INFO(r.detail);
    CHECK(r.ok);
}

TEST_CASE("congruence route agrees with the direct eigensolver") {
    const CheckResult r = selfcheck::congruence_route_agreement(7);
    INFO(r.detail);
    CHECK(r.ok);
}

TEST_CASE("error system matrix has the documented block layout") {
    const GraphMatrices gm = build_matrices(path_graph(2));
    Vector k(2);
    k << 3.0, 4.0;
    const Matrix a0 = error_system_matrix(gm, k, 2.0, 0.5);
    const Matrix I = Matrix::Identity(2, 2);
    CHECK((a0.topLeftCorner(2, 2) - (-gm.laplacian - 2.0 * I)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a0.topRightCorner(2, 2) + I).cwiseAbs().maxCoeff() == 0.0);
    const Matrix bl_expect = k.asDiagonal() * (gm.localized_projection + 0.5 * I);
    CHECK((a0.bottomLeftCorner(2, 2) - bl_expect).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a0.bottomRightCorner(2, 2).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(error_system_matrix(gm, k, 0.0), validation_error);
    CHECK_THROWS_AS(error_system_matrix(gm, k, 1.0, -0.1), validation_error);
    CHECK_THROWS_AS(error_system_matrix(gm, Vector::Ones(3), 1.0), validation_error);
}

TEST_CASE("six-cycle error system: marginal for q = 0, Hurwitz for q > 0") {
    const GraphMatrices gm = c6();
    const Vector k = Vector::Constant(6, 100.0);

    const Matrix a0 = error_system_matrix(gm, k, 5.0, 0.0);
    const InertiaReport rep = classify_error_system(a0);
    CHECK(rep.n_zero == 1);
    CHECK(rep.n_negative == 11);
    CHECK(rep.n_positive == 0);

    Vector null_vec(12);
    null_vec.head(6).setOnes();
    null_vec.tail(6).setConstant(-5.0);
    CHECK((a0 * null_vec).cwiseAbs().maxCoeff() < 1e-9);

    const InertiaReport damped = classify_error_system(error_system_matrix(gm, k, 5.0, 0.025));
    CHECK(damped.n_negative == 12);
    CHECK(damped.n_zero == 0);

    CHECK_THROWS_AS(classify_error_system(Matrix::Zero(3, 3)), validation_error);
}

TEST_CASE("error system inertia across random graphs") {
    const CheckResult q0 = selfcheck::error_system_inertia(7);
    INFO(q0.detail);
    CHECK(q0.ok);
    const CheckResult qpos = selfcheck::constpoint_inertia(7);
    INFO(qpos.detail);
    CHECK(qpos.ok);
}

TEST_CASE("shifted Laplacian spectrum on the six-cycle") {
    const InertiaReport rep = check_hurwitz_atilde(c6(), 5.0);
    const double expect[] = {-9.0, -8.0, -8.0, -6.0, -6.0, -5.0};
    REQUIRE(rep.eigenvalues.size() == 6);
    for (int i = 0; i < 6; ++i)
        CHECK(rep.eigenvalues[i].real() == Catch::Approx(expect[i]).margin(1e-9));
    CHECK(rep.n_negative == 6);

    const CheckResult r = selfcheck::shifted_laplacian_hurwitz(7);
    INFO(r.detail);
    CHECK(r.ok);
}

TEST_CASE("gain feasibility check at an explicit mu") {
    const GraphMatrices gm = c6();
    const Vector k = Vector::Constant(6, 100.0);

    // R = 2L + 5I and Rbar = (2 - 0.01)I - 0.2 (I+A)^2/9 have exact extremes.
    const BoundReport rep = check_assumption1(gm, k, 5.0, 2.0, 0.2);
    CHECK(rep.r_min_eig == Catch::Approx(5.0).epsilon(1e-12));
    CHECK(rep.rbar_min_eig == Catch::Approx(1.79).epsilon(1e-12));
    CHECK(rep.lmax_k_inv == Catch::Approx(0.01).epsilon(1e-15));
    CHECK(rep.assumption_feasible);

    // the stock low-damping gains can never satisfy Rbar > 0: kappa < lmax(K^{-1})
    for (double mu : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
        const BoundReport weak = check_assumption1(gm, k, 5.0, 0.0025, mu);
        CHECK_FALSE(weak.assumption_feasible);
        CHECK_THROWS_AS(ultimate_bound(weak, 1.0, 1.0), validation_error);
    }

    CHECK_THROWS_AS(check_assumption1(gm, k, 5.0, 0.0, 0.1), validation_error);
    CHECK_THROWS_AS(check_assumption1(gm, k, 5.0, 2.0, 0.0), validation_error);
}

TEST_CASE("mu grid prefers feasible candidates") {
    const GraphMatrices gm = c6();
    const Vector k = Vector::Constant(6, 100.0);
    const BoundReport rep = check_assumption1_grid(gm, k, 5.0, 2.0);
    CHECK(rep.assumption_feasible);
    CHECK(rep.mu == Catch::Approx(1.0));
    CHECK(rep.r_min_eig == Catch::Approx(9.0).epsilon(1e-12));
    CHECK(rep.rbar_min_eig == Catch::Approx(0.99).epsilon(1e-10));

    const BoundReport weak = check_assumption1_grid(gm, k, 5.0, 0.0025);
    CHECK_FALSE(weak.assumption_feasible);
}

TEST_CASE("ultimate bound calculus") {
    const GraphMatrices gm = c6();
    const Vector k = Vector::Constant(6, 100.0);
    const BoundReport feas = check_assumption1(gm, k, 5.0, 2.0, 0.2);

    // sinusoid bank of Example 2: w* = sqrt(6), wdot* = sqrt(3.64)
    const double w_star = std::sqrt(6.0);
    const double wdot_star = std::sqrt(3.64);
    const BoundReport b = ultimate_bound(feas, w_star, wdot_star);
    CHECK(b.c == Catch::Approx(12.0364).epsilon(1e-12));
    CHECK(b.nu_x == Catch::Approx(1.5515411692894259).epsilon(1e-12));
    CHECK(b.nu_w == Catch::Approx(2.59311507844443).epsilon(1e-12));
    CHECK(b.epsilon == Catch::Approx(1.574634553647041).epsilon(1e-12));

    // the reported epsilon is exactly 1.001 x the norm composition
    const double rhs = std::sqrt(b.nu_x * b.nu_x + b.lmax_k_inv * b.nu_w * b.nu_w);
    CHECK(b.epsilon == 1.001 * rhs);

    CHECK_THROWS_AS(ultimate_bound(feas, -1.0, 0.0), validation_error);
}
