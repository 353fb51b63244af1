#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "drc/errors.hpp"
#include "drc/matrices.hpp"

namespace drc {

// |Re lambda| below this counts as zero when classifying inertia.
inline double inertia_zero_tol(double spectral_radius) {
    return 1e-9 * std::max(1.0, spectral_radius);
}

struct InertiaReport {
    int n_positive = 0;  // pi_+
    int n_negative = 0;  // pi_-
    int n_zero = 0;      // pi_0
    std::vector<std::complex<double>> eigenvalues;  // sorted by (Re, Im)
};

inline InertiaReport classify_eigenvalues(std::vector<std::complex<double>> ev) {
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    double rad = 0.0;
    for (const auto& z : ev) rad = std::max(rad, std::abs(z));
    const double tol = inertia_zero_tol(rad);
    InertiaReport r;
    r.eigenvalues = std::move(ev);
    for (const auto& z : r.eigenvalues) {
        if (std::abs(z.real()) < tol)
            ++r.n_zero;
        else if (z.real() > 0)
            ++r.n_positive;
        else
            ++r.n_negative;
    }
    return r;
}

// Symmetric eigendecomposition with symmetry/reconstruction contracts.
inline void symmetric_eigen(const Matrix& mat, Vector& eigenvalues, Matrix& eigenvectors) {
    if (mat.rows() != mat.cols()) throw validation_error("symmetric_eigen: matrix not square");
    if ((mat - mat.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw validation_error("symmetric_eigen: matrix not symmetric within 1e-10");
    Eigen::SelfAdjointEigenSolver<Matrix> es(mat);
    if (es.info() != Eigen::Success) throw numeric_error("symmetric_eigen: iteration failed");
    eigenvalues = es.eigenvalues();  // ascending
    eigenvectors = es.eigenvectors();
    const Matrix rec = eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
    if ((rec - mat).norm() > 1e-9 * std::max(1.0, mat.norm()))
        throw numeric_error("symmetric_eigen: reconstruction check failed");
}

// Spectrum of K Q by congruence: with C = (K S)^{1/2},
// K Q = K S L is similar to the symmetric C L C, so the spectrum is provably
// real and the symmetric solver applies.
inline InertiaReport inertia_of_kq(const Vector& k_diag, const GraphMatrices& gm) {
    if (k_diag.size() != gm.n) throw validation_error("inertia_of_kq: K dimension mismatch");
    for (int i = 0; i < k_diag.size(); ++i)
        if (!(k_diag(i) > 0.0))
            throw validation_error("inertia_of_kq: nonpositive gain k_" + std::to_string(i + 1));
    const Vector c = (k_diag.array() * gm.scaling.diagonal().array()).sqrt().matrix();
    const Matrix clc = c.asDiagonal() * gm.laplacian * c.asDiagonal();
    Vector evals;
    Matrix evecs;
    symmetric_eigen(clc, evals, evecs);
    std::vector<std::complex<double>> ev(evals.data(), evals.data() + evals.size());
    return classify_eigenvalues(std::move(ev));
}

// Block matrix of the error dynamics: [[A~, -I], [K(Q+qI), 0]], A~ = -L - mI.
inline Matrix error_system_matrix(const GraphMatrices& gm, const Vector& k_diag, double m,
                                  double q = 0.0) {
    if (!(m > 0.0)) throw validation_error("error_system_matrix: m must be > 0");
    if (q < 0.0) throw validation_error("error_system_matrix: q must be >= 0");
    if (k_diag.size() != gm.n) throw validation_error("error_system_matrix: K dimension mismatch");
    const int n = gm.n;
    Matrix a0 = Matrix::Zero(2 * n, 2 * n);
    a0.topLeftCorner(n, n) = -gm.laplacian - m * Matrix::Identity(n, n);
    a0.topRightCorner(n, n) = -Matrix::Identity(n, n);
    a0.bottomLeftCorner(n, n) =
        k_diag.asDiagonal() * (gm.localized_projection + q * Matrix::Identity(n, n));
    return a0;
}

// General (non-symmetric) spectrum, counted by real part.
inline InertiaReport classify_error_system(const Matrix& mat) {
    if (mat.rows() != mat.cols() || mat.rows() % 2 != 0)
        throw validation_error("classify_error_system: expected square even-dimension matrix");
    Eigen::EigenSolver<Matrix> es(mat, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw numeric_error("classify_error_system: QR iteration did not converge");
    std::vector<std::complex<double>> ev(es.eigenvalues().data(),
                                         es.eigenvalues().data() + es.eigenvalues().size());
    return classify_eigenvalues(std::move(ev));
}

// Spectrum of A~ = -L - mI is {-lambda_i(L) - m}, all negative.
inline InertiaReport check_hurwitz_atilde(const GraphMatrices& gm, double m) {
    if (!(m > 0.0)) throw validation_error("check_hurwitz_atilde: m must be > 0");
    const Matrix atilde = -gm.laplacian - m * Matrix::Identity(gm.n, gm.n);
    Vector evals;
    Matrix evecs;
    symmetric_eigen(atilde, evals, evecs);
    std::vector<std::complex<double>> ev(evals.data(), evals.data() + evals.size());
    return classify_eigenvalues(std::move(ev));
}

struct BoundReport {
    double mu = 0.0;
    double kappa = 0.0;           // carried through for the bound calculus
    double lmax_k_inv = 0.0;      // lambda_max(K^{-1})
    double r_min_eig = 0.0;       // lambda_min(R),    R = 2L + (2m - 1/mu) I
    double rbar_min_eig = 0.0;    // lambda_min(Rbar), Rbar = kappa I - K^{-1} - mu Qbar^T Qbar
    bool assumption_feasible = false;
    double c = 0.0;               // kappa w*^2 + lambda_max(K^{-1}) wdot*^2
    double nu_x = 0.0;
    double nu_w = 0.0;
    double epsilon = 0.0;         // ultimate bound, 1.001 x the strict lower bound
};

inline BoundReport check_assumption1(const GraphMatrices& gm, const Vector& k_diag, double m,
                                     double kappa, double mu) {
    if (!(m > 0.0) || !(kappa > 0.0) || !(mu > 0.0))
        throw validation_error("check_assumption1: gains m, kappa, mu must be > 0");
    if (k_diag.size() != gm.n) throw validation_error("check_assumption1: K dimension mismatch");
    for (int i = 0; i < k_diag.size(); ++i)
        if (!(k_diag(i) > 0.0)) throw validation_error("check_assumption1: nonpositive gain");
    const int n = gm.n;
    const Matrix r =
        2.0 * gm.laplacian + (2.0 * m - 1.0 / mu) * Matrix::Identity(n, n);
    const Matrix qbar = gm.scaling * (Matrix::Identity(n, n) + gm.adjacency);
    const Matrix k_inv = (1.0 / k_diag.array()).matrix().asDiagonal();
    const Matrix rbar =
        kappa * Matrix::Identity(n, n) - k_inv - mu * qbar.transpose() * qbar;

    BoundReport rep;
    rep.mu = mu;
    rep.kappa = kappa;
    rep.lmax_k_inv = (1.0 / k_diag.array()).maxCoeff();
    Vector evals;
    Matrix evecs;
    symmetric_eigen(r, evals, evecs);
    rep.r_min_eig = evals(0);
    const double r_tol = inertia_zero_tol(evals.cwiseAbs().maxCoeff());
    symmetric_eigen(rbar, evals, evecs);
    rep.rbar_min_eig = evals(0);
    const double rbar_tol = inertia_zero_tol(evals.cwiseAbs().maxCoeff());
    // strict positive definiteness, decided away from the roundoff knife edge
    rep.assumption_feasible = rep.r_min_eig > r_tol && rep.rbar_min_eig > rbar_tol;
    return rep;
}

// mu is a free analysis parameter; scan a coarse grid and keep the mu with the best
// lambda_min(Rbar), preferring feasible candidates.
inline BoundReport check_assumption1_grid(const GraphMatrices& gm, const Vector& k_diag, double m,
                                          double kappa) {
    BoundReport best;
    bool first = true;
    for (int k = -3; k <= 1; ++k) {
        const BoundReport rep = check_assumption1(gm, k_diag, m, kappa, std::pow(10.0, k));
        const bool better = first ||
                            (rep.assumption_feasible && !best.assumption_feasible) ||
                            (rep.assumption_feasible == best.assumption_feasible &&
                             rep.rbar_min_eig > best.rbar_min_eig);
        if (better) best = rep;
        first = false;
    }
    return best;
}

// Ultimate-bound calculus on a feasible report.
inline BoundReport ultimate_bound(BoundReport rep, double w_star, double wdot_star) {
    if (!rep.assumption_feasible)
        throw validation_error("ultimate_bound: feasibility check failed for the given gains");
    if (w_star < 0.0 || wdot_star < 0.0)
        throw validation_error("ultimate_bound: disturbance bounds must be >= 0");
    rep.c = rep.kappa * w_star * w_star + rep.lmax_k_inv * wdot_star * wdot_star;
    rep.nu_x = std::sqrt(rep.c / rep.r_min_eig);
    rep.nu_w = std::sqrt(rep.c / rep.rbar_min_eig);
    const double rhs = std::sqrt(rep.nu_x * rep.nu_x + rep.lmax_k_inv * rep.nu_w * rep.nu_w);
    rep.epsilon = 1.001 * rhs;
    return rep;
}

} // namespace drc
