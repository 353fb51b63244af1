#pragma once

#include <Eigen/Dense>

#include "drc/errors.hpp"
#include "drc/graph.hpp"

namespace drc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dense matrix bundle derived from a connected graph. Q is the localized
// projection I - S(I+A) = S*L: each row is computable by an agent from its
// own degree and neighbor differences, unlike the exact centering projector
// proj_null = 1*1^T/n.
struct GraphMatrices {
    int n = 0;
    Matrix adjacency;             // A
    Matrix degree;                // D
    Matrix laplacian;             // L = D - A
    Matrix scaling;               // S = (I + D)^{-1}
    Matrix localized_projection;  // Q = I - S(I+A)
    Matrix proj_col;              // P_L, projector onto col(L)
    Matrix proj_null;             // I - P_L
};

inline GraphMatrices build_matrices(const Graph& g) {
    if (!is_connected(g)) throw validation_error("matrices: graph is not connected");
    const int n = g.n;
    GraphMatrices gm;
    gm.n = n;
    gm.adjacency = Matrix::Zero(n, n);
    for (auto [i, j] : g.edges) {
        gm.adjacency(i, j) = 1.0;
        gm.adjacency(j, i) = 1.0;
    }
    gm.degree = gm.adjacency.rowwise().sum().asDiagonal();
    gm.laplacian = gm.degree - gm.adjacency;
    gm.scaling = (1.0 / (gm.degree.diagonal().array() + 1.0)).matrix().asDiagonal();
    gm.localized_projection =
        Matrix::Identity(n, n) - gm.scaling * (Matrix::Identity(n, n) + gm.adjacency);

    // P_L from the spectral decomposition of L: sum of v v^T over nonzero modes.
    Eigen::SelfAdjointEigenSolver<Matrix> es(gm.laplacian);
    if (es.info() != Eigen::Success) throw numeric_error("matrices: eigensolver failed on L");
    const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
    const double ztol = 1e-9 * std::max(1.0, lmax);
    gm.proj_col = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
        if (std::abs(es.eigenvalues()(k)) > ztol)
            gm.proj_col += es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose();
    gm.proj_null = Matrix::Identity(n, n) - gm.proj_col;
    return gm;
}

} // namespace drc
