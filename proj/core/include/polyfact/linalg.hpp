#pragma once

#include <Eigen/Core>
#include <functional>

namespace polyfact {

using DenseMatrix = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Record of a rank-revealing decision: how many singular values pass the
// relative threshold and how sharp the gap at the cut is.
struct RankDecision {
    int rank = 0;
    Eigen::VectorXd singular_values;  // descending
    double gap_ratio = 0.0;           // sigma_rank / sigma_{rank+1}, inf if full
    double tolerance_used = 0.0;
};

// argmin ||Ax - b||_2; minimum-norm minimizer when A is rank deficient.
Vec lstsq_min_norm(const DenseMatrix& A, const Vec& b);

Eigen::VectorXd singular_values(const DenseMatrix& A);
RankDecision svd_rank(const DenseMatrix& A, double tol);

// Orthonormal basis (columns) of the numerical right nullspace at the given
// relative tolerance.
DenseMatrix nullspace(const DenseMatrix& A, double tol);
// One SVD for both the rank decision and the nullspace basis.
std::pair<RankDecision, DenseMatrix> svd_nullspace(const DenseMatrix& A, double tol);

Vec eig_dense(const DenseMatrix& A);
std::pair<Vec, DenseMatrix> eig_dense_vectors(const DenseMatrix& A);

double min_singular(const DenseMatrix& A);

// Plain Gauss-Newton driver shared by the nonlinear least-squares solvers.
// Stops when the residual falls below abs_floor, stops decreasing by the
// stagnation ratio, or grows past divergence_factor times the initial value.
struct GNOptions {
    int max_iter = 50;
    double stagnation_ratio = 0.5;
    double abs_floor = 0.0;
    double divergence_factor = 10.0;
};

struct GNRun {
    Vec z;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;  // monotone decrease until stagnation or floor
    bool diverged = false;
};

GNRun gn_minimize(const std::function<Vec(const Vec&)>& residual,
                  const std::function<DenseMatrix(const Vec&)>& jacobian,
                  const Vec& z0, const GNOptions& opts);

}  // namespace polyfact
