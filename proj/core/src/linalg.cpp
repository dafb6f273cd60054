#include "polyfact/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <limits>

#include "polyfact/errors.hpp"

namespace polyfact {

Vec lstsq_min_norm(const DenseMatrix& A, const Vec& b) {
    if (A.rows() != b.size())
        throw DimensionError("least-squares dimension mismatch");
    Eigen::CompleteOrthogonalDecomposition<DenseMatrix> cod(A);
    return cod.solve(b);
}

Eigen::VectorXd singular_values(const DenseMatrix& A) {
    Eigen::JacobiSVD<DenseMatrix> svd(A);
    return svd.singularValues();
}

namespace {
RankDecision decide_rank(const Eigen::VectorXd& sv, double tol, Eigen::Index min_dim) {
    RankDecision rd;
    rd.singular_values = sv;
    rd.tolerance_used = tol;
    double s1 = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * s1) ++rank;
    if (s1 == 0.0) rank = 0;
    rd.rank = std::min<int>(rank, static_cast<int>(min_dim));
    if (rd.rank == 0 || rd.rank >= sv.size())
        rd.gap_ratio = std::numeric_limits<double>::infinity();
    else if (sv(rd.rank) == 0.0)
        rd.gap_ratio = std::numeric_limits<double>::infinity();
    else
        rd.gap_ratio = sv(rd.rank - 1) / sv(rd.rank);
    return rd;
}
}  // namespace

RankDecision svd_rank(const DenseMatrix& A, double tol) {
    return decide_rank(singular_values(A), tol, std::min(A.rows(), A.cols()));
}

std::pair<RankDecision, DenseMatrix> svd_nullspace(const DenseMatrix& A, double tol) {
    Eigen::JacobiSVD<DenseMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
    RankDecision rd = decide_rank(svd.singularValues(), tol, std::min(A.rows(), A.cols()));
    Eigen::Index nullity = A.cols() - rd.rank;
    return {rd, svd.matrixV().rightCols(nullity)};
}

DenseMatrix nullspace(const DenseMatrix& A, double tol) {
    return svd_nullspace(A, tol).second;
}

Vec eig_dense(const DenseMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("eigenvalues of a non-square matrix");
    Eigen::ComplexEigenSolver<DenseMatrix> es(A, /*computeEigenvectors=*/false);
    return es.eigenvalues();
}

std::pair<Vec, DenseMatrix> eig_dense_vectors(const DenseMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("eigenvalues of a non-square matrix");
    Eigen::ComplexEigenSolver<DenseMatrix> es(A, /*computeEigenvectors=*/true);
    return {es.eigenvalues(), es.eigenvectors()};
}

double min_singular(const DenseMatrix& A) {
    Eigen::VectorXd sv = singular_values(A);
    return sv.size() ? sv(sv.size() - 1) : 0.0;
}

GNRun gn_minimize(const std::function<Vec(const Vec&)>& residual,
                  const std::function<DenseMatrix(const Vec&)>& jacobian,
                  const Vec& z0, const GNOptions& opts) {
    GNRun run;
    Vec z = z0;
    Vec r = residual(z);
    double rn = r.norm();
    const double rn0 = rn;
    run.z = z;
    run.residual_norm = rn;
    run.converged = rn <= opts.abs_floor;
    bool monotone = true;

    for (int it = 0; it < opts.max_iter; ++it) {
        if (rn <= opts.abs_floor) {
            run.converged = monotone;
            break;
        }
        DenseMatrix J = jacobian(z);
        Vec z_next = z - lstsq_min_norm(J, r);
        Vec r_next = residual(z_next);
        double rn_next = r_next.norm();
        run.iterations = it + 1;
        if (rn_next < run.residual_norm) {
            run.z = z_next;
            run.residual_norm = rn_next;
        }
        if (rn_next > opts.divergence_factor * std::max(rn0, opts.abs_floor)) {
            run.diverged = true;
            break;
        }
        if (rn_next > opts.stagnation_ratio * rn) {
            // No longer contracting; the best iterate is the answer.
            run.converged = monotone;
            break;
        }
        if (rn_next > rn) monotone = false;
        z = std::move(z_next);
        r = std::move(r_next);
        rn = rn_next;
    }
    if (run.residual_norm <= opts.abs_floor) run.converged = monotone;
    return run;
}

}  // namespace polyfact
