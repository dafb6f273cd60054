#pragma once

#include <cstdint>

#include "polyfact/coeff.hpp"
#include "polyfact/linalg.hpp"
#include "polyfact/metric.hpp"
#include "polyfact/structure.hpp"

namespace polyfact {

// The scaled factorization map for one structure: unknowns are
// (gamma, [p_1], ..., [p_r]) and the residual stacks the coefficient match
// against [f] with the unit scaling constraints <b_i, p_i> = 1.
struct PhiSystem {
    std::vector<std::string> vars;
    TupleDegree m;          // total degree; residual block size is dim(m)
    Eigen::VectorXcd target;  // [f] packed at m
    double fnorm = 0.0;
    std::vector<TupleDegree> factor_degrees;
    std::vector<int> multiplicities;
    std::vector<Eigen::VectorXcd> scaling;  // unit vectors b_i
    std::uint64_t seed = 0;

    Eigen::Index unknowns() const;
    Eigen::Index residual_dim() const;
};

struct GNState {
    Vec z;
    double residual_norm = 0.0;
    int iteration = 0;
    bool converged = false;
    bool diverged = false;
};

// Builds the system from an initial factorization; factors are normalized and
// their packed images become the scaling vectors.
PhiSystem make_phi_system(const MultiPoly& f, const Factorization& initial,
                          std::uint64_t seed = 0);
Vec initial_state(const PhiSystem& sys, const MultiPoly& f, const Factorization& initial);

Vec phi_eval(const PhiSystem& sys, const Vec& z);
DenseMatrix jacobian(const PhiSystem& sys, const Vec& z);

struct RefineOptions {
    int max_iter = 50;
    double stagnation_ratio = 0.5;
    double abs_floor = 0.0;  // defaults to 1e2 * unit roundoff * ||f||
};

GNState gauss_newton(PhiSystem& sys, const Vec& z0, const RefineOptions& opts = {});

// Canonical representative of the computed class: scaling rows satisfied
// exactly, then gamma re-fit as the closed-form projection onto the product.
Factorization finalize_factorization(const PhiSystem& sys, const Vec& z,
                                     const MultiPoly& f);

// 1 / sigma_min of the Jacobian at z; infinity when singular.
double condition_number(const PhiSystem& sys, const Vec& z);

// Output of the whole pipeline; assembled by numerical_factor.
struct NumFactResult {
    Factorization factorization;
    double backward_error = 0.0;  // ||f - expand||
    double sin_backward = 0.0;
    FactorStructure structure;
    double condition_number = 0.0;
    int iterations = 0;
    bool converged = false;
};

}  // namespace polyfact
