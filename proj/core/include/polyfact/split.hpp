#pragma once

#include <cstdint>
#include <optional>

#include "polyfact/linalg.hpp"
#include "polyfact/metric.hpp"
#include "polyfact/structure.hpp"

namespace polyfact {

// Internal retry signal: the root set of a squarefree part contains a cluster
// tighter than the layered tolerance allows, so multiplicity detection above
// must be rerun with a looser gcd tolerance.
struct ClusterCollision : Error {
    using Error::Error;
};

struct SplitResult {
    std::vector<MultiPoly> factors;  // unit norm
    int nullity = 0;
    RankDecision diagnostics;
    double residual = 0.0;  // relative, of the scaled product against the input
};

// Roots of a squarefree univariate polynomial via the balanced companion
// matrix; factors are x - r_i.
SplitResult univariate_split(const MultiPoly& h, double tol);

// Matrix of the map (g, h) -> f*(dg/dy - dh/dx) - (g*df/dy - h*df/dx) with
// g bounded by (m-1, n) and h by (m, n-1); its nullity counts the irreducible
// factors of a squarefree bivariate f of degree (m, n).
DenseMatrix ruppert_matrix(const MultiPoly& f);

// Splits a squarefree bivariate polynomial into irreducible approximations:
// nullspace of the Ruppert matrix, eigenvalues of a multiplication map
// assembled by least squares, then one gcd per eigenvalue.
SplitResult ruppert_split(const MultiPoly& f, double tol, std::uint64_t seed = 0);

// Stage one: squarefree separation followed by per-part splitting; returns
// the detected structure and initial factor approximations.  With a hint the
// detection is skipped and initial factors are fit by alternating least
// squares at the hinted degrees.
std::pair<FactorStructure, Factorization> identify_structure(
    const MultiPoly& f, double eps, std::uint64_t seed,
    const std::optional<FactorStructure>& hint = std::nullopt, int max_retries = 3);

// Alternating-least-squares initial factors for an arbitrary structure,
// seeded from random unit polynomials.  Used by hint mode and the
// per-structure oracle.
Factorization als_initial(const MultiPoly& f, const FactorStructure& S,
                          std::uint64_t seed, int starts = 4, int sweeps = 12);

}  // namespace polyfact
