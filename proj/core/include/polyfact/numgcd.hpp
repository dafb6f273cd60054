#pragma once

#include <cstdint>

#include "polyfact/linalg.hpp"
#include "polyfact/multipoly.hpp"

namespace polyfact {

// Numerical greatest common divisor: gcd normalized to unit norm, cofactors
// satisfying gcd*cof_p ~ p and gcd*cof_q ~ q within the reported relative
// residual.
struct GcdResult {
    MultiPoly gcd;
    MultiPoly cof_p;
    MultiPoly cof_q;
    double residual = 0.0;
    RankDecision rank_record;
};

// Finds the gcd of maximal tuple degree whose coupled convolution system
// admits a solution with relative residual <= tol.  Degrees are estimated by
// rank decisions on Sylvester-type matrices (restricted to random lines per
// variable in the multivariate case), and the bilinear system is polished by
// Gauss-Newton.  Coprime inputs yield gcd 1 with residual 0.
GcdResult numerical_gcd(const MultiPoly& p, const MultiPoly& q, double tol,
                        std::uint64_t seed = 0);

}  // namespace polyfact
