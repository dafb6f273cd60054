#pragma once

#include <cstdint>

#include "polyfact/metric.hpp"
#include "polyfact/multipoly.hpp"

namespace polyfact {

// Internal retry signal: the multiplicity sweep did not account for the full
// degree after exhausting direction redraws.
struct SweepInconsistent : Error {
    using Error::Error;
};

struct SquarefreeResult {
    Complex alpha = 1.0;
    // (squarefree part, multiplicity); multiplicities distinct, ascending.
    std::vector<std::pair<MultiPoly, int>> parts;
    std::vector<Complex> direction;
    double residual = 0.0;  // relative
};

// Multiplicity separation by a directional-derivative gcd sweep: with
// u = gcd(f, df), f = u*v, df = u*w, the gcd of v with l*dv - w is the
// product of the multiplicity-l factors and is constant for every other l.
SquarefreeResult squarefree_factor(const MultiPoly& f, double tol,
                                   std::uint64_t seed = 0);

}  // namespace polyfact
