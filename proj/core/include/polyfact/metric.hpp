#pragma once

#include <utility>
#include <vector>

#include "polyfact/multipoly.hpp"

namespace polyfact {

// Scaling-invariant distance between polynomial equivalence classes: the sine
// of the principal angle between the spanned coefficient lines.  Lies in
// [0,1]; 0 iff p ~ q (or both zero), 1 if exactly one is zero.
double sin_distance(const MultiPoly& p, const MultiPoly& q);

// Scalar times a product of nonconstant factors with multiplicities; one
// representative of an equivalence class of factorizations.
struct Factorization {
    Complex alpha = 1.0;
    std::vector<std::pair<MultiPoly, int>> factors;

    int expanded_count() const {
        int n = 0;
        for (const auto& [p, k] : factors) n += k;
        return n;
    }
};

// alpha * prod_i f_i^{k_i}, multiplying normalized factors left to right and
// applying alpha last.
MultiPoly expand(const Factorization& F);

// Distance between two factorizations: 1 when expanded factor counts differ,
// otherwise the bottleneck (min over pairings of max sine) matching value.
double fact_distance(const Factorization& F, const Factorization& G);

}  // namespace polyfact
