#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polyfact/tuple_degree.hpp"

namespace polyfact {

// Multiset of (factor degree, multiplicity) pairs: the label of a
// factorization manifold.  Components are kept canonically sorted, so equal
// multisets compare equal.
class FactorStructure {
public:
    struct Component {
        TupleDegree deg;
        int mult = 1;
        bool operator==(const Component& o) const {
            return mult == o.mult && deg == o.deg;
        }
    };

    FactorStructure() = default;
    explicit FactorStructure(std::vector<Component> comps);

    const std::vector<Component>& components() const { return comps_; }
    std::size_t size() const { return comps_.size(); }
    bool empty() const { return comps_.empty(); }

    TupleDegree total_degree() const;
    long long codim() const;
    bool is_trivial() const;

    // Embedding operations.  Both preserve the total degree and strictly
    // decrease the codimension.
    FactorStructure combine_degrees(std::size_t i, std::size_t j) const;
    FactorStructure split_multiplicity(std::size_t i, int khat) const;

    // All structures reachable by one embedding operation (deduplicated).
    std::vector<FactorStructure> children() const;
    // All structures from which this one is reachable by one operation.
    std::vector<FactorStructure> parents() const;

    bool operator==(const FactorStructure& o) const { return comps_ == o.comps_; }
    bool operator!=(const FactorStructure& o) const { return comps_ != o.comps_; }
    std::string to_string() const;

private:
    std::vector<Component> comps_;
};

// N precedes M iff M is reachable from N by a finite sequence of embedding
// operations (reflexively).  Total degrees must agree.
bool precedes(const FactorStructure& N, const FactorStructure& M);

// Every structure of the given total degree: all multisets {(m_i, k_i)} with
// sum k_i * m_i = m.  Guarded to dim(m) <= 400.  max_components <= 0 means
// unlimited.
std::vector<FactorStructure> enumerate_structures(const TupleDegree& m,
                                                  int max_components = -1);

// Among candidates within eps, the structure of maximum codimension; ties go
// to the smaller distance, then canonical order.
const FactorStructure& select_max_codim(
    const std::vector<std::pair<FactorStructure, double>>& candidates, double eps);

// Stratification DAG of all structures of degree m: nodes carry codimension,
// edges are single embedding operations.
std::string lattice_dot(const TupleDegree& m);
std::string lattice_json(const TupleDegree& m);

}  // namespace polyfact
