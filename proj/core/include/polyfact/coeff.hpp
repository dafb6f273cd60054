#pragma once

#include <Eigen/Core>

#include "polyfact/multipoly.hpp"

namespace polyfact {

// Dense coefficient vector of a polynomial inside the bounded-degree space
// given by `bound`.  Entries are ordered by descending lexicographic exponent
// tuple with x1 priority.
struct CoeffVector {
    TupleDegree bound;
    Eigen::VectorXcd data;
};

// Position of exponent tuple e within the descending-lex basis of P^bound.
Eigen::Index lex_index(const MultiPoly::Key& e, const TupleDegree& bound);
// Inverse of lex_index.
MultiPoly::Key lex_tuple(Eigen::Index idx, const TupleDegree& bound);

CoeffVector lex_pack(const MultiPoly& f, const TupleDegree& bound);
MultiPoly lex_unpack(const CoeffVector& cv, const std::vector<std::string>& vars);
MultiPoly lex_unpack(const Eigen::VectorXcd& data, const TupleDegree& bound,
                     const std::vector<std::string>& vars);

// Matrix of the linear map h -> q*h from P^{m_h} to P^{target}.  The default
// target is deg(q) + m_h.
Eigen::MatrixXcd conv_matrix(const MultiPoly& q, const TupleDegree& m_h);
Eigen::MatrixXcd conv_matrix(const MultiPoly& q, const TupleDegree& m_h,
                             const TupleDegree& target);

}  // namespace polyfact
