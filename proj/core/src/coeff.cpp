#include "polyfact/coeff.hpp"

#include "polyfact/errors.hpp"

namespace polyfact {

Eigen::Index lex_index(const MultiPoly::Key& e, const TupleDegree& bound) {
    if (e.size() != bound.size()) throw DimensionError("lex_index arity mismatch");
    Eigen::Index idx = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0 || e[i] > bound[i]) throw DegreeOverflow("exponent outside bound");
        idx = idx * (bound[i] + 1) + (bound[i] - e[i]);
    }
    return idx;
}

MultiPoly::Key lex_tuple(Eigen::Index idx, const TupleDegree& bound) {
    MultiPoly::Key e(bound.size());
    for (std::size_t i = bound.size(); i-- > 0;) {
        Eigen::Index base = bound[i] + 1;
        e[i] = bound[i] - static_cast<int>(idx % base);
        idx /= base;
    }
    return e;
}

CoeffVector lex_pack(const MultiPoly& f, const TupleDegree& bound) {
    if (f.nvars() != bound.size()) throw DimensionError("lex_pack arity mismatch");
    if (!f.deg().all_le(bound))
        throw DegreeOverflow("polynomial degree " + f.deg().to_string() +
                             " exceeds bound " + bound.to_string());
    CoeffVector cv{bound, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(bound.dim()))};
    for (const auto& [e, c] : f.terms()) cv.data(lex_index(e, bound)) = c;
    return cv;
}

MultiPoly lex_unpack(const Eigen::VectorXcd& data, const TupleDegree& bound,
                     const std::vector<std::string>& vars) {
    if (vars.size() != bound.size()) throw DimensionError("lex_unpack arity mismatch");
    if (data.size() != static_cast<Eigen::Index>(bound.dim()))
        throw DimensionError("lex_unpack length mismatch");
    MultiPoly f(vars);
    for (Eigen::Index i = 0; i < data.size(); ++i)
        if (data(i) != Complex(0.0)) f.add_term(lex_tuple(i, bound), data(i));
    return f;
}

MultiPoly lex_unpack(const CoeffVector& cv, const std::vector<std::string>& vars) {
    return lex_unpack(cv.data, cv.bound, vars);
}

Eigen::MatrixXcd conv_matrix(const MultiPoly& q, const TupleDegree& m_h,
                             const TupleDegree& target) {
    if (q.is_zero()) throw DimensionError("convolution matrix of the zero polynomial");
    if (!(q.deg() + m_h).all_le(target))
        throw DegreeOverflow("convolution target bound too small");
    const Eigen::Index rows = static_cast<Eigen::Index>(target.dim());
    const Eigen::Index cols = static_cast<Eigen::Index>(m_h.dim());
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(rows, cols);
    MultiPoly::Key sum(target.size());
    for (Eigen::Index col = 0; col < cols; ++col) {
        MultiPoly::Key e = lex_tuple(col, m_h);
        for (const auto& [d, c] : q.terms()) {
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = d[i] + e[i];
            C(lex_index(sum, target), col) += c;
        }
    }
    return C;
}

Eigen::MatrixXcd conv_matrix(const MultiPoly& q, const TupleDegree& m_h) {
    return conv_matrix(q, m_h, q.deg() + m_h);
}

}  // namespace polyfact
