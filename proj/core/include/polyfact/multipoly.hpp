#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "polyfact/tuple_degree.hpp"

namespace polyfact {

using Complex = std::complex<double>;

// Sparse multivariate polynomial over complex coefficients with named
// variables.  Stored coefficients are never exactly zero.
class MultiPoly {
public:
    using Key = std::vector<int>;
    using TermMap = std::map<Key, Complex>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(Complex c, std::vector<std::string> vars = {});
    static MultiPoly variable(const std::string& name);
    static MultiPoly monomial(std::vector<std::string> vars, Key exps, Complex c);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const TermMap& terms() const { return terms_; }
    std::size_t nterms() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Complex constant_value() const;  // 0 for the zero polynomial

    TupleDegree deg() const;
    double norm() const;
    double max_abs_coeff() const;
    MultiPoly normalized() const;
    // Drops terms with |c| <= rel * max|coeff|; used after numerical solves.
    MultiPoly cleaned(double rel) const;

    void add_term(const Key& e, Complex c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly scaled(Complex a) const;
    MultiPoly pow(int k) const;

    MultiPoly partial(std::size_t var) const;
    MultiPoly dir_derivative(const std::vector<Complex>& z) const;

    Complex eval(const std::vector<Complex>& x) const;

    // Substitutes every variable except `keep` by the given constants; result
    // is univariate in vars()[keep].
    MultiPoly restrict_except(std::size_t keep, const std::vector<Complex>& consts) const;

    // Indices of variables that actually occur.
    std::vector<std::size_t> active_vars() const;
    // Projection onto a subset of variables (all others must be inactive).
    MultiPoly project_vars(const std::vector<std::size_t>& idx) const;
    // Inverse of project_vars: re-embed into `vars`, placing variable i of
    // this polynomial at position idx[i].
    MultiPoly embed_vars(const std::vector<std::string>& vars,
                         const std::vector<std::size_t>& idx) const;

    // Dense coefficients (ascending power) of a polynomial with at most one
    // active variable; `var` receives its index (0 when constant).
    std::vector<Complex> univ_coeffs(std::size_t* var = nullptr) const;

    // Leading term under descending lexicographic order with x1 priority.
    std::pair<Key, Complex> lex_leading() const;

    bool operator==(const MultiPoly& o) const {
        return vars_ == o.vars_ && terms_ == o.terms_;
    }

private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

// Rewrites p and q over the union of their variable lists (appearance order).
std::pair<MultiPoly, MultiPoly> unify_vars(const MultiPoly& p, const MultiPoly& q);

inline double poly_norm(const MultiPoly& f) { return f.norm(); }

}  // namespace polyfact
