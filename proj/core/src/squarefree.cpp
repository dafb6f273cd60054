#include "polyfact/squarefree.hpp"

#include "polyfact/coeff.hpp"
#include "polyfact/numgcd.hpp"
#include "polyfact/rng.hpp"

namespace polyfact {

namespace {

Complex alpha_fit(const MultiPoly& f, const MultiPoly& g) {
    // min over alpha of ||f - alpha*g||.
    if (g.is_zero()) return 0.0;
    TupleDegree bound = TupleDegree::cw_max(f.deg(), g.deg());
    Eigen::VectorXcd vf = lex_pack(f, bound).data;
    Eigen::VectorXcd vg = lex_pack(g, bound).data;
    return vg.dot(vf) / vg.squaredNorm();
}

SquarefreeResult sweep_once(const MultiPoly& f, double tol,
                            const std::vector<Complex>& z, std::uint64_t seed) {
    SquarefreeResult result;
    result.direction = z;

    MultiPoly df = f.dir_derivative(z);
    if (df.is_zero()) throw SweepInconsistent("directional derivative vanished");

    GcdResult g0 = numerical_gcd(f, df, tol, Rng::derive(seed, 11));
    const MultiPoly& v = g0.cof_p;
    const MultiPoly& w = g0.cof_q;
    MultiPoly dv = v.dir_derivative(z);

    TupleDegree target = f.deg();
    std::vector<int> covered(target.size(), 0);
    const int lmax = target.total();
    for (int l = 1; l <= lmax; ++l) {
        MultiPoly rhs = dv.scaled(Complex(l)) - w;
        MultiPoly h;
        double rhs_scale = static_cast<double>(l) * dv.norm() + w.norm();
        if (rhs.norm() <= tol * rhs_scale) {
            h = v;  // the whole remaining squarefree part has multiplicity l
        } else {
            h = numerical_gcd(v, rhs, tol, Rng::derive(seed, 100 + l)).gcd;
        }
        if (h.deg().is_zero()) continue;
        result.parts.emplace_back(h.normalized(), l);
        bool full = true;
        for (std::size_t i = 0; i < covered.size(); ++i) {
            covered[i] += l * h.deg()[i];
            if (covered[i] < target[i]) full = false;
        }
        if (full) break;
    }
    if (TupleDegree(covered) != target)
        throw SweepInconsistent("multiplicity sweep does not cover the degree");

    MultiPoly prod = MultiPoly::constant(1.0, f.vars());
    for (const auto& [h, l] : result.parts) prod = prod * h.pow(l);
    result.alpha = alpha_fit(f, prod);
    result.residual = poly_norm(f - prod.scaled(result.alpha)) / f.norm();
    return result;
}

}  // namespace

SquarefreeResult squarefree_factor(const MultiPoly& f, double tol, std::uint64_t seed) {
    if (f.is_constant()) throw DimensionError("squarefree factorization of a constant");
    const std::size_t ell = f.nvars();
    const bool univariate = f.active_vars().size() <= 1;

    std::string last_error;
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<Complex> z;
        if (univariate) {
            if (attempt > 0) break;  // no direction to redraw
            z.assign(ell, Complex(0.0));
            z[f.active_vars().at(0)] = 1.0;
        } else {
            Rng rng(Rng::derive(seed, 7 + attempt));
            z = rng.unit_direction(ell);
        }
        try {
            return sweep_once(f, tol, z, Rng::derive(seed, 31 + attempt));
        } catch (const SweepInconsistent& e) {
            last_error = e.what();
        }
    }
    throw SweepInconsistent(last_error.empty() ? "multiplicity sweep failed"
                                               : last_error);
}

}  // namespace polyfact
