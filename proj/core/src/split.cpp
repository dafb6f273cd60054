#include "polyfact/split.hpp"

#include <algorithm>
#include <cmath>

#include "polyfact/coeff.hpp"
#include "polyfact/numgcd.hpp"
#include "polyfact/rng.hpp"
#include "polyfact/squarefree.hpp"

namespace polyfact {

namespace {

Complex alpha_fit(const MultiPoly& f, const MultiPoly& g) {
    if (g.is_zero()) return 0.0;
    TupleDegree bound = TupleDegree::cw_max(f.deg(), g.deg());
    Eigen::VectorXcd vf = lex_pack(f, bound).data;
    Eigen::VectorXcd vg = lex_pack(g, bound).data;
    return vg.dot(vf) / vg.squaredNorm();
}

double product_residual(const MultiPoly& f, const std::vector<MultiPoly>& factors) {
    MultiPoly prod = MultiPoly::constant(1.0, f.vars());
    for (const auto& p : factors) prod = prod * p;
    return poly_norm(f - prod.scaled(alpha_fit(f, prod))) / f.norm();
}

// Osborne diagonal balancing, then eigenvalues.
void balance(DenseMatrix& A) {
    const Eigen::Index n = A.rows();
    for (int sweep = 0; sweep < 6; ++sweep) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                r += std::abs(A(i, j));
                c += std::abs(A(j, i));
            }
            if (r == 0.0 || c == 0.0) continue;
            double f = 1.0;
            double s = c + r;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if (c + r < 0.95 * s && f != 1.0) {
                changed = true;
                A.row(i) /= f;
                A.col(i) *= f;
            }
        }
        if (!changed) break;
    }
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
    // coeffs ascending; leading coefficient nonzero.
    const int n = static_cast<int>(coeffs.size()) - 1;
    DenseMatrix C = DenseMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -coeffs[i] / coeffs[n];
    balance(C);
    Vec ev = eig_dense(C);
    return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

SplitResult univariate_split(const MultiPoly& h, double tol) {
    std::size_t var = 0;
    std::vector<Complex> coeffs = h.univ_coeffs(&var);
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1) throw DimensionError("univariate_split needs a nonconstant input");

    SplitResult result;
    result.nullity = n;
    std::vector<Complex> roots =
        n == 1 ? std::vector<Complex>{-coeffs[0] / coeffs[1]} : poly_roots(coeffs);

    double scale = 1.0;
    for (const Complex& r : roots) scale = std::max(scale, std::abs(r));
    double cluster_tol = 1e3 * tol * scale;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <= cluster_tol)
                throw ClusterCollision("root cluster below the separation tolerance");

    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (const Complex& r : roots) {
        MultiPoly lin(h.vars());
        MultiPoly::Key e(h.nvars(), 0);
        e[var] = 1;
        lin.add_term(e, 1.0);
        lin.add_term(MultiPoly::Key(h.nvars(), 0), -r);
        result.factors.push_back(lin.normalized());
    }
    result.residual = product_residual(h, result.factors);
    return result;
}

DenseMatrix ruppert_matrix(const MultiPoly& f) {
    if (f.nvars() != 2) throw DimensionError("ruppert_matrix needs a bivariate input");
    TupleDegree d = f.deg();
    const int m = d[0], n = d[1];
    if (m < 1 || n < 1)
        throw DimensionError("ruppert_matrix needs positive degree in both variables");

    TupleDegree gb{std::vector<int>{m - 1, n}};
    TupleDegree hb{std::vector<int>{m, n - 1}};
    TupleDegree target{std::vector<int>{2 * m - 1, 2 * n - 1}};
    MultiPoly fx = f.partial(0), fy = f.partial(1);

    const Eigen::Index rows = static_cast<Eigen::Index>(target.dim());
    const Eigen::Index gc = static_cast<Eigen::Index>(gb.dim());
    const Eigen::Index hc = static_cast<Eigen::Index>(hb.dim());
    DenseMatrix R = DenseMatrix::Zero(rows, gc + hc);

    for (Eigen::Index col = 0; col < gc; ++col) {
        MultiPoly::Key e = lex_tuple(col, gb);
        MultiPoly mono = MultiPoly::monomial(f.vars(), e, 1.0);
        MultiPoly img = f * mono.partial(1) - mono * fy;
        if (!img.is_zero())
            R.col(col) = lex_pack(img, target).data;
    }
    for (Eigen::Index col = 0; col < hc; ++col) {
        MultiPoly::Key e = lex_tuple(col, hb);
        MultiPoly mono = MultiPoly::monomial(f.vars(), e, 1.0);
        MultiPoly img = mono * fx - f * mono.partial(0);
        if (!img.is_zero())
            R.col(gc + col) = lex_pack(img, target).data;
    }
    return R;
}

SplitResult ruppert_split(const MultiPoly& f, double tol, std::uint64_t seed) {
    DenseMatrix R = ruppert_matrix(f);
    auto [rd, null_basis] = svd_nullspace(R, tol);
    int nullity = static_cast<int>(null_basis.cols());

    TupleDegree d = f.deg();
    TupleDegree gb{std::vector<int>{d[0] - 1, d[1]}};
    TupleDegree hb{std::vector<int>{d[0], d[1] - 1}};
    const Eigen::Index gc = static_cast<Eigen::Index>(gb.dim());
    MultiPoly fx = f.partial(0), fy = f.partial(1);

    SplitResult result;
    result.diagnostics = rd;

    // Full-V SVD once more to widen the basis when the detected nullity is
    // later reduced; the last r columns are the r smallest directions.
    Eigen::JacobiSVD<DenseMatrix> svd(R, Eigen::ComputeThinU | Eigen::ComputeFullV);

    for (int r = std::max(nullity, 1); r >= 1; --r) {
        if (r == 1) break;
        DenseMatrix V = svd.matrixV().rightCols(r);
        std::vector<MultiPoly> Ei;
        for (int attempt = 0; attempt < 3; ++attempt) {
            Rng rng(Rng::derive(seed, 400 + 10 * r + attempt));
            Complex a = rng.unit_complex(), b = rng.unit_complex();
            MultiPoly D = fx.scaled(a) + fy.scaled(b);
            if (D.is_zero()) continue;

            Ei.clear();
            for (int i = 0; i < r; ++i) {
                MultiPoly gi = lex_unpack(V.col(i).head(gc), gb, f.vars());
                MultiPoly hi = lex_unpack(V.col(i).tail(V.rows() - gc), hb, f.vars());
                Ei.push_back(gi.scaled(a) + hi.scaled(b));
            }
            Eigen::VectorXcd theta(r);
            for (int i = 0; i < r; ++i) theta(i) = rng.cgaussian();
            theta /= theta.norm();
            MultiPoly E(f.vars());
            for (int i = 0; i < r; ++i) E = E + Ei[i].scaled(theta(i));

            // Multiplication map: E*E_i ~ sum_j M(j,i) E_j * D  (mod f), solved
            // column by column in least squares with the f-multiple explicit.
            TupleDegree prod_bound = d + d;
            Eigen::Index rows = static_cast<Eigen::Index>(prod_bound.dim());
            Eigen::Index qdim = static_cast<Eigen::Index>(d.dim());
            DenseMatrix A(rows, r + qdim);
            for (int j = 0; j < r; ++j) A.col(j) = lex_pack(Ei[j] * D, prod_bound).data;
            A.rightCols(qdim) = conv_matrix(f, d, prod_bound);
            DenseMatrix M(r, r);
            for (int i = 0; i < r; ++i) {
                Vec rhs = lex_pack(E * Ei[i], prod_bound).data;
                Vec sol = lstsq_min_norm(A, rhs);
                M.col(i) = sol.head(r);
            }

            Vec lambda = eig_dense(M);
            double lscale = lambda.cwiseAbs().maxCoeff();
            bool separated = true;
            for (int i = 0; i < r && separated; ++i)
                for (int j = i + 1; j < r; ++j)
                    if (std::abs(lambda(i) - lambda(j)) <= 1e-8 * std::max(1.0, lscale)) {
                        separated = false;
                        break;
                    }
            if (!separated) continue;

            std::vector<MultiPoly> factors;
            std::vector<int> covered(2, 0);
            bool ok = true;
            for (int i = 0; i < r && ok; ++i) {
                MultiPoly target = E - D.scaled(lambda(i));
                if (target.is_zero()) {
                    ok = false;
                    break;
                }
                MultiPoly fi =
                    numerical_gcd(f, target, tol, Rng::derive(seed, 900 + i)).gcd;
                TupleDegree fd = fi.deg();
                if (fd.is_zero()) {
                    ok = false;
                    break;
                }
                covered[0] += fd[0];
                covered[1] += fd[1];
                factors.push_back(fi.normalized());
            }
            if (!ok || covered[0] != d[0] || covered[1] != d[1]) continue;

            result.factors = std::move(factors);
            result.nullity = r;
            result.residual = product_residual(f, result.factors);
            return result;
        }
    }

    result.factors = {f.normalized()};
    result.nullity = 1;
    result.residual = 0.0;
    return result;
}

namespace {

MultiPoly random_unit_poly(const std::vector<std::string>& vars, const TupleDegree& bound,
                           Rng& rng) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(bound.dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.cgaussian();
    v /= v.norm();
    return lex_unpack(v, bound, vars);
}

}  // namespace

Factorization als_initial(const MultiPoly& f, const FactorStructure& S,
                          std::uint64_t seed, int starts, int sweeps) {
    const auto& comps = S.components();
    TupleDegree m = S.total_degree();
    if (!f.deg().all_le(m))
        throw DimensionError("structure total degree does not bound the input");
    Eigen::VectorXcd vf = lex_pack(f, m).data;

    Factorization best;
    double best_res = std::numeric_limits<double>::infinity();
    for (int s = 0; s < starts; ++s) {
        Rng rng(Rng::derive(seed, 50 + s));
        std::vector<MultiPoly> p;
        for (const auto& c : comps) p.push_back(random_unit_poly(f.vars(), c.deg, rng));

        for (int sweep = 0; sweep < sweeps; ++sweep) {
            for (std::size_t i = 0; i < comps.size(); ++i) {
                // All factors except one copy of p_i, with stale p_i inside
                // its own power.
                MultiPoly rest = MultiPoly::constant(1.0, f.vars());
                for (std::size_t j = 0; j < comps.size(); ++j) {
                    int k = comps[j].mult - (j == i ? 1 : 0);
                    if (k > 0) rest = rest * p[j].pow(k);
                }
                if (rest.is_zero()) continue;
                Vec sol = lstsq_min_norm(conv_matrix(rest, comps[i].deg, m), vf);
                double nn = sol.norm();
                if (nn == 0.0) continue;
                p[i] = lex_unpack(sol / nn, comps[i].deg, f.vars());
            }
        }
        Factorization cand;
        for (std::size_t i = 0; i < comps.size(); ++i)
            cand.factors.emplace_back(p[i], comps[i].mult);
        MultiPoly prod = expand(cand);
        cand.alpha = alpha_fit(f, prod);
        double res = poly_norm(f - prod.scaled(cand.alpha)) / f.norm();
        if (res < best_res) {
            best_res = res;
            best = std::move(cand);
        }
    }
    return best;
}

namespace {

// Splits one squarefree part into irreducible approximations, routing by the
// number of active variables.
std::vector<MultiPoly> split_part(const MultiPoly& part, double rank_tol,
                                  std::uint64_t seed) {
    auto active = part.active_vars();
    if (active.empty()) return {};
    if (active.size() == 1) {
        return univariate_split(part, rank_tol).factors;
    }
    if (active.size() == 2) {
        MultiPoly reduced = part.project_vars(active);
        SplitResult sr = ruppert_split(reduced, rank_tol, seed);
        std::vector<MultiPoly> out;
        for (const auto& p : sr.factors)
            out.push_back(p.embed_vars(part.vars(), active).normalized());
        return out;
    }
    throw UnsupportedArity(
        "structure identification beyond two variables requires a hint");
}

}  // namespace

std::pair<FactorStructure, Factorization> identify_structure(
    const MultiPoly& f, double eps, std::uint64_t seed,
    const std::optional<FactorStructure>& hint, int max_retries) {
    if (f.is_constant()) throw DimensionError("cannot identify structure of a constant");

    if (hint) {
        if (hint->total_degree() != f.deg())
            throw DimensionError("structure hint degree " +
                                 hint->total_degree().to_string() +
                                 " does not match input degree " + f.deg().to_string());
        Factorization init = als_initial(f, *hint, seed);
        return {*hint, init};
    }

    const double nf = f.norm();
    const double base_gcd_tol = std::min(0.5, std::max(1e-14, 10.0 * eps / nf));
    const double rank_tol = std::min(0.1, std::max(1e-14, 1e2 * eps / nf));

    double gcd_tol = base_gcd_tol;
    std::string last_error = "structure detection failed";
    for (int attempt = 0; attempt < 2 * max_retries; ++attempt) {
        SquarefreeResult sf;
        try {
            sf = squarefree_factor(f, gcd_tol, Rng::derive(seed, attempt));
        } catch (const SweepInconsistent& e) {
            last_error = e.what();
            gcd_tol = std::max(1e-14, gcd_tol * 0.1);
            continue;
        }
        // A decomposition that is far off the data cannot support any
        // certifiable structure; tighten and retry.
        if (sf.residual * nf > std::max(10.0 * eps, 1e3 * 2.2e-16 * nf)) {
            last_error = "squarefree stage residual above tolerance";
            gcd_tol = std::max(1e-14, gcd_tol * 0.1);
            continue;
        }
        try {
            std::vector<std::pair<MultiPoly, int>> factors;
            for (const auto& [part, mult] : sf.parts)
                for (const auto& irr : split_part(part, rank_tol, Rng::derive(seed, 60 + mult)))
                    factors.emplace_back(irr, mult);

            std::vector<FactorStructure::Component> comps;
            Factorization init;
            for (const auto& [p, k] : factors) {
                comps.push_back({p.deg(), k});
                init.factors.emplace_back(p, k);
            }
            FactorStructure S{std::move(comps)};
            MultiPoly prod = expand(Factorization{1.0, init.factors});
            init.alpha = alpha_fit(f, prod);
            return {S, init};
        } catch (const ClusterCollision& e) {
            last_error = e.what();
            gcd_tol = std::min(0.5, gcd_tol * 10.0);  // merge the cluster upstream
        }
    }
    throw FactorizationFailure(last_error);
}

}  // namespace polyfact
