#include "polyfact/numgcd.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include "polyfact/coeff.hpp"
#include "polyfact/errors.hpp"
#include "polyfact/rng.hpp"

namespace polyfact {

namespace {

constexpr double kCleanRel = 5e-14;

GcdResult coprime_result(const MultiPoly& p, const MultiPoly& q,
                         const RankDecision& rd) {
    GcdResult r;
    r.gcd = MultiPoly::constant(1.0, p.vars());
    r.cof_p = p;
    r.cof_q = q;
    r.residual = 0.0;
    r.rank_record = rd;
    return r;
}

// Nullity of the Sylvester matrix of two effectively univariate polynomials
// equals their gcd degree.
int univ_gcd_degree(const MultiPoly& p, const MultiPoly& q, double tol,
                    RankDecision* rd_out) {
    std::size_t vp = 0, vq = 0;
    std::vector<Complex> cp = p.univ_coeffs(&vp);
    std::vector<Complex> cq = q.univ_coeffs(&vq);
    int n = static_cast<int>(cp.size()) - 1;
    int m = static_cast<int>(cq.size()) - 1;
    if (n == 0 || m == 0) return 0;

    MultiPoly pu = p.project_vars({vp});
    MultiPoly qu = q.project_vars({vq});
    TupleDegree bm1{std::vector<int>{m - 1}}, bn1{std::vector<int>{n - 1}};
    Eigen::MatrixXcd S(n + m, m + n);
    TupleDegree target{std::vector<int>{n + m - 1}};
    S.leftCols(m) = conv_matrix(pu, bm1, target);
    S.rightCols(n) = -conv_matrix(qu, bn1, target);
    RankDecision rd = svd_rank(S, tol);
    if (rd_out) *rd_out = rd;
    int nullity = static_cast<int>(S.cols()) - rd.rank;
    return std::min(nullity, std::min(n, m));
}

// Solve the coupled system at a fixed gcd degree d; returns residual via the
// out-parameter and false when the candidate is degenerate.
bool solve_at_degree(const MultiPoly& p, const MultiPoly& q, const TupleDegree& d,
                     double np, double nq, GcdResult* out) {
    TupleDegree dp = p.deg(), dq = q.deg();
    TupleDegree da = dp - d, db = dq - d;

    // Cofactor pair from the best approximate null vector of
    // (b, a) -> p*b - q*a.
    TupleDegree cross = dp + dq - d;
    Eigen::Index cb = static_cast<Eigen::Index>(db.dim());
    Eigen::Index ca = static_cast<Eigen::Index>(da.dim());
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(cross.dim()), cb + ca);
    M.leftCols(cb) = conv_matrix(p, db, cross);
    M.rightCols(ca) = -conv_matrix(q, da, cross);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU | Eigen::ComputeFullV);
    Eigen::VectorXcd w = svd.matrixV().col(M.cols() - 1);
    MultiPoly b = lex_unpack(w.head(cb), db, p.vars());
    MultiPoly a = lex_unpack(w.tail(ca), da, p.vars());
    if (a.norm() < 1e-8 || b.norm() < 1e-8) return false;

    // gcd from the stacked linear fit g*a ~ p, g*b ~ q.
    Eigen::Index rp = static_cast<Eigen::Index>(dp.dim());
    Eigen::Index rq = static_cast<Eigen::Index>(dq.dim());
    Eigen::Index gd = static_cast<Eigen::Index>(d.dim());
    Eigen::MatrixXcd A(rp + rq, gd);
    A.topRows(rp) = conv_matrix(a, d, dp);
    A.bottomRows(rq) = conv_matrix(b, d, dq);
    Eigen::VectorXcd rhs(rp + rq);
    rhs.head(rp) = lex_pack(p, dp).data;
    rhs.tail(rq) = lex_pack(q, dq).data;
    Eigen::VectorXcd g0 = lstsq_min_norm(A, rhs);
    if (g0.norm() < 1e-12) return false;

    // Gauss-Newton on (g*a - p, g*b - q, <bg, g> - 1).
    Eigen::VectorXcd bg = g0 / g0.norm();
    Eigen::Index na = static_cast<Eigen::Index>(da.dim());
    Eigen::Index nb = static_cast<Eigen::Index>(db.dim());
    auto unpack3 = [&](const Vec& z) {
        MultiPoly gz = lex_unpack(z.head(gd), d, p.vars());
        MultiPoly az = lex_unpack(z.segment(gd, na), da, p.vars());
        MultiPoly bz = lex_unpack(z.tail(nb), db, p.vars());
        return std::tuple{gz, az, bz};
    };
    auto residual = [&](const Vec& z) {
        auto [gz, az, bz] = unpack3(z);
        Vec r(rp + rq + 1);
        r.head(rp) = lex_pack(gz * az, dp).data - rhs.head(rp);
        r.segment(rp, rq) = lex_pack(gz * bz, dq).data - rhs.tail(rq);
        r(rp + rq) = bg.dot(z.head(gd)) - Complex(1.0);
        return r;
    };
    auto jac = [&](const Vec& z) {
        auto [gz, az, bz] = unpack3(z);
        DenseMatrix J = DenseMatrix::Zero(rp + rq + 1, gd + na + nb);
        if (!az.is_zero()) J.block(0, 0, rp, gd) = conv_matrix(az, d, dp);
        if (!gz.is_zero()) J.block(0, gd, rp, na) = conv_matrix(gz, da, dp);
        if (!bz.is_zero()) J.block(rp, 0, rq, gd) = conv_matrix(bz, d, dq);
        if (!gz.is_zero()) J.block(rp, gd + na, rq, nb) = conv_matrix(gz, db, dq);
        J.row(rp + rq).head(gd) = bg.adjoint();
        return J;
    };
    Vec z0(gd + na + nb);
    z0.head(gd) = g0;
    z0.segment(gd, na) = lex_pack(a, da).data;
    z0.tail(nb) = lex_pack(b, db).data;
    GNOptions opts;
    opts.max_iter = 50;
    opts.stagnation_ratio = 0.99;
    opts.abs_floor = 1e-15 * (np + nq);
    GNRun run = gn_minimize(residual, jac, z0, opts);

    auto [gz, az, bz] = unpack3(run.z);
    if (gz.is_zero()) return false;
    double s = gz.norm();
    out->gcd = gz.scaled(Complex(1.0 / s)).cleaned(kCleanRel);
    out->cof_p = az.scaled(Complex(s)).cleaned(kCleanRel);
    out->cof_q = bz.scaled(Complex(s)).cleaned(kCleanRel);
    double res_p = poly_norm(out->gcd * out->cof_p - p) / np;
    double res_q = poly_norm(out->gcd * out->cof_q - q) / nq;
    out->residual = std::max(res_p, res_q);
    return true;
}

// Candidate gcd degrees at and below the estimate, by descending total degree.
std::vector<TupleDegree> candidate_degrees(const TupleDegree& est, std::size_t limit) {
    std::vector<TupleDegree> out;
    std::set<std::vector<int>> seen;
    std::deque<TupleDegree> queue{est};
    seen.insert(est.exps());
    while (!queue.empty() && out.size() < limit) {
        TupleDegree cur = queue.front();
        queue.pop_front();
        out.push_back(cur);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (cur[i] == 0) continue;
            std::vector<int> e = cur.exps();
            e[i] -= 1;
            if (seen.insert(e).second) queue.emplace_back(TupleDegree(e));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const TupleDegree& a, const TupleDegree& b) {
        if (a.total() != b.total()) return a.total() > b.total();
        return b.lex_less(a);
    });
    return out;
}

}  // namespace

GcdResult numerical_gcd(const MultiPoly& p0, const MultiPoly& q0, double tol,
                        std::uint64_t seed) {
    if (p0.is_zero() || q0.is_zero())
        throw DimensionError("numerical_gcd of a zero polynomial");
    auto [p, q] = unify_vars(p0, q0);
    const double np = p.norm(), nq = q.norm();
    RankDecision rd;
    if (p.is_constant() || q.is_constant()) return coprime_result(p, q, rd);

    const std::size_t ell = p.nvars();
    TupleDegree dp = p.deg(), dq = q.deg();
    auto pav = p.active_vars();
    auto qav = q.active_vars();
    const bool univariate = pav.size() == 1 && qav.size() == 1 && pav[0] == qav[0];
    GcdResult best;
    bool have_best = false;

    for (int attempt = 0; attempt < 3; ++attempt) {
        Rng rng(Rng::derive(seed, 1000 + attempt));

        // Per-variable degree estimate.
        std::vector<int> est(ell, 0);
        bool estimated = true;
        for (std::size_t j = 0; j < ell; ++j) {
            int cap = std::min(dp[j], dq[j]);
            if (cap == 0) continue;
            if (univariate) {
                est[j] = univ_gcd_degree(p, q, tol, &rd);
            } else {
                std::vector<Complex> cs(ell);
                for (auto& c : cs) c = rng.cgaussian();
                MultiPoly pr = p.restrict_except(j, cs);
                MultiPoly qr = q.restrict_except(j, cs);
                if (pr.deg()[0] != dp[j] || qr.deg()[0] != dq[j]) {
                    estimated = false;  // unlucky line dropped the degree
                    break;
                }
                est[j] = univ_gcd_degree(pr, qr, tol, attempt == 0 && j == 0 ? &rd : nullptr);
            }
            est[j] = std::min(est[j], cap);
        }
        if (!estimated) continue;

        for (const TupleDegree& d : candidate_degrees(TupleDegree(est), 24)) {
            if (d.is_zero()) break;
            GcdResult cand;
            if (!solve_at_degree(p, q, d, np, nq, &cand)) continue;
            cand.rank_record = rd;
            if (cand.residual <= tol) return cand;
            if (!have_best || cand.residual < best.residual) {
                best = cand;
                have_best = true;
            }
        }
        if (std::all_of(est.begin(), est.end(), [](int v) { return v == 0; })) break;
    }
    return coprime_result(p, q, rd);
}

}  // namespace polyfact
