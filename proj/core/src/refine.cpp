#include "polyfact/refine.hpp"

#include <cmath>
#include <limits>

#include "polyfact/rng.hpp"

namespace polyfact {

Eigen::Index PhiSystem::unknowns() const {
    Eigen::Index n = 1;
    for (const auto& d : factor_degrees) n += static_cast<Eigen::Index>(d.dim());
    return n;
}

Eigen::Index PhiSystem::residual_dim() const {
    return static_cast<Eigen::Index>(m.dim()) +
           static_cast<Eigen::Index>(factor_degrees.size());
}

namespace {

std::vector<MultiPoly> unpack_factors(const PhiSystem& sys, const Vec& z) {
    std::vector<MultiPoly> p;
    Eigen::Index off = 1;
    for (const auto& d : sys.factor_degrees) {
        Eigen::Index n = static_cast<Eigen::Index>(d.dim());
        p.push_back(lex_unpack(z.segment(off, n), d, sys.vars));
        off += n;
    }
    return p;
}

MultiPoly product_of(const PhiSystem& sys, const std::vector<MultiPoly>& p) {
    MultiPoly prod = MultiPoly::constant(1.0, sys.vars);
    for (std::size_t i = 0; i < p.size(); ++i) prod = prod * p[i].pow(sys.multiplicities[i]);
    return prod;
}

}  // namespace

PhiSystem make_phi_system(const MultiPoly& f, const Factorization& initial,
                          std::uint64_t seed) {
    PhiSystem sys;
    sys.vars = f.vars();
    sys.seed = seed;
    sys.fnorm = f.norm();

    std::vector<int> total(f.nvars(), 0);
    for (const auto& [p, k] : initial.factors) {
        if (p.vars() != f.vars())
            throw DimensionError("initial factors must share the input variable list");
        TupleDegree d = p.deg();
        if (d.is_zero()) throw DimensionError("initial factor is constant");
        sys.factor_degrees.push_back(d);
        sys.multiplicities.push_back(k);
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += k * d[i];
    }
    sys.m = TupleDegree(total);
    if (!f.deg().all_le(sys.m))
        throw DimensionError("factor degrees do not bound the input degree");
    sys.target = lex_pack(f, sys.m).data;

    for (std::size_t i = 0; i < sys.factor_degrees.size(); ++i) {
        Eigen::VectorXcd b =
            lex_pack(initial.factors[i].first.normalized(), sys.factor_degrees[i]).data;
        sys.scaling.push_back(b);
    }
    return sys;
}

Vec initial_state(const PhiSystem& sys, const MultiPoly& f, const Factorization& initial) {
    Vec z(sys.unknowns());
    Eigen::Index off = 1;
    std::vector<MultiPoly> p;
    for (std::size_t i = 0; i < sys.factor_degrees.size(); ++i) {
        MultiPoly u = initial.factors[i].first.normalized();
        p.push_back(u);
        Eigen::Index n = static_cast<Eigen::Index>(sys.factor_degrees[i].dim());
        z.segment(off, n) = lex_pack(u, sys.factor_degrees[i]).data;
        off += n;
    }
    // gamma from the closed-form projection of [f] onto the product line.
    MultiPoly prod = product_of(sys, p);
    Eigen::VectorXcd vp = lex_pack(prod, sys.m).data;
    double nn = vp.squaredNorm();
    z(0) = nn > 0.0 ? Complex(vp.dot(sys.target) / nn) : Complex(1.0);
    return z;
}

Vec phi_eval(const PhiSystem& sys, const Vec& z) {
    if (z.size() != sys.unknowns()) throw DimensionError("phi state dimension mismatch");
    std::vector<MultiPoly> p = unpack_factors(sys, z);
    MultiPoly prod = product_of(sys, p).scaled(z(0));
    Vec r(sys.residual_dim());
    const Eigen::Index md = static_cast<Eigen::Index>(sys.m.dim());
    r.head(md) = lex_pack(prod, sys.m).data - sys.target;
    Eigen::Index off = 1;
    for (std::size_t i = 0; i < sys.factor_degrees.size(); ++i) {
        Eigen::Index n = static_cast<Eigen::Index>(sys.factor_degrees[i].dim());
        r(md + static_cast<Eigen::Index>(i)) =
            sys.scaling[i].dot(z.segment(off, n)) - Complex(1.0);
        off += n;
    }
    return r;
}

DenseMatrix jacobian(const PhiSystem& sys, const Vec& z) {
    if (z.size() != sys.unknowns()) throw DimensionError("phi state dimension mismatch");
    std::vector<MultiPoly> p = unpack_factors(sys, z);
    const Eigen::Index md = static_cast<Eigen::Index>(sys.m.dim());
    const std::size_t r = sys.factor_degrees.size();
    DenseMatrix J = DenseMatrix::Zero(sys.residual_dim(), sys.unknowns());

    MultiPoly prod = product_of(sys, p);
    if (!prod.is_zero()) J.col(0).head(md) = lex_pack(prod, sys.m).data;

    Eigen::Index off = 1;
    for (std::size_t i = 0; i < r; ++i) {
        Eigen::Index n = static_cast<Eigen::Index>(sys.factor_degrees[i].dim());
        // All factors except one copy of p_i, scaled by k_i * gamma; formed by
        // multiplying out, never by division.
        MultiPoly rest = MultiPoly::constant(z(0) * Complex(sys.multiplicities[i]),
                                             sys.vars);
        for (std::size_t j = 0; j < r; ++j) {
            int k = sys.multiplicities[j] - (j == i ? 1 : 0);
            if (k > 0) rest = rest * p[j].pow(k);
        }
        if (!rest.is_zero())
            J.block(0, off, md, n) =
                conv_matrix(rest, sys.factor_degrees[i], sys.m);
        J.row(md + static_cast<Eigen::Index>(i)).segment(off, n) =
            sys.scaling[i].adjoint();
        off += n;
    }
    return J;
}

GNState gauss_newton(PhiSystem& sys, const Vec& z0, const RefineOptions& opts) {
    const double floor =
        opts.abs_floor > 0.0 ? opts.abs_floor : 1e2 * 2.220446049250313e-16 * sys.fnorm;

    // Redraw a scaling vector if its constraint row degenerates at an iterate.
    Rng redraw(Rng::derive(sys.seed, 777));
    auto guard_scaling = [&](const Vec& z) {
        Eigen::Index off = 1;
        for (std::size_t i = 0; i < sys.factor_degrees.size(); ++i) {
            Eigen::Index n = static_cast<Eigen::Index>(sys.factor_degrees[i].dim());
            auto pi = z.segment(off, n);
            if (std::abs(sys.scaling[i].dot(pi)) < 1e-3 * pi.norm()) {
                Eigen::VectorXcd b(n);
                for (Eigen::Index t = 0; t < n; ++t) b(t) = redraw.cgaussian();
                sys.scaling[i] = b / b.norm();
            }
            off += n;
        }
    };

    GNState st;
    Vec z = z0;
    guard_scaling(z);
    Vec r = phi_eval(sys, z);
    double rn = r.norm();
    const double rn0 = rn;
    st.z = z;
    st.residual_norm = rn;
    bool monotone = true;

    for (int it = 0; it < opts.max_iter; ++it) {
        if (rn <= floor) break;
        DenseMatrix J = jacobian(sys, z);
        Vec z_next = z - lstsq_min_norm(J, r);
        guard_scaling(z_next);
        Vec r_next = phi_eval(sys, z_next);
        double rn_next = r_next.norm();
        st.iteration = it + 1;
        if (rn_next < st.residual_norm) {
            st.z = z_next;
            st.residual_norm = rn_next;
        }
        if (rn_next > 10.0 * std::max(rn0, floor)) {
            st.diverged = true;
            break;
        }
        if (rn_next > opts.stagnation_ratio * rn) break;
        if (rn_next > rn) monotone = false;
        z = std::move(z_next);
        r = std::move(r_next);
        rn = rn_next;
    }
    st.converged = monotone && !st.diverged;
    return st;
}

Factorization finalize_factorization(const PhiSystem& sys, const Vec& z,
                                     const MultiPoly& f) {
    std::vector<MultiPoly> p = unpack_factors(sys, z);
    Complex gamma = z(0);
    Eigen::Index off = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Eigen::Index n = static_cast<Eigen::Index>(sys.factor_degrees[i].dim());
        Complex s = sys.scaling[i].dot(z.segment(off, n));
        if (s != Complex(0.0)) {
            p[i] = p[i].scaled(Complex(1.0) / s);
            gamma *= std::pow(s, sys.multiplicities[i]);
        }
        off += n;
    }
    Factorization F;
    for (std::size_t i = 0; i < p.size(); ++i)
        F.factors.emplace_back(p[i], sys.multiplicities[i]);
    F.alpha = 1.0;
    MultiPoly prod = expand(F);
    Eigen::VectorXcd vp = lex_pack(prod, sys.m).data;
    double nn = vp.squaredNorm();
    F.alpha = nn > 0.0 ? Complex(vp.dot(sys.target) / nn) : gamma;
    return F;
}

double condition_number(const PhiSystem& sys, const Vec& z) {
    double smin = min_singular(jacobian(sys, z));
    if (smin <= 0.0 || !std::isfinite(smin))
        return std::numeric_limits<double>::infinity();
    return 1.0 / smin;
}

}  // namespace polyfact
