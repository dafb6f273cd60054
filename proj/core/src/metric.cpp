#include "polyfact/metric.hpp"

#include <algorithm>
#include <cmath>

#include "polyfact/coeff.hpp"
#include "polyfact/errors.hpp"

namespace polyfact {

double sin_distance(const MultiPoly& p0, const MultiPoly& q0) {
    if (p0.is_zero() && q0.is_zero()) return 0.0;
    if (p0.is_zero() || q0.is_zero()) return 1.0;
    auto [p, q] = unify_vars(p0, q0);
    TupleDegree bound = TupleDegree::cw_max(p.deg(), q.deg());
    Eigen::VectorXcd vp = lex_pack(p, bound).data;
    Eigen::VectorXcd vq = lex_pack(q, bound).data;
    vp /= vp.norm();
    vq /= vq.norm();
    // Hermitian projection keeps the metric invariant under complex scaling.
    Complex c = vq.dot(vp);  // conj(vq) . vp
    double s = (vp - c * vq).norm();
    return std::min(1.0, s);
}

MultiPoly expand(const Factorization& F) {
    if (F.factors.empty()) {
        std::vector<std::string> vars;
        return MultiPoly::constant(F.alpha, vars);
    }
    MultiPoly acc = MultiPoly::constant(1.0, F.factors.front().first.vars());
    Complex scale = F.alpha;
    for (const auto& [p, k] : F.factors) {
        double n = p.norm();
        if (n == 0.0) return MultiPoly(acc.vars());
        MultiPoly unit = p.scaled(Complex(1.0 / n));
        auto [a, b] = unify_vars(acc, unit);
        acc = a * b.pow(k);
        scale *= std::pow(Complex(n), k);
    }
    return acc.scaled(scale);
}

namespace {

struct FactorClass {
    MultiPoly rep;  // unit norm
    int count = 0;
};

std::vector<FactorClass> collect_classes(const Factorization& F) {
    std::vector<FactorClass> classes;
    for (const auto& [p, k] : F.factors) {
        MultiPoly u = p.normalized();
        bool merged = false;
        for (auto& cl : classes) {
            if (sin_distance(cl.rep, u) <= 1e-12) {
                cl.count += k;
                merged = true;
                break;
            }
        }
        if (!merged) classes.push_back({u, k});
    }
    return classes;
}

// Feasibility of a bottleneck threshold: can all F-copies be matched to
// G-copies using only pairs with sine <= t?  Small capacitated matching via
// augmenting paths on class counts.
bool feasible(const std::vector<std::vector<double>>& s,
              const std::vector<int>& fc, const std::vector<int>& gc, double t) {
    const std::size_t nf = fc.size(), ng = gc.size();
    std::vector<std::vector<int>> flow(nf, std::vector<int>(ng, 0));
    std::vector<int> fleft(fc), gleft(gc);
    int need = 0;
    for (int v : fc) need += v;

    // Greedy pass, then augmenting paths for the remainder.
    for (std::size_t i = 0; i < nf; ++i)
        for (std::size_t j = 0; j < ng && fleft[i] > 0; ++j)
            if (s[i][j] <= t && gleft[j] > 0) {
                int d = std::min(fleft[i], gleft[j]);
                flow[i][j] += d;
                fleft[i] -= d;
                gleft[j] -= d;
                need -= d;
            }
    while (need > 0) {
        // BFS for an augmenting path from any unsaturated F-class.
        std::vector<int> prevF(nf, -1), prevG(ng, -1);
        std::vector<std::size_t> queue;
        for (std::size_t i = 0; i < nf; ++i)
            if (fleft[i] > 0) {
                prevF[i] = static_cast<int>(i);
                queue.push_back(i);
            }
        int found = -1;
        for (std::size_t qi = 0; qi < queue.size() && found < 0; ++qi) {
            std::size_t i = queue[qi];
            for (std::size_t j = 0; j < ng; ++j) {
                if (s[i][j] > t || prevG[j] >= 0) continue;
                prevG[j] = static_cast<int>(i);
                if (gleft[j] > 0) {
                    found = static_cast<int>(j);
                    break;
                }
                for (std::size_t i2 = 0; i2 < nf; ++i2)
                    if (flow[i2][j] > 0 && prevF[i2] < 0) {
                        prevF[i2] = -2 - static_cast<int>(j);
                        queue.push_back(i2);
                    }
            }
        }
        if (found < 0) return false;
        // Unwind the alternating path.
        int j = found;
        while (true) {
            int i = prevG[j];
            flow[i][j] += 1;
            if (prevF[i] == i) {
                fleft[i] -= 1;
                break;
            }
            int jprev = -2 - prevF[i];
            flow[i][jprev] -= 1;
            j = jprev;
        }
        gleft[found] -= 1;
        need -= 1;
    }
    return true;
}

}  // namespace

double fact_distance(const Factorization& F, const Factorization& G) {
    if (F.expanded_count() != G.expanded_count()) return 1.0;
    if (F.expanded_count() == 0) return 0.0;

    auto fcl = collect_classes(F);
    auto gcl = collect_classes(G);
    std::vector<std::vector<double>> s(fcl.size(), std::vector<double>(gcl.size()));
    std::vector<double> values;
    for (std::size_t i = 0; i < fcl.size(); ++i)
        for (std::size_t j = 0; j < gcl.size(); ++j) {
            s[i][j] = sin_distance(fcl[i].rep, gcl[j].rep);
            values.push_back(s[i][j]);
        }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<int> fc, gc;
    for (const auto& c : fcl) fc.push_back(c.count);
    for (const auto& c : gcl) gc.push_back(c.count);

    // Smallest threshold admitting a complete matching.
    std::size_t lo = 0, hi = values.size() - 1;
    if (!feasible(s, fc, gc, values[hi])) return 1.0;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible(s, fc, gc, values[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return values[lo];
}

}  // namespace polyfact
