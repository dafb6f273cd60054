#include "polyfact/multipoly.hpp"

#include <algorithm>
#include <cmath>

#include "polyfact/errors.hpp"

namespace polyfact {

MultiPoly MultiPoly::constant(Complex c, std::vector<std::string> vars) {
    MultiPoly p(std::move(vars));
    if (c != Complex(0.0)) p.terms_.emplace(Key(p.nvars(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(const std::string& name) {
    MultiPoly p({name});
    p.terms_.emplace(Key{1}, Complex(1.0));
    return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, Key exps, Complex c) {
    if (vars.size() != exps.size()) throw DimensionError("monomial exponent arity mismatch");
    MultiPoly p(std::move(vars));
    if (c != Complex(0.0)) p.terms_.emplace(std::move(exps), c);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Key& k = terms_.begin()->first;
    return std::all_of(k.begin(), k.end(), [](int e) { return e == 0; });
}

Complex MultiPoly::constant_value() const {
    if (!is_constant()) throw DimensionError("polynomial is not constant");
    return terms_.empty() ? Complex(0.0) : terms_.begin()->second;
}

TupleDegree MultiPoly::deg() const {
    std::vector<int> d(nvars(), 0);
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max(d[i], e[i]);
    return TupleDegree(std::move(d));
}

double MultiPoly::norm() const {
    double s = 0.0;
    for (const auto& [e, c] : terms_) s += std::norm(c);
    return std::sqrt(s);
}

double MultiPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

MultiPoly MultiPoly::normalized() const {
    double n = norm();
    return n == 0.0 ? *this : scaled(Complex(1.0 / n));
}

MultiPoly MultiPoly::cleaned(double rel) const {
    double cut = rel * max_abs_coeff();
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_)
        if (std::abs(c) > cut) r.terms_.emplace(e, c);
    return r;
}

void MultiPoly::add_term(const Key& e, Complex c) {
    if (e.size() != nvars()) throw DimensionError("term exponent arity mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != Complex(0.0)) terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
}

namespace {
void require_same_vars(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars() != b.vars())
        throw DimensionError("polynomials are over different variable lists; unify first");
}
}  // namespace

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    require_same_vars(*this, o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    require_same_vars(*this, o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    require_same_vars(*this, o);
    MultiPoly r(vars_);
    Key e(nvars());
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    }
    return r;
}

MultiPoly MultiPoly::scaled(Complex a) const {
    MultiPoly r(vars_);
    if (a == Complex(0.0)) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, a * c);
    return r;
}

MultiPoly MultiPoly::pow(int k) const {
    if (k < 0) throw DimensionError("negative polynomial power");
    MultiPoly acc = MultiPoly::constant(1.0, vars_);
    MultiPoly base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

MultiPoly MultiPoly::partial(std::size_t var) const {
    if (var >= nvars()) throw DimensionError("partial derivative variable out of range");
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Key d = e;
        d[var] -= 1;
        r.add_term(d, c * static_cast<double>(e[var]));
    }
    return r;
}

MultiPoly MultiPoly::dir_derivative(const std::vector<Complex>& z) const {
    if (z.size() != nvars()) throw DimensionError("direction arity mismatch");
    MultiPoly r(vars_);
    for (std::size_t i = 0; i < nvars(); ++i) {
        if (z[i] == Complex(0.0)) continue;
        r = r + partial(i).scaled(z[i]);
    }
    return r;
}

Complex MultiPoly::eval(const std::vector<Complex>& x) const {
    if (x.size() != nvars()) throw DimensionError("evaluation point arity mismatch");
    Complex s = 0.0;
    for (const auto& [e, c] : terms_) {
        Complex t = c;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[i];
        s += t;
    }
    return s;
}

MultiPoly MultiPoly::restrict_except(std::size_t keep,
                                     const std::vector<Complex>& consts) const {
    if (keep >= nvars() || consts.size() != nvars())
        throw DimensionError("restriction arity mismatch");
    MultiPoly r({vars_[keep]});
    for (const auto& [e, c] : terms_) {
        Complex t = c;
        for (std::size_t i = 0; i < nvars(); ++i) {
            if (i == keep) continue;
            for (int k = 0; k < e[i]; ++k) t *= consts[i];
        }
        r.add_term(Key{e[keep]}, t);
    }
    return r;
}

std::vector<std::size_t> MultiPoly::active_vars() const {
    std::vector<bool> used(nvars(), false);
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) used[i] = true;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < used.size(); ++i)
        if (used[i]) idx.push_back(i);
    return idx;
}

MultiPoly MultiPoly::project_vars(const std::vector<std::size_t>& idx) const {
    std::vector<std::string> nv;
    nv.reserve(idx.size());
    for (std::size_t i : idx) nv.push_back(vars_.at(i));
    std::vector<bool> kept(nvars(), false);
    for (std::size_t i : idx) kept[i] = true;
    MultiPoly r(nv);
    Key ne(idx.size());
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && !kept[i])
                throw DimensionError("projection drops an active variable");
        for (std::size_t j = 0; j < idx.size(); ++j) ne[j] = e[idx[j]];
        r.add_term(ne, c);
    }
    return r;
}

MultiPoly MultiPoly::embed_vars(const std::vector<std::string>& vars,
                                const std::vector<std::size_t>& idx) const {
    if (idx.size() != nvars()) throw DimensionError("embedding index arity mismatch");
    MultiPoly r(vars);
    Key ne(vars.size(), 0);
    for (const auto& [e, c] : terms_) {
        std::fill(ne.begin(), ne.end(), 0);
        for (std::size_t j = 0; j < idx.size(); ++j) ne[idx.at(j)] = e[j];
        r.add_term(ne, c);
    }
    return r;
}

std::vector<Complex> MultiPoly::univ_coeffs(std::size_t* var) const {
    auto act = active_vars();
    if (act.size() > 1)
        throw DimensionError("polynomial has more than one active variable");
    std::size_t v = act.empty() ? 0 : act[0];
    if (var) *var = v;
    int d = act.empty() ? 0 : deg()[v];
    std::vector<Complex> c(static_cast<std::size_t>(d) + 1, Complex(0.0));
    for (const auto& [e, coeff] : terms_) c[act.empty() ? 0 : e[v]] += coeff;
    return c;
}

std::pair<MultiPoly::Key, Complex> MultiPoly::lex_leading() const {
    if (terms_.empty()) throw DimensionError("zero polynomial has no leading term");
    auto it = terms_.rbegin();  // map keys ascend lexicographically
    return {it->first, it->second};
}

std::pair<MultiPoly, MultiPoly> unify_vars(const MultiPoly& p, const MultiPoly& q) {
    if (p.vars() == q.vars()) return {p, q};
    std::vector<std::string> merged = p.vars();
    for (const auto& v : q.vars())
        if (std::find(merged.begin(), merged.end(), v) == merged.end())
            merged.push_back(v);

    auto remap = [&](const MultiPoly& f) {
        std::vector<std::size_t> pos(f.nvars());
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            auto it = std::find(merged.begin(), merged.end(), f.vars()[i]);
            pos[i] = static_cast<std::size_t>(it - merged.begin());
        }
        return f.embed_vars(merged, pos);
    };
    return {remap(p), remap(q)};
}

}  // namespace polyfact
