#include "polyfact/structure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "polyfact/errors.hpp"

namespace polyfact {

namespace {
// Canonical component order: degree descending-lex first, then higher
// multiplicity first.
bool comp_less(const FactorStructure::Component& a, const FactorStructure::Component& b) {
    if (a.deg != b.deg) return b.deg.lex_less(a.deg);
    return a.mult > b.mult;
}
}  // namespace

FactorStructure::FactorStructure(std::vector<Component> comps) : comps_(std::move(comps)) {
    for (const auto& c : comps_) {
        if (c.deg.is_zero()) throw DimensionError("structure component of zero degree");
        if (c.mult < 1) throw DimensionError("structure multiplicity must be positive");
        if (c.deg.size() != comps_.front().deg.size())
            throw DimensionError("structure components have mixed arity");
    }
    std::sort(comps_.begin(), comps_.end(), comp_less);
}

TupleDegree FactorStructure::total_degree() const {
    if (comps_.empty()) throw DimensionError("empty structure has no degree");
    std::vector<int> acc(comps_.front().deg.size(), 0);
    for (const auto& c : comps_)
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c.mult * c.deg[i];
    return TupleDegree(std::move(acc));
}

long long FactorStructure::codim() const {
    long long sum = 0;
    for (const auto& c : comps_) sum += static_cast<long long>(c.deg.dim());
    return static_cast<long long>(total_degree().dim()) -
           (sum + 1 - static_cast<long long>(comps_.size()));
}

bool FactorStructure::is_trivial() const {
    if (comps_.size() == 1 && comps_[0].mult == 1) return true;
    // Univariate simple-roots case: total degree has one active variable and
    // every component is linear in it with multiplicity 1.
    TupleDegree m = total_degree();
    if (m.single_var() < 0) return false;
    for (const auto& c : comps_)
        if (c.mult != 1 || c.deg.total() != 1) return false;
    return true;
}

FactorStructure FactorStructure::combine_degrees(std::size_t i, std::size_t j) const {
    if (i == j || i >= comps_.size() || j >= comps_.size())
        throw DimensionError("combine_degrees index out of range");
    if (comps_[i].mult != comps_[j].mult)
        throw DimensionError("combine_degrees requires equal multiplicities");
    std::vector<Component> next;
    next.reserve(comps_.size() - 1);
    for (std::size_t t = 0; t < comps_.size(); ++t)
        if (t != i && t != j) next.push_back(comps_[t]);
    next.push_back({comps_[i].deg + comps_[j].deg, comps_[i].mult});
    return FactorStructure(std::move(next));
}

FactorStructure FactorStructure::split_multiplicity(std::size_t i, int khat) const {
    if (i >= comps_.size()) throw DimensionError("split_multiplicity index out of range");
    int k = comps_[i].mult;
    if (khat < 1 || khat >= k)
        throw DimensionError("split_multiplicity requires 1 <= khat < k");
    std::vector<Component> next = comps_;
    next[i].mult = khat;
    next.push_back({comps_[i].deg, k - khat});
    return FactorStructure(std::move(next));
}

std::vector<FactorStructure> FactorStructure::children() const {
    std::vector<FactorStructure> out;
    std::set<std::string> seen;
    auto push = [&](FactorStructure s) {
        if (seen.insert(s.to_string()).second) out.push_back(std::move(s));
    };
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        for (std::size_t j = i + 1; j < comps_.size(); ++j)
            if (comps_[i].mult == comps_[j].mult) push(combine_degrees(i, j));
        for (int khat = 1; khat <= comps_[i].mult / 2; ++khat)
            push(split_multiplicity(i, khat));
    }
    return out;
}

std::vector<FactorStructure> FactorStructure::parents() const {
    std::vector<FactorStructure> out;
    std::set<std::string> seen;
    auto push = [&](std::vector<Component> comps) {
        FactorStructure s(std::move(comps));
        if (seen.insert(s.to_string()).second) out.push_back(std::move(s));
    };
    // Reverse of multiplicity splitting: merge two equal-degree components.
    for (std::size_t i = 0; i < comps_.size(); ++i)
        for (std::size_t j = i + 1; j < comps_.size(); ++j) {
            if (comps_[i].deg != comps_[j].deg) continue;
            std::vector<Component> next;
            for (std::size_t t = 0; t < comps_.size(); ++t)
                if (t != i && t != j) next.push_back(comps_[t]);
            next.push_back({comps_[i].deg, comps_[i].mult + comps_[j].mult});
            push(std::move(next));
        }
    // Reverse of degree combining: split one degree into two nonzero parts.
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        const TupleDegree& d = comps_[i].deg;
        std::vector<int> part(d.size(), 0);
        // Enumerate componentwise subdegrees.
        while (true) {
            TupleDegree d1{std::vector<int>(part)};
            if (!d1.is_zero() && d1 != d) {
                TupleDegree d2 = d - d1;
                if (!d2.is_zero() && !d2.lex_less(d1)) {  // unordered pair once
                    std::vector<Component> next = comps_;
                    next[i].deg = d1;
                    next.push_back({d2, comps_[i].mult});
                    push(std::move(next));
                }
            }
            std::size_t pos = 0;
            while (pos < part.size() && part[pos] == d[pos]) part[pos++] = 0;
            if (pos == part.size()) break;
            ++part[pos];
        }
    }
    return out;
}

std::string FactorStructure::to_string() const {
    std::string s;
    for (const auto& c : comps_) {
        s += c.deg.to_string();
        if (c.mult > 1) s += "^" + std::to_string(c.mult);
    }
    return s;
}

bool precedes(const FactorStructure& N, const FactorStructure& M) {
    if (N.total_degree() != M.total_degree())
        throw DimensionError("precedes requires equal total degrees");
    if (N == M) return true;
    const long long target_codim = M.codim();
    if (N.codim() <= target_codim) return false;
    std::deque<FactorStructure> queue{N};
    std::set<std::string> seen{N.to_string()};
    while (!queue.empty()) {
        FactorStructure cur = std::move(queue.front());
        queue.pop_front();
        for (auto& ch : cur.children()) {
            if (ch == M) return true;
            if (ch.codim() <= target_codim) continue;  // codim only decreases
            if (seen.insert(ch.to_string()).second) queue.push_back(std::move(ch));
        }
    }
    return false;
}

namespace {
// Recursive enumeration in non-increasing canonical component order.
void enumerate_rec(const std::vector<int>& remaining,
                   const FactorStructure::Component* last, int max_components,
                   std::vector<FactorStructure::Component>& acc,
                   std::vector<FactorStructure>& out) {
    bool done = std::all_of(remaining.begin(), remaining.end(),
                            [](int v) { return v == 0; });
    if (done) {
        if (!acc.empty()) out.emplace_back(acc);
        return;
    }
    if (max_components > 0 && static_cast<int>(acc.size()) >= max_components) return;

    // Candidate degrees d <= remaining, descending lex, d != 0.
    std::vector<int> d(remaining.size(), 0);
    std::vector<std::vector<int>> degs;
    while (true) {
        if (std::any_of(d.begin(), d.end(), [](int v) { return v != 0; }))
            degs.push_back(d);
        std::size_t pos = 0;
        while (pos < d.size() && d[pos] == remaining[pos]) d[pos++] = 0;
        if (pos == d.size()) break;
        ++d[pos];
    }
    std::sort(degs.begin(), degs.end(), std::greater<>());

    for (const auto& dd : degs) {
        TupleDegree deg{std::vector<int>(dd)};
        int kmax = 0;
        for (std::size_t i = 0; i < dd.size(); ++i)
            if (dd[i] > 0) {
                int q = remaining[i] / dd[i];
                kmax = kmax == 0 ? q : std::min(kmax, q);
            }
        for (int k = kmax; k >= 1; --k) {
            FactorStructure::Component c{deg, k};
            if (last && comp_less(c, *last)) continue;  // keep non-increasing order
            std::vector<int> rest = remaining;
            bool ok = true;
            for (std::size_t i = 0; i < rest.size(); ++i) {
                rest[i] -= k * dd[i];
                if (rest[i] < 0) ok = false;
            }
            if (!ok) continue;
            acc.push_back(c);
            enumerate_rec(rest, &acc.back(), max_components, acc, out);
            acc.pop_back();
        }
    }
}
}  // namespace

std::vector<FactorStructure> enumerate_structures(const TupleDegree& m,
                                                  int max_components) {
    if (m.dim() > 400)
        throw DegreeOverflow("structure enumeration guarded to dim(m) <= 400");
    if (m.is_zero()) return {};
    std::vector<FactorStructure> out;
    std::vector<FactorStructure::Component> acc;
    enumerate_rec(m.exps(), nullptr, max_components, acc, out);
    std::sort(out.begin(), out.end(), [](const FactorStructure& a, const FactorStructure& b) {
        if (a.codim() != b.codim()) return a.codim() > b.codim();
        return a.to_string() < b.to_string();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const FactorStructure& select_max_codim(
    const std::vector<std::pair<FactorStructure, double>>& candidates, double eps) {
    const std::pair<FactorStructure, double>* best = nullptr;
    for (const auto& cand : candidates) {
        if (!(cand.second < eps)) continue;
        if (!best) {
            best = &cand;
            continue;
        }
        long long cb = best->first.codim(), cc = cand.first.codim();
        if (cc > cb ||
            (cc == cb && (cand.second < best->second ||
                          (cand.second == best->second &&
                           cand.first.to_string() < best->first.to_string()))))
            best = &cand;
    }
    if (!best) throw FactorizationFailure("no candidate structure within tolerance");
    return best->first;
}

namespace {
struct Lattice {
    std::vector<FactorStructure> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // from -> to (one op)
};

Lattice build_lattice(const TupleDegree& m) {
    Lattice lat;
    lat.nodes = enumerate_structures(m);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < lat.nodes.size(); ++i)
        index[lat.nodes[i].to_string()] = i;
    for (std::size_t i = 0; i < lat.nodes.size(); ++i)
        for (const auto& ch : lat.nodes[i].children())
            lat.edges.emplace_back(i, index.at(ch.to_string()));
    std::sort(lat.edges.begin(), lat.edges.end());
    lat.edges.erase(std::unique(lat.edges.begin(), lat.edges.end()), lat.edges.end());
    return lat;
}
}  // namespace

std::string lattice_dot(const TupleDegree& m) {
    Lattice lat = build_lattice(m);
    std::ostringstream os;
    os << "digraph stratification {\n";
    os << "  label=\"factorization structures of degree " << m.to_string() << "\";\n";
    for (std::size_t i = 0; i < lat.nodes.size(); ++i)
        os << "  n" << i << " [label=\"" << lat.nodes[i].to_string()
           << "\\ncodim " << lat.nodes[i].codim() << "\"];\n";
    for (const auto& [a, b] : lat.edges) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

std::string lattice_json(const TupleDegree& m) {
    Lattice lat = build_lattice(m);
    std::ostringstream os;
    os << "{\n  \"degree\": \"" << m.to_string() << "\",\n  \"nodes\": [";
    for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
        os << (i ? ",\n    " : "\n    ");
        os << "{\"id\": " << i << ", \"structure\": \"" << lat.nodes[i].to_string()
           << "\", \"codim\": " << lat.nodes[i].codim() << "}";
    }
    os << "\n  ],\n  \"edges\": [";
    for (std::size_t i = 0; i < lat.edges.size(); ++i) {
        os << (i ? ",\n    " : "\n    ");
        os << "{\"from\": " << lat.edges[i].first << ", \"to\": " << lat.edges[i].second
           << "}";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

}  // namespace polyfact
