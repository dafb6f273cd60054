#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "polyfact/errors.hpp"

namespace polyfact {

// Per-variable degree vector of a polynomial.  dim() is the dimension of the
// space of polynomials bounded componentwise by this degree.
class TupleDegree {
public:
    TupleDegree() = default;
    explicit TupleDegree(std::vector<int> exps) : e_(std::move(exps)) {
        for (int v : e_)
            if (v < 0) throw DimensionError("negative entry in tuple degree");
    }
    static TupleDegree zeros(std::size_t n) { return TupleDegree(std::vector<int>(n, 0)); }

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    const std::vector<int>& exps() const { return e_; }

    std::size_t dim() const {
        std::size_t d = 1;
        for (int v : e_) {
            d *= static_cast<std::size_t>(v) + 1;
            if (d > (std::size_t{1} << 31))
                throw DegreeOverflow("bounded-degree space dimension too large");
        }
        return d;
    }

    int total() const { return std::accumulate(e_.begin(), e_.end(), 0); }
    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
    }

    // Index of the unique nonzero entry; -1 for the zero tuple, -2 if several.
    int single_var() const {
        int idx = -1;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (e_[i] != 0) {
                if (idx >= 0) return -2;
                idx = static_cast<int>(i);
            }
        }
        return idx;
    }

    bool all_le(const TupleDegree& o) const {
        if (size() != o.size()) return false;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    TupleDegree operator+(const TupleDegree& o) const {
        check_arity(o);
        std::vector<int> r(e_);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.e_[i];
        return TupleDegree(std::move(r));
    }
    TupleDegree operator-(const TupleDegree& o) const {
        check_arity(o);
        std::vector<int> r(e_);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] -= o.e_[i];
            if (r[i] < 0) throw DimensionError("tuple degree difference is negative");
        }
        return TupleDegree(std::move(r));
    }
    static TupleDegree cw_max(const TupleDegree& a, const TupleDegree& b) {
        a.check_arity(b);
        std::vector<int> r(a.e_);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(r[i], b.e_[i]);
        return TupleDegree(std::move(r));
    }

    bool operator==(const TupleDegree& o) const { return e_ == o.e_; }
    bool operator!=(const TupleDegree& o) const { return e_ != o.e_; }
    // Lexicographic with x1 priority; used for canonical sorting.
    bool lex_less(const TupleDegree& o) const { return e_ < o.e_; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

private:
    void check_arity(const TupleDegree& o) const {
        if (size() != o.size()) throw DimensionError("tuple degree arity mismatch");
    }
    std::vector<int> e_;
};

}  // namespace polyfact
