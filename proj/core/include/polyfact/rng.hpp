#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace polyfact {

// Splitmix64-based generator.  Self-contained so that streams are identical
// across platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> cgaussian() { return {gaussian(), gaussian()}; }

    std::complex<double> unit_complex() {
        double a = 6.283185307179586476925286766559 * uniform();
        return {std::cos(a), std::sin(a)};
    }

    // Random point on the complex unit sphere in C^n.
    std::vector<std::complex<double>> unit_direction(std::size_t n) {
        std::vector<std::complex<double>> z(n);
        double s = 0.0;
        do {
            for (auto& v : z) v = cgaussian();
            s = 0.0;
            for (const auto& v : z) s += std::norm(v);
        } while (s == 0.0);
        s = std::sqrt(s);
        for (auto& v : z) v /= s;
        return z;
    }

    // Deterministic sub-stream for (seed, salt) pairs, used by retries.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
        Rng r(seed ^ (0x632be59bd9b4e019ULL * (salt + 1)));
        return r.next();
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace polyfact
