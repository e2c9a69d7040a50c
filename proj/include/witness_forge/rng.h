#pragma once

// Deterministic sampling helpers. Distributions are computed from raw
// mt19937_64 output so sequences do not depend on the standard library's
// distribution implementations.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "witness_forge/hermlin.h"

namespace witness_forge {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Unit vector, uniform on the complex sphere.
    std::vector<cplx> unit_vector(std::size_t n) {
        std::vector<cplx> v(n);
        double norm = 0.0;
        for (auto &z : v) {
            z = cplx(normal(), normal());
            norm += std::norm(z);
        }
        norm = std::sqrt(norm);
        for (auto &z : v) z /= norm;
        return v;
    }

    /// Uniform point of the probability simplex.
    std::vector<double> simplex_point(std::size_t n) {
        std::vector<double> p(n);
        double sum = 0.0;
        for (auto &x : p) {
            double u = uniform();
            while (u <= 0.0) u = uniform();
            x = -std::log(u);
            sum += x;
        }
        for (auto &x : p) x /= sum;
        return p;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace witness_forge
