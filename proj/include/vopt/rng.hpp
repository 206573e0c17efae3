#pragma once

#include "vopt/core.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace vopt {

/// Deterministic random source. Every stochastic routine in the library draws
/// from one of these, seeded explicitly, so a fixed seed reproduces reports
/// byte for byte. Doubles are built from raw engine words rather than
/// std::*_distribution to keep the stream independent of the standard library
/// implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    /// Uniform in [0,1).
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal();

    std::uint64_t raw() { return eng_(); }

    /// Point uniform in [-radius, radius]^n.
    Vec in_box(int n, double radius);

    /// Uniform direction on the unit sphere.
    Vec unit_vector(int n);

    /// Derived independent stream; used to hand per-task generators to
    /// parallel workers so results do not depend on scheduling.
    Rng fork(std::uint64_t stream) const {
        return Rng(seed_ ^ (0x9e3779b97f4a7c15ULL * (stream + 0x632be59bd9b4e019ULL)));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Radical-inverse (van der Corput) value of `index`+1 in the given base.
double halton(std::uint64_t index, unsigned base);

/// Halton point in [0,1)^dim using the first `dim` prime bases (dim <= 8).
Vec halton_point(std::uint64_t index, int dim);

/// Halton point scaled to [-radius, radius]^dim.
Vec halton_in_box(std::uint64_t index, int dim, double radius);

/// Low-discrepancy point in the standard (m-1)-simplex (entries >= 0, sum 1).
Vec simplex_point(std::uint64_t index, int m);

/// Low-discrepancy unit vector in R^n.
Vec sphere_point(std::uint64_t index, int n);

} // namespace vopt
