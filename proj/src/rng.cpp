#include "vopt/rng.hpp"

#include <algorithm>

namespace vopt {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Vec Rng::in_box(int n, double radius) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = uniform(-radius, radius);
    return x;
}

Vec Rng::unit_vector(int n) {
    Vec x(n);
    double nrm = 0.0;
    do {
        for (int i = 0; i < n; ++i) x[i] = normal();
        nrm = x.norm();
    } while (nrm < 1e-12);
    return x / nrm;
}

double halton(std::uint64_t index, unsigned base) {
    std::uint64_t i = index + 1;
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

static const unsigned kPrimes[8] = {2, 3, 5, 7, 11, 13, 17, 19};

Vec halton_point(std::uint64_t index, int dim) {
    Vec x(dim);
    for (int j = 0; j < dim; ++j) x[j] = halton(index, kPrimes[j % 8]);
    return x;
}

Vec halton_in_box(std::uint64_t index, int dim, double radius) {
    Vec x = halton_point(index, dim);
    for (int j = 0; j < dim; ++j) x[j] = (2.0 * x[j] - 1.0) * radius;
    return x;
}

Vec simplex_point(std::uint64_t index, int m) {
    if (m <= 1) {
        Vec w(1);
        w[0] = 1.0;
        return w;
    }
    // Order statistics of a low-discrepancy point map uniformly to the simplex.
    std::vector<double> u(m - 1);
    for (int j = 0; j < m - 1; ++j) u[j] = halton(index, kPrimes[j % 8]);
    std::sort(u.begin(), u.end());
    Vec w(m);
    double prev = 0.0;
    for (int j = 0; j < m - 1; ++j) {
        w[j] = u[j] - prev;
        prev = u[j];
    }
    w[m - 1] = 1.0 - prev;
    return w;
}

Vec sphere_point(std::uint64_t index, int n) {
    // Deterministic direction from a Halton point through the normal inverse
    // trick would need erf^-1; a forked Rng keyed by the index is simpler and
    // just as reproducible.
    Rng g = Rng(0x517cc1b727220a95ULL).fork(index);
    return g.unit_vector(n);
}

} // namespace vopt
