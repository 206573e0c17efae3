#include "vopt/minimize.hpp"
#include "vopt/polynomial.hpp"
#include "vopt/rng.hpp"

#include <doctest.h>

using namespace vopt;

TEST_CASE("bfgs finds a quadratic minimum to high accuracy") {
    ScalarFn fn = [](const Vec& x, Vec* g) {
        Vec c(2);
        c << 1.0, -2.0;
        Vec d = x - c;
        if (g) *g = 2.0 * d;
        return d.squaredNorm();
    };
    Rng rng(3);
    MinimizeOptions opt;
    MinimizeResult r = bfgs_minimize(fn, rng.in_box(2, 3.0), opt);
    CHECK(r.converged);
    CHECK(std::abs(r.x[0] - 1.0) < 1e-6);
    CHECK(std::abs(r.x[1] + 2.0) < 1e-6);
}

TEST_CASE("bfgs flags divergence on an unbounded objective") {
    ScalarFn fn = [](const Vec& x, Vec* g) {
        if (g) {
            g->resize(1);
            (*g)[0] = 1.0;
        }
        return x[0];
    };
    Vec x0(1);
    x0 << 0.0;
    MinimizeOptions opt;
    opt.max_iter = 400;
    MinimizeResult r = bfgs_minimize(fn, x0, opt);
    CHECK(r.diverged);
    CHECK(r.value <= -1e6);
}

TEST_CASE("box projection stops at the boundary with a projected-gradient zero") {
    ScalarFn fn = [](const Vec& x, Vec* g) {
        if (g) {
            g->resize(1);
            (*g)[0] = 1.0;
        }
        return x[0];
    };
    Vec x0(1);
    x0 << 0.5;
    MinimizeOptions opt;
    opt.box_radius = 2.0;
    MinimizeResult r = bfgs_minimize(fn, x0, opt);
    CHECK(r.converged);
    CHECK(r.on_box_boundary);
    CHECK(r.x[0] == doctest::Approx(-2.0));
}

TEST_CASE("levenberg-marquardt solves a small polynomial system") {
    PolyMap f = parse_poly_map("x1^2 + x2^2 - 4\nx1 - x2", 2);
    ResidualFn fn = [&](const Vec& x, Vec& r, Mat* J) {
        r = f.eval(x);
        if (J) *J = f.jacobian(x);
    };
    Vec x0(2);
    x0 << 2.0, 1.0;
    LmOptions opt;
    opt.r_tol = 1e-12;
    LmResult res = levenberg_marquardt(fn, x0, 2, opt);
    CHECK(res.converged);
    CHECK(std::abs(res.x[0] - std::sqrt(2.0)) < 1e-9);
    CHECK(std::abs(res.x[1] - std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("sphere minimizer stays on the sphere and reaches the optimum") {
    // minimize <c, x> on ||x|| = 3: optimum is -3 c / ||c||
    Vec c(3);
    c << 1.0, -2.0, 0.5;
    ScalarFn fn = [&](const Vec& x, Vec* g) {
        if (g) *g = c;
        return c.dot(x);
    };
    Rng rng(5);
    SphereResult r = sphere_minimize(fn, 3.0, rng.unit_vector(3));
    CHECK(r.converged);
    CHECK(std::abs(r.x.norm() - 3.0) <= 1e-8 * 3.0);
    Vec expect = -3.0 * c / c.norm();
    CHECK((r.x - expect).norm() < 1e-6);
}

TEST_CASE("newton polish sharpens a quartic minimum") {
    PolyMap f = parse_poly_map("x1^2*x2^4 + x1^4*x2^2 - 3*x1^2*x2^2 + 1", 2);
    ScalarFn fn = [&](const Vec& x, Vec* g) {
        if (g) *g = f.gradient(0, x);
        return f.eval(x)[0];
    };
    auto hess = [&](const Vec& x) { return f.hessian(0, x); };
    Vec x0(2);
    x0 << 1.03, 0.96;
    Vec polished = newton_polish(fn, hess, x0);
    Vec target(2);
    target << 1.0, 1.0;
    CHECK((polished - target).norm() < 1e-8);
}
