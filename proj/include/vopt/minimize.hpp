#pragma once

#include "vopt/core.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace vopt {

/// Objective callback: returns the value and, when grad != nullptr, fills the
/// gradient.
using ScalarFn = std::function<double(const Vec&, Vec*)>;

struct MinimizeOptions {
    int max_iter = 200;
    double g_tol_rel = 1e-9;  // stop when ||g|| <= g_tol_rel * (1 + |f|)
    double box_radius = 0.0;  // > 0: iterates clamped to [-r, r]^n
    double divergence_floor = -1e6;
    double escape_norm = 1e9;
    bool record_trail = false;
};

struct MinimizeResult {
    Vec x;
    double value = std::numeric_limits<double>::infinity();
    double grad_norm = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool diverged = false;
    bool on_box_boundary = false;
    int iterations = 0;
    double best_seen = std::numeric_limits<double>::infinity();
    Vec best_seen_x;
    std::vector<Vec> trail;  // accepted iterates when record_trail is set
};

/// Quasi-Newton (BFGS) descent with backtracking/expanding line search.
/// With box_radius set, iterates are projected onto the box and convergence
/// is measured on the projected gradient.
MinimizeResult bfgs_minimize(const ScalarFn& fn, const Vec& x0, const MinimizeOptions& opt);

/// Damped-Newton refinement of a stationary point using exact Hessians.
/// Returns the polished point, or x0 unchanged when no improvement is found.
Vec newton_polish(const ScalarFn& fn, const std::function<Mat(const Vec&)>& hess,
                  const Vec& x0, int max_iter = 15);

/// Residual callback: fills r(x) and, when J != nullptr, the Jacobian.
using ResidualFn = std::function<void(const Vec&, Vec&, Mat*)>;

struct LmOptions {
    int max_iter = 120;
    double r_tol = 0.0;       // stop when ||r|| <= r_tol
    double g_tol = 1e-14;     // stop when ||J^T r|| small (scaled)
};

struct LmResult {
    Vec x;
    double residual_norm = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;
};

/// Levenberg-Marquardt least squares on ||r(x)||^2.
LmResult levenberg_marquardt(const ResidualFn& fn, const Vec& x0, int nresiduals,
                             const LmOptions& opt);

struct SphereOptions {
    int max_iter = 500;
    double g_tol_rel = 1e-9;  // Riemannian gradient tolerance, scaled by 1+|f|
};

struct SphereResult {
    Vec x;
    double value = std::numeric_limits<double>::infinity();
    double riem_grad_norm = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;
};

/// Projected gradient on the sphere ||x|| = radius: step along the tangent
/// direction with backtracking, then retract x <- radius * x / ||x||.
SphereResult sphere_minimize(const ScalarFn& fn, double radius, const Vec& x0,
                             const SphereOptions& opt = {});

} // namespace vopt
