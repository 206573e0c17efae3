#include "vopt/minimize.hpp"

#include <algorithm>

namespace vopt {

namespace {

Vec clamp_box(const Vec& x, double r) {
    if (r <= 0.0) return x;
    Vec y = x;
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = std::clamp(y[i], -r, r);
    return y;
}

/// Gradient with components pointing out of the box zeroed at active bounds.
Vec projected_gradient(const Vec& x, const Vec& g, double r) {
    if (r <= 0.0) return g;
    Vec pg = g;
    const double edge = r * (1.0 - 1e-12);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] >= edge && g[i] < 0) pg[i] = 0;
        if (x[i] <= -edge && g[i] > 0) pg[i] = 0;
    }
    return pg;
}

} // namespace

MinimizeResult bfgs_minimize(const ScalarFn& fn, const Vec& x0, const MinimizeOptions& opt) {
    const int n = static_cast<int>(x0.size());
    MinimizeResult res;
    Vec x = clamp_box(x0, opt.box_radius);
    Vec g(n);
    double f = fn(x, &g);
    if (!std::isfinite(f)) {
        res.x = x;
        res.value = f;
        res.diverged = true;
        return res;
    }
    res.best_seen = f;
    res.best_seen_x = x;
    if (opt.record_trail) res.trail.push_back(x);

    Mat H = Mat::Identity(n, n);  // inverse Hessian approximation
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        // divergence first: the scale-aware gradient test is meaningless
        // once the value has fallen through the floor
        if (f <= opt.divergence_floor || x.norm() >= opt.escape_norm) {
            res.diverged = true;
            break;
        }
        Vec pg = projected_gradient(x, g, opt.box_radius);
        if (pg.norm() <= opt.g_tol_rel * (1.0 + std::abs(f))) {
            res.converged = true;
            break;
        }
        Vec d = -(H * g);
        if (d.dot(g) >= 0) {  // not a descent direction; reset
            H = Mat::Identity(n, n);
            d = -g;
        }

        // Backtracking Armijo search, then greedy expansion while it keeps
        // paying off (needed to follow unbounded valleys quickly).
        const double c1 = 1e-4;
        double t = 1.0;
        double gd = g.dot(d);
        double f_new = f;
        Vec x_new = x;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            Vec cand = clamp_box(x + t * d, opt.box_radius);
            double fc = fn(cand, nullptr);
            if (std::isfinite(fc) && fc <= f + c1 * t * gd) {
                x_new = cand;
                f_new = fc;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;  // line search failed; treat as stalled
        if (t == 1.0) {
            for (int ex = 0; ex < 30; ++ex) {
                double t2 = t * 2.0;
                Vec cand = clamp_box(x + t2 * d, opt.box_radius);
                double fc = fn(cand, nullptr);
                if (std::isfinite(fc) && fc < f_new - 1e-12 * (1.0 + std::abs(f_new))) {
                    t = t2;
                    x_new = cand;
                    f_new = fc;
                } else {
                    break;
                }
            }
        }

        Vec g_new(n);
        double f_check = fn(x_new, &g_new);
        (void)f_check;
        Vec s = x_new - x;
        Vec y = g_new - g;
        double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            double rho = 1.0 / sy;
            Mat I = Mat::Identity(n, n);
            H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) +
                rho * s * s.transpose();
        } else {
            H = Mat::Identity(n, n);
        }
        x = x_new;
        f = f_new;
        g = g_new;
        if (f < res.best_seen) {
            res.best_seen = f;
            res.best_seen_x = x;
        }
        if (opt.record_trail) res.trail.push_back(x);
    }
    if (!res.converged && !res.diverged) {
        if (f <= opt.divergence_floor || x.norm() >= opt.escape_norm) res.diverged = true;
    }
    res.x = x;
    res.value = f;
    res.grad_norm = projected_gradient(x, g, opt.box_radius).norm();
    res.iterations = it;
    if (f < res.best_seen) {
        res.best_seen = f;
        res.best_seen_x = x;
    }
    if (opt.box_radius > 0) {
        const double edge = opt.box_radius * (1.0 - 1e-9);
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (std::abs(x[i]) >= edge) res.on_box_boundary = true;
    }
    return res;
}

Vec newton_polish(const ScalarFn& fn, const std::function<Mat(const Vec&)>& hess,
                  const Vec& x0, int max_iter) {
    Vec x = x0;
    Vec g(x.size());
    fn(x, &g);
    double gn = g.norm();
    for (int it = 0; it < max_iter; ++it) {
        if (gn <= 1e-14) break;
        Mat H = hess(x);
        double tau = 1e-12 * (1.0 + H.norm());
        bool stepped = false;
        for (int k = 0; k < 12; ++k) {
            Mat Hreg = H + tau * Mat::Identity(x.size(), x.size());
            Eigen::LDLT<Mat> ldlt(Hreg);
            if (ldlt.info() == Eigen::Success) {
                Vec step = ldlt.solve(-g);
                Vec cand = x + step;
                Vec gc(x.size());
                fn(cand, &gc);
                if (gc.norm() < gn) {
                    x = cand;
                    g = gc;
                    gn = gc.norm();
                    stepped = true;
                    break;
                }
            }
            tau = std::max(tau * 10.0, 1e-10);
        }
        if (!stepped) break;
    }
    return x;
}

LmResult levenberg_marquardt(const ResidualFn& fn, const Vec& x0, int nresiduals,
                             const LmOptions& opt) {
    const int n = static_cast<int>(x0.size());
    LmResult res;
    Vec x = x0;
    Vec r(nresiduals);
    Mat J(nresiduals, n);
    fn(x, r, &J);
    double cost = r.squaredNorm();
    double lambda = 1e-3 * (1.0 + J.squaredNorm());
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        double rn = std::sqrt(cost);
        if (rn <= opt.r_tol) {
            res.converged = true;
            break;
        }
        Vec g = J.transpose() * r;
        if (g.norm() <= opt.g_tol * (1.0 + cost)) break;
        Mat A = J.transpose() * J;
        bool stepped = false;
        for (int k = 0; k < 25; ++k) {
            Mat Areg = A + lambda * Mat::Identity(n, n);
            Vec step = Areg.ldlt().solve(-g);
            Vec cand = x + step;
            Vec rc(nresiduals);
            fn(cand, rc, nullptr);
            double cost_c = rc.squaredNorm();
            if (std::isfinite(cost_c) && cost_c < cost) {
                x = cand;
                fn(x, r, &J);
                cost = r.squaredNorm();
                lambda = std::max(lambda * 0.3, 1e-14);
                stepped = true;
                break;
            }
            lambda *= 4.0;
        }
        if (!stepped) break;
    }
    res.x = x;
    res.residual_norm = std::sqrt(cost);
    res.iterations = it;
    if (res.residual_norm <= opt.r_tol) res.converged = true;
    return res;
}

SphereResult sphere_minimize(const ScalarFn& fn, double radius, const Vec& x0,
                             const SphereOptions& opt) {
    SphereResult res;
    Vec x = x0;
    double xn = x.norm();
    if (xn < 1e-300) {
        res.x = x;
        return res;
    }
    x *= radius / xn;
    Vec g(x.size());
    double f = fn(x, &g);
    Vec prev_x, prev_rg;
    double step = 0.0;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        Vec xhat = x / radius;
        Vec rg = g - g.dot(xhat) * xhat;  // tangent-space gradient
        double rgn = rg.norm();
        res.riem_grad_norm = rgn;
        if (!std::isfinite(f)) break;
        if (rgn <= opt.g_tol_rel * (1.0 + std::abs(f))) {
            res.converged = true;
            break;
        }
        // Barzilai-Borwein spectral step, safeguarded by a monotone
        // backtracking/expansion search; plain 1/L crawls on these
        // badly scaled circles.
        if (prev_x.size() > 0) {
            Vec s = x - prev_x;
            Vec y = rg - prev_rg;
            double sy = s.dot(y);
            if (sy > 1e-300) step = s.squaredNorm() / sy;
        }
        if (step <= 0.0 || !std::isfinite(step)) step = radius / (10.0 * rgn);
        step = std::min(step, 0.5 * radius / rgn);  // stay on the hemisphere
        prev_x = x;
        prev_rg = rg;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            Vec cand = x - step * rg;
            cand *= radius / cand.norm();
            double fc = fn(cand, nullptr);
            if (std::isfinite(fc) && fc <= f - 1e-4 * step * rgn * rgn) {
                x = cand;
                f = fc;
                accepted = true;
                break;
            }
            step *= 0.4;
        }
        if (!accepted) break;
        // greedy expansion while the value keeps dropping
        for (int ex = 0; ex < 20; ++ex) {
            double t2 = step * 2.0;
            Vec cand = prev_x - t2 * rg;
            cand *= radius / cand.norm();
            double fc = fn(cand, nullptr);
            if (std::isfinite(fc) && fc < f - 1e-12 * (1.0 + std::abs(f))) {
                step = t2;
                x = cand;
                f = fc;
            } else {
                break;
            }
        }
        f = fn(x, &g);
    }
    res.x = x;
    res.value = f;
    res.iterations = it;
    return res;
}

} // namespace vopt
