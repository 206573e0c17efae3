#include "vopt/tangency.hpp"

#include "vopt/minimize.hpp"
#include "vopt/parallel.hpp"
#include "vopt/rabier.hpp"
#include "vopt/rng.hpp"

#include <algorithm>

namespace vopt {

double dependency_measure(const PolyMap& f, const Vec& x) {
    const int n = f.nvars();
    const int m = f.ncomponents();
    if (x.norm() == 0.0) throw ZeroPointError();
    if (n <= m) return 0.0;  // more columns than rows: always dependent
    Mat J = f.jacobian(x);
    Mat A(n, m + 1);
    for (int i = 0; i < m; ++i) {
        Vec g = J.row(i).transpose();
        A.col(i) = g / std::max(1.0, g.norm());
    }
    A.col(m) = x / x.norm();
    Eigen::JacobiSVD<Mat> svd(A);
    return svd.singularValues().minCoeff();
}

namespace {

ScalarFn weighted_objective(const PolyMap& f, const Vec& w) {
    return [&f, w](const Vec& x, Vec* grad) {
        if (grad) {
            Mat J = f.jacobian(x);
            *grad = J.transpose() * w;
            return f.eval(x).dot(w);
        }
        return f.eval(x).dot(w);
    };
}

TangencySample make_sample(const PolyMap& f, const Vec& x, const Vec& weight, int seed_index,
                           int weight_index) {
    TangencySample s;
    s.x = x;
    s.radius = x.norm();
    s.fvalue = f.eval(x);
    s.dependency = dependency_measure(f, x);
    s.nu = rabier_nu(f, x).value;
    s.nu_scaled = s.radius * s.nu;
    s.weight = weight;
    s.seed_index = seed_index;
    s.weight_index = weight_index;
    return s;
}

} // namespace

std::vector<TangencySample> sphere_stationary_points(const PolyMap& f, double radius,
                                                     const std::vector<Vec>& seeds,
                                                     const std::vector<Vec>& weights,
                                                     const SphereStationaryOptions& opt) {
    if (radius <= 0.0) throw Error("sphere_stationary_points: radius must be positive");
    if (seeds.empty() || weights.empty())
        throw Error("sphere_stationary_points: need at least one seed and one weight");
    const int pairs = static_cast<int>(seeds.size() * weights.size());
    std::vector<std::optional<TangencySample>> slots(pairs);
    SphereOptions sopt;
    sopt.max_iter = opt.max_iter;
    sopt.g_tol_rel = opt.g_tol_rel;
    parallel_for(pairs, [&](int k) {
        const int si = k / static_cast<int>(weights.size());
        const int wi = k % static_cast<int>(weights.size());
        ScalarFn obj = weighted_objective(f, weights[wi]);
        SphereResult r = sphere_minimize(obj, radius, seeds[si] * radius, sopt);
        if (!r.converged || r.x.norm() == 0.0) return;
        TangencySample s = make_sample(f, r.x, weights[wi], si, wi);
        if (s.dependency <= opt.dependency_tol) slots[k] = std::move(s);
    });
    std::vector<TangencySample> out;
    for (auto& s : slots)
        if (s) out.push_back(std::move(*s));
    return out;
}

TangencyTrace trace_to_infinity(const PolyMap& f, const TangencySample& seed_sample,
                                const std::vector<double>& radii, const TraceOptions& opt) {
    for (size_t k = 1; k < radii.size(); ++k)
        if (radii[k] <= radii[k - 1]) throw Error("trace_to_infinity: radii must increase");
    TangencyTrace trace;
    trace.samples.push_back(seed_sample);
    SphereOptions sopt;
    sopt.max_iter = opt.max_iter;
    sopt.g_tol_rel = opt.g_tol_rel;
    ScalarFn obj = weighted_objective(f, seed_sample.weight);
    Vec x = seed_sample.x;
    for (double radius : radii) {
        if (radius <= seed_sample.radius * (1.0 + 1e-12)) continue;
        SphereResult r = sphere_minimize(obj, radius, x * (radius / x.norm()), sopt);
        if (!r.converged) {
            trace.status = TraceStatus::lost_track;
            break;
        }
        TangencySample s =
            make_sample(f, r.x, seed_sample.weight, seed_sample.seed_index, seed_sample.weight_index);
        if (s.dependency > opt.dependency_tol) {
            trace.status = TraceStatus::lost_track;
            break;
        }
        trace.samples.push_back(std::move(s));
        x = r.x;
    }

    const auto& ss = trace.samples;
    const size_t k = ss.size();
    if (trace.status == TraceStatus::converged && k >= 3) {
        const Vec& a = ss[k - 1].fvalue;
        const Vec& b = ss[k - 2].fvalue;
        const Vec& c = ss[k - 3].fvalue;
        double tol = opt.cluster_tol_rel * (1.0 + a.norm());
        if (all_finite(a) && (a - b).norm() <= tol && (a - c).norm() <= tol &&
            (b - c).norm() <= tol) {
            trace.limit_estimate = (a + b + c) / 3.0;
        }
    }

    // Witness tags. nu values below the solver's resolution floor count as
    // zero: a projected-gradient tolerance of g_tol_rel*(1+|f|) cannot
    // distinguish smaller gradients from exact criticality.
    if (trace.limit_estimate) {
        if (opt.sublevel) {
            double slack = opt.slack_tol_rel * (1.0 + opt.sublevel->norm());
            for (const auto& s : ss)
                if (!leq_with_slack(s.fvalue, *opt.sublevel, slack)) trace.sublevel_ok = false;
        }
        bool dep_ok = true;
        for (const auto& s : ss) dep_ok = dep_ok && s.dependency <= opt.dependency_tol;
        trace.tangency_witness = dep_ok && trace.sublevel_ok;

        double wref = std::abs(ss.front().fvalue.dot(ss.front().weight));
        double nu_floor = 10.0 * opt.g_tol_rel * (1.0 + wref);
        double nu_first = ss.front().nu;
        double nu_last = ss.back().nu;
        trace.ps_witness =
            trace.sublevel_ok && (nu_last <= std::max(0.01 * nu_first, nu_floor));
        double ns_first = ss.front().nu_scaled;
        double ns_last = ss.back().nu_scaled;
        double ns_floor = nu_floor * ss.back().radius;
        trace.weak_ps_witness =
            trace.sublevel_ok && (ns_last <= std::max(0.01 * ns_first, ns_floor));
    }
    return trace;
}

std::vector<ValueCluster> cluster_values(const std::vector<Vec>& points,
                                         const std::vector<Vec>& reps, double tol_rel) {
    std::vector<int> order(points.size());
    for (size_t i = 0; i < points.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Vec& p = points[a];
        const Vec& q = points[b];
        for (Eigen::Index i = 0; i < p.size(); ++i)
            if (p[i] != q[i]) return p[i] < q[i];
        return a < b;
    });
    std::vector<ValueCluster> clusters;
    std::vector<Vec> sums;
    for (int idx : order) {
        const Vec& p = points[idx];
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t c = 0; c < clusters.size(); ++c) {
            double d = (clusters[c].center - p).norm();
            double tol = tol_rel * (1.0 + clusters[c].center.norm());
            if (d <= tol && d < best_d) {
                best = static_cast<int>(c);
                best_d = d;
            }
        }
        if (best < 0) {
            ValueCluster c;
            c.center = p;
            c.count = 1;
            if (!reps.empty()) c.representative_x = reps[idx];
            clusters.push_back(std::move(c));
            sums.push_back(p);
        } else {
            sums[best] += p;
            clusters[best].count += 1;
            clusters[best].center = sums[best] / clusters[best].count;
        }
    }
    return clusters;
}

std::vector<double> geometric_radii(double r0, double factor, int steps) {
    std::vector<double> radii;
    radii.reserve(steps);
    double r = r0;
    for (int k = 0; k < steps; ++k) {
        radii.push_back(r);
        r *= factor;
    }
    return radii;
}

std::vector<Vec> default_weight_grid(int m, int n_weights) {
    std::vector<Vec> weights;
    if (m == 1) {
        weights.push_back(Vec::Ones(1));
        return weights;
    }
    for (int i = 0; i < m; ++i) {
        Vec e = Vec::Zero(m);
        e[i] = 1.0;
        weights.push_back(e);
    }
    for (int k = 0; k < n_weights; ++k) weights.push_back(simplex_point(k, m));
    return weights;
}

TangencyEstimate estimate_tangency_values(const PolyMap& f, const TangencyConfig& cfg) {
    TangencyEstimate est;
    est.config = cfg;
    if (cfg.n_seeds <= 0) throw Error("estimate_tangency_values: n_seeds must be positive");
    std::vector<double> radii = cfg.radii.empty() ? geometric_radii(10, 2, 14) : cfg.radii;
    for (size_t k = 1; k < radii.size(); ++k)
        if (radii[k] <= radii[k - 1]) throw Error("estimate_tangency_values: radii must increase");

    const int n = f.nvars();
    std::vector<Vec> seeds;
    for (int s = 0; s < cfg.n_seeds; ++s) seeds.push_back(sphere_point(cfg.seed * 1000003ULL + s, n));
    std::vector<Vec> weights = cfg.weight_override.empty()
                                   ? default_weight_grid(f.ncomponents(), cfg.n_weights)
                                   : cfg.weight_override;

    SphereStationaryOptions sopt;
    sopt.dependency_tol = cfg.dependency_tol;
    sopt.max_iter = cfg.max_iter;
    sopt.g_tol_rel = cfg.g_tol_rel;
    std::vector<TangencySample> first =
        sphere_stationary_points(f, radii.front(), seeds, weights, sopt);

    TraceOptions topt;
    topt.cluster_tol_rel = cfg.cluster_tol_rel;
    topt.dependency_tol = cfg.dependency_tol;
    topt.slack_tol_rel = cfg.slack_tol_rel;
    topt.sublevel = cfg.sublevel;
    topt.max_iter = cfg.max_iter;
    topt.g_tol_rel = cfg.g_tol_rel;
    std::vector<double> tail(radii.begin() + 1, radii.end());

    std::vector<TangencyTrace> traces(first.size());
    parallel_for(static_cast<int>(first.size()),
                 [&](int i) { traces[i] = trace_to_infinity(f, first[i], tail, topt); });
    est.traces_total = static_cast<int>(traces.size());

    std::vector<Vec> limits;
    std::vector<Vec> reps;
    for (auto& t : traces) {
        if (!t.limit_estimate) continue;
        est.traces_with_limit += 1;
        if (cfg.sublevel && !t.sublevel_ok) continue;
        limits.push_back(*t.limit_estimate);
        reps.push_back(t.samples.back().x);
        est.traces.push_back(std::move(t));
    }
    est.clusters = cluster_values(limits, reps, cfg.cluster_tol_rel);
    return est;
}

void write_trace_csv(std::ostream& os, const TangencyTrace& trace, int nvars, int ncomps) {
    os << "radius";
    for (int j = 1; j <= nvars; ++j) os << ",x_" << j;
    for (int i = 1; i <= ncomps; ++i) os << ",f_" << i;
    os << ",dependency,nu,nu_scaled\n";
    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    for (const auto& s : trace.samples) {
        put(s.radius);
        for (int j = 0; j < nvars; ++j) {
            os << ",";
            put(s.x[j]);
        }
        for (int i = 0; i < ncomps; ++i) {
            os << ",";
            put(s.fvalue[i]);
        }
        os << ",";
        put(s.dependency);
        os << ",";
        put(s.nu);
        os << ",";
        put(s.nu_scaled);
        os << "\n";
    }
}

} // namespace vopt
