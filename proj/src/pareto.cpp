#include "vopt/pareto.hpp"

#include "vopt/minimize.hpp"
#include "vopt/parallel.hpp"
#include "vopt/rabier.hpp"
#include "vopt/rng.hpp"

#include <algorithm>
#include <map>

namespace vopt {

namespace {

/// sigma_min(Df(x))^2 as the smallest eigenvalue of J J^T, with the
/// eigenvector-based gradient (exact where the eigenvalue is simple).
double sigma_min_sq(const PolyMap& f, const Vec& x, Vec* grad) {
    Mat J = f.jacobian(x);
    Mat B = J * J.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> eig(B);
    int idx = 0;
    double lam = eig.eigenvalues()[idx];
    if (grad) {
        Vec u = eig.eigenvectors().col(idx);
        const int n = f.nvars();
        const int m = f.ncomponents();
        std::vector<Mat> H(m);
        for (int i = 0; i < m; ++i) H[i] = f.hessian(i, x);
        grad->resize(n);
        for (int k = 0; k < n; ++k) {
            Mat Ck(m, n);  // d J / d x_k
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) Ck(i, j) = H[i](j, k);
            Mat dB = Ck * J.transpose() + J * Ck.transpose();
            (*grad)[k] = u.dot(dB * u);
        }
    }
    return lam;
}

} // namespace

CriticalValueResult sample_critical_values(const PolyMap& f, const CriticalBudget& budget) {
    CriticalValueResult result;
    if (f.nvars() <= f.ncomponents()) {
        // Df can never be surjective only through rank loss here: every value
        // is critical, so sampling the set is pointless; report the flag.
        result.degenerate_dimension = true;
        return result;
    }
    if (budget.n_starts <= 0) throw Error("sample_critical_values: n_starts must be positive");

    ScalarFn obj = [&f](const Vec& x, Vec* grad) { return sigma_min_sq(f, x, grad); };
    MinimizeOptions mopt;
    mopt.max_iter = budget.iter_cap;
    mopt.box_radius = budget.box_radius;
    mopt.g_tol_rel = 1e-12;

    auto accept = [&](const Vec& x, std::vector<Vec>& vals, std::vector<Vec>& xs) {
        Mat J = f.jacobian(x);
        Eigen::JacobiSVD<Mat> svd(J);
        double smin = svd.singularValues().minCoeff();
        if (smin <= budget.rank_tol_rel * (1.0 + J.norm())) {
            Vec fv = f.eval(x);
            if (all_finite(fv)) {
                vals.push_back(fv);
                xs.push_back(x);
            }
        }
    };

    std::vector<Vec> values, points;
    {
        std::vector<std::optional<Vec>> slot(budget.n_starts);
        parallel_for(budget.n_starts, [&](int s) {
            Vec x0 = halton_in_box(budget.seed * 1009ULL + s, f.nvars(), budget.box_radius);
            MinimizeResult r = bfgs_minimize(obj, x0, mopt);
            if (r.converged || r.value <= 1e-16) slot[s] = r.x;
        });
        for (auto& s : slot)
            if (s) accept(*s, values, points);
    }
    std::vector<ValueCluster> clusters = cluster_values(values, points, budget.cluster_tol_rel);

    // adaptive refinement: start midway between value-adjacent clusters to
    // close gaps along one-dimensional critical value curves
    for (int round = 0; round < budget.refine_rounds; ++round) {
        std::vector<int> order(clusters.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const Vec& p = clusters[a].center;
            const Vec& q = clusters[b].center;
            for (Eigen::Index i = 0; i < p.size(); ++i)
                if (p[i] != q[i]) return p[i] < q[i];
            return a < b;
        });
        std::vector<Vec> starts;
        for (size_t k = 0; k + 1 < order.size(); ++k) {
            const ValueCluster& a = clusters[order[k]];
            const ValueCluster& b = clusters[order[k + 1]];
            double gap = (a.center - b.center).norm();
            double scale = 1.0 + std::min(a.center.norm(), b.center.norm());
            double tol = budget.cluster_tol_rel * scale;
            // close gaps along a curve, but do not bridge separated components
            if (gap > 2.0 * tol && gap < 0.5 * scale && a.representative_x.size() > 0 &&
                b.representative_x.size() > 0)
                starts.push_back(0.5 * (a.representative_x + b.representative_x));
        }
        if (starts.empty()) break;
        std::vector<std::optional<Vec>> slot(starts.size());
        parallel_for(static_cast<int>(starts.size()), [&](int s) {
            MinimizeResult r = bfgs_minimize(obj, starts[s], mopt);
            if (r.converged || r.value <= 1e-16) slot[s] = r.x;
        });
        for (auto& s : slot)
            if (s) accept(*s, values, points);
        clusters = cluster_values(values, points, budget.cluster_tol_rel);
    }

    result.clusters = std::move(clusters);
    return result;
}

namespace {

bool dominates(const Vec& p, const Vec& q) {
    bool strict = false;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] > q[i]) return false;
        if (p[i] < q[i]) strict = true;
    }
    return strict;
}

} // namespace

std::vector<int> nondominated_indices(const std::vector<Vec>& points) {
    const int k = static_cast<int>(points.size());
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    // any dominator of p sorts lexicographically before p, so only the prefix
    // needs scanning
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Vec& p = points[a];
        const Vec& q = points[b];
        for (Eigen::Index i = 0; i < p.size(); ++i)
            if (p[i] != q[i]) return p[i] < q[i];
        return a < b;
    });
    std::vector<char> dominated(k, 0);
    for (int pos = 0; pos < k; ++pos) {
        const Vec& q = points[order[pos]];
        for (int prev = 0; prev < pos; ++prev) {
            if (dominated[order[pos]]) break;
            if (dominates(points[order[prev]], q)) dominated[order[pos]] = 1;
        }
    }
    std::vector<int> keep;
    for (int i = 0; i < k; ++i)
        if (!dominated[i]) keep.push_back(i);
    return keep;
}

std::vector<Vec> nondominated_filter(const std::vector<Vec>& points) {
    std::vector<Vec> out;
    for (int i : nondominated_indices(points)) out.push_back(points[i]);
    return out;
}

namespace {

std::vector<Vec> positive_weight_grid(int m, int n_weights) {
    std::vector<Vec> weights;
    if (m == 1) {
        weights.push_back(Vec::Ones(1));
        return weights;
    }
    weights.push_back(Vec::Constant(m, 1.0 / m));
    const double wmin = 0.02;
    for (int k = 0; weights.size() < static_cast<size_t>(n_weights) && k < 8 * n_weights; ++k) {
        Vec w = simplex_point(k, m);
        bool interior = true;
        for (int i = 0; i < m; ++i) interior = interior && w[i] >= wmin;
        if (interior) weights.push_back(w);
    }
    return weights;
}

struct VerifyContext {
    std::vector<Vec> pool;  // image values candidates are checked against
    double tie_tol_rel = 1e-7;
};

/// Dominance classification of a candidate value against the pool.
ParetoKind classify(const Vec& u, const VerifyContext& ctx) {
    bool weak_hit = false;
    const double tau = ctx.tie_tol_rel * (1.0 + u.norm());
    for (const auto& v : ctx.pool) {
        bool leq = true, all_strict = true, any_strict = false;
        for (Eigen::Index i = 0; i < u.size(); ++i) {
            if (v[i] > u[i] + tau) leq = false;
            if (v[i] >= u[i] - tau) all_strict = false;
            if (v[i] < u[i] - tau) any_strict = true;
        }
        if (!leq || !any_strict) continue;  // ties are not domination
        if (all_strict) return ParetoKind::unverified;  // strictly beaten: discard
        weak_hit = true;
    }
    return weak_hit ? ParetoKind::weak_only : ParetoKind::pareto_verified_local;
}

/// Targeted continuation: looks for image points just below u (in the
/// dominance order) by least-squares runs toward a ladder of shifted targets.
/// Everything found goes into the shared pool; this is what rules out
/// candidates whose infimum escapes to infinity.
void probe_below(const PolyMap& f, const Vec& u, double box_radius, std::uint64_t seed,
                 std::vector<Vec>& pool_out) {
    const int n = f.nvars();
    static const double ladder[] = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    for (int li = 0; li < 5; ++li) {
        double delta = ladder[li] * (1.0 + u.cwiseAbs().maxCoeff());
        Vec c = u.array() - delta;
        ScalarFn obj = [&f, &c](const Vec& x, Vec* grad) {
            Vec r = f.eval(x) - c;
            if (grad) *grad = 2.0 * (f.jacobian(x).transpose() * r);
            return r.squaredNorm();
        };
        MinimizeOptions mopt;
        mopt.max_iter = 200;
        mopt.g_tol_rel = 1e-10;
        Rng rng = Rng(seed).fork(0xbe10f000ULL + li);
        for (int s = 0; s < 8; ++s) {
            Vec x0 = rng.in_box(n, 3.0 * box_radius);
            MinimizeResult r = bfgs_minimize(obj, x0, mopt);
            Vec fv = f.eval(r.x);
            if (all_finite(fv)) pool_out.push_back(fv);
        }
    }
}

} // namespace

ParetoSearchResult find_pareto_points(const PolyMap& f, const Vec& tbar,
                                      const ParetoSearchBudget& budget) {
    if (budget.n_weights <= 0 || budget.n_starts <= 0)
        throw Error("find_pareto_points: budget must be positive");
    const int n = f.nvars();
    const int m = f.ncomponents();
    const double slack = budget.slack_tol_rel * (1.0 + tbar.norm());

    ParetoSearchResult result;
    result.observed_floor = Vec::Constant(m, std::numeric_limits<double>::infinity());
    auto observe = [&](const Vec& fv) {
        if (!all_finite(fv)) return;
        for (int i = 0; i < m; ++i) result.observed_floor[i] = std::min(result.observed_floor[i], fv[i]);
    };

    std::vector<Vec> weights = positive_weight_grid(m, budget.n_weights);

    // reference point strictly below everything observed, for the
    // achievement (Chebyshev-style) pass
    Vec ref = Vec::Constant(m, std::numeric_limits<double>::infinity());
    double spread = 0.0;
    for (int s = 0; s < 500; ++s) {
        Vec fv = f.eval(halton_in_box(budget.seed * 40087ULL + s, n, budget.box_radius));
        if (!all_finite(fv)) continue;
        observe(fv);
        for (int i = 0; i < m; ++i) ref[i] = std::min(ref[i], fv[i]);
        spread = std::max(spread, fv.cwiseAbs().maxCoeff());
    }
    for (int i = 0; i < m; ++i) {
        if (!std::isfinite(ref[i])) ref[i] = 0.0;
        ref[i] -= 0.05 * (1.0 + spread);
    }

    struct Candidate {
        Vec x;
        Vec value;
        Vec weight;
        double scalarized;
    };
    std::vector<std::vector<Candidate>> found(2 * weights.size());
    std::vector<double> best_scalar(weights.size(), std::numeric_limits<double>::infinity());

    MinimizeOptions mopt;
    mopt.max_iter = budget.iter_cap;
    mopt.box_radius = budget.box_radius;
    mopt.g_tol_rel = 1e-9;

    // pass 1: plain weighted sums (find the supported points, polishable)
    parallel_for(static_cast<int>(weights.size()), [&](int wi) {
        const Vec& w = weights[wi];
        ScalarFn obj = [&f, &w](const Vec& x, Vec* grad) {
            if (grad) *grad = f.jacobian(x).transpose() * w;
            return f.eval(x).dot(w);
        };
        auto hess = [&f, &w](const Vec& x) {
            Mat H = Mat::Zero(x.size(), x.size());
            for (int i = 0; i < w.size(); ++i) H += w[i] * f.hessian(i, x);
            return H;
        };
        for (int s = 0; s < budget.n_starts; ++s) {
            Vec x0 = halton_in_box(budget.seed * 5077ULL + wi * budget.n_starts + s, n,
                                   budget.box_radius);
            MinimizeResult r = bfgs_minimize(obj, x0, mopt);
            best_scalar[wi] = std::min(best_scalar[wi], r.best_seen);
            if (!r.converged) continue;
            Vec x = r.x;
            if (!r.on_box_boundary) x = newton_polish(obj, hess, x);
            if (x.cwiseAbs().maxCoeff() > budget.box_radius * (1.0 + 1e-9)) continue;
            Vec fv = f.eval(x);
            if (!all_finite(fv)) continue;
            Candidate c{x, fv, w, fv.dot(w)};
            found[wi].push_back(std::move(c));
        }
    });

    // pass 2: augmented achievement scalarization (smoothed weighted
    // Chebyshev distance to the reference point). Weighted sums only reach
    // supported points; this pass sweeps the whole front, including the
    // nonconvex parts.
    if (m >= 2) {
        const double u_scale = 1.0 + (tbar - ref).cwiseAbs().maxCoeff();
        const double rho = 30.0 / u_scale;
        const double aug = 1e-4;
        parallel_for(static_cast<int>(weights.size()), [&](int wi) {
            const Vec& w = weights[wi];
            ScalarFn obj = [&f, &w, &ref, rho, aug, m](const Vec& x, Vec* grad) {
                Vec fv = f.eval(x);
                Vec u(m);
                for (int i = 0; i < m; ++i) u[i] = w[i] * (fv[i] - ref[i]);
                double umax = u.maxCoeff();
                double sum = 0.0;
                Vec soft(m);
                for (int i = 0; i < m; ++i) {
                    soft[i] = std::exp(rho * (u[i] - umax));
                    sum += soft[i];
                }
                double val = umax + std::log(sum) / rho + aug * u.sum();
                if (grad) {
                    Mat J = f.jacobian(x);
                    Vec coeff(m);
                    for (int i = 0; i < m; ++i) coeff[i] = (soft[i] / sum + aug) * w[i];
                    *grad = J.transpose() * coeff;
                }
                return val;
            };
            for (int s = 0; s < budget.n_starts; ++s) {
                Vec x0 = halton_in_box(budget.seed * 68947ULL + wi * budget.n_starts + s, n,
                                       budget.box_radius);
                MinimizeResult r = bfgs_minimize(obj, x0, mopt);
                if (!r.converged) continue;
                if (r.x.cwiseAbs().maxCoeff() > budget.box_radius * (1.0 + 1e-9)) continue;
                Vec fv = f.eval(r.x);
                if (!all_finite(fv)) continue;
                Candidate c{r.x, fv, w, fv.dot(w)};
                found[weights.size() + wi].push_back(std::move(c));
            }
        });
    }

    for (double b : best_scalar)
        result.observed_infimum_scalarized = std::min(result.observed_infimum_scalarized, b);

    // dedupe: one candidate per value-space cluster, best scalarization wins
    std::vector<Candidate> candidates;
    for (auto& group : found)
        for (auto& c : group) {
            if (!leq_with_slack(c.value, tbar, slack)) continue;
            bool merged = false;
            for (auto& kept : candidates) {
                double tol = budget.cluster_tol_rel * (1.0 + kept.value.norm());
                if ((kept.value - c.value).norm() <= tol) {
                    if (c.scalarized < kept.scalarized) kept = c;
                    merged = true;
                    break;
                }
            }
            if (!merged) candidates.push_back(std::move(c));
        }

    // verification pool: random samples in the box and beyond, all candidate
    // values, and targeted continuation below each candidate
    VerifyContext ctx;
    Rng rng = Rng(budget.seed).fork(0x7e81f7ULL);
    for (int s = 0; s < budget.verify_samples; ++s) {
        double scale = (s % 2 == 0) ? budget.box_radius : 3.0 * budget.box_radius;
        Vec fv = f.eval(rng.in_box(n, scale));
        if (all_finite(fv)) {
            ctx.pool.push_back(fv);
            observe(fv);
        }
    }
    for (const auto& c : candidates) {
        ctx.pool.push_back(c.value);
        observe(c.value);
    }
    {
        std::vector<std::vector<Vec>> extra(candidates.size());
        parallel_for(static_cast<int>(candidates.size()), [&](int i) {
            probe_below(f, candidates[i].value, budget.box_radius,
                        budget.seed * 31337ULL + static_cast<std::uint64_t>(i), extra[i]);
        });
        for (auto& vs : extra)
            for (auto& v : vs) {
                ctx.pool.push_back(v);
                observe(v);
            }
    }

    for (const auto& c : candidates) {
        ParetoKind kind = classify(c.value, ctx);
        if (kind == ParetoKind::unverified) continue;  // strictly dominated
        ParetoPoint p;
        p.x = c.x;
        p.value = c.value;
        p.kind = kind;
        p.weight = c.weight;
        result.points.push_back(std::move(p));
    }
    std::sort(result.points.begin(), result.points.end(),
              [](const ParetoPoint& a, const ParetoPoint& b) {
                  for (Eigen::Index i = 0; i < a.value.size(); ++i)
                      if (a.value[i] != b.value[i]) return a.value[i] < b.value[i];
                  return false;
              });
    return result;
}

CandidateValueSet candidate_pareto_values(const PolyMap& f, const CandidateConfig& cfg) {
    CandidateValueSet set;
    CriticalValueResult crit = sample_critical_values(f, cfg.critical);
    set.degenerate_dimension = crit.degenerate_dimension;
    set.critical_values = std::move(crit.clusters);
    TangencyEstimate tang = estimate_tangency_values(f, cfg.tangency);
    set.tangency_values = std::move(tang.clusters);

    std::vector<Vec> all;
    for (const auto& c : set.critical_values) all.push_back(c.center);
    for (const auto& c : set.tangency_values) all.push_back(c.center);
    std::vector<int> keep = nondominated_indices(all);
    set.nondominated.assign(all.size(), 0);
    for (int i : keep) set.nondominated[i] = 1;
    return set;
}

ExistenceReport existence_verdict(const PolyMap& f, const ExistenceConfig& cfg) {
    ExistenceReport rep;
    rep.seed = cfg.seed;
    const int n = f.nvars();
    const int m = f.ncomponents();

    // (1) tbar in f(R^n): given, or the observed image point closest to the
    // componentwise median of a random image sample
    if (cfg.tbar) {
        rep.tbar = *cfg.tbar;
    } else {
        Rng rng = Rng(cfg.seed).fork(0x7ba2ULL);
        std::vector<Vec> obs;
        for (int s = 0; s < cfg.tbar_samples; ++s) {
            Vec fv = f.eval(rng.in_box(n, cfg.search.box_radius));
            if (all_finite(fv)) obs.push_back(fv);
        }
        if (obs.empty()) throw Error("existence_verdict: could not sample image points");
        Vec median(m);
        for (int j = 0; j < m; ++j) {
            std::vector<double> col;
            col.reserve(obs.size());
            for (const auto& v : obs) col.push_back(v[j]);
            std::sort(col.begin(), col.end());
            median[j] = col[col.size() / 2];
        }
        int best = 0;
        for (size_t i = 1; i < obs.size(); ++i)
            if ((obs[i] - median).norm() < (obs[best] - median).norm()) best = static_cast<int>(i);
        rep.tbar = obs[best];
    }

    // (2) bounded-section hypothesis
    SectionBudget sb = cfg.section;
    sb.seed = cfg.seed;
    rep.section = probe_bounded_section(f, rep.tbar, sb);

    // (3) equivalent-condition evidence
    TangencyConfig tc = cfg.tangency;
    tc.seed = cfg.seed;
    tc.sublevel = rep.tbar;
    rep.tangency_sublevel = estimate_tangency_values(f, tc);

    std::vector<Vec> hints;
    {
        TangencyConfig tfull = cfg.tangency;
        tfull.seed = cfg.seed;
        tfull.sublevel.reset();
        TangencyEstimate full = estimate_tangency_values(f, tfull);
        for (const auto& c : full.clusters) hints.push_back(c.center);
    }
    PropernessBudget pb = cfg.properness;
    pb.seed = cfg.seed;
    rep.properness = probe_properness(f, rep.tbar, pb, hints);

    PsBudget psb = cfg.ps;
    psb.seed = cfg.seed;
    rep.ps = probe_palais_smale(f, rep.tbar, psb);

    rep.convenience = is_convenient(f);
    if (rep.convenience->overall && n <= 4) {
        KhovanskiiBudget kb = cfg.khovanskii;
        kb.seed = cfg.seed;
        rep.khovanskii = check_khovanskii(f, kb);
    }

    // (4) direct witness attempt
    ParetoSearchBudget psearch = cfg.search;
    psearch.seed = cfg.seed;
    ParetoSearchResult search = find_pareto_points(f, rep.tbar, psearch);
    rep.pareto_points = search.points;

    for (const auto& p : rep.pareto_points) {
        if (p.kind != ParetoKind::pareto_verified_local) continue;
        // re-verification with a fresh stream before claiming existence
        ParetoSearchBudget re = psearch;
        re.seed = cfg.seed + 101;
        re.n_weights = 1;
        re.n_starts = 1;
        VerifyContext ctx;
        Rng rng = Rng(re.seed).fork(0xfe11ULL);
        for (int s = 0; s < psearch.verify_samples; ++s) {
            double scale = (s % 2 == 0) ? psearch.box_radius : 3.0 * psearch.box_radius;
            Vec fv = f.eval(rng.in_box(n, scale));
            if (all_finite(fv)) ctx.pool.push_back(fv);
        }
        std::vector<Vec> extra;
        probe_below(f, p.value, psearch.box_radius, re.seed * 31337ULL, extra);
        for (auto& v : extra) ctx.pool.push_back(v);
        if (classify(p.value, ctx) == ParetoKind::pareto_verified_local) {
            rep.witness = p;
            break;
        }
    }

    const bool bounded = rep.section.verdict == SectionVerdict::bounded_likely;
    const bool newton_clean =
        rep.convenience && rep.convenience->overall && rep.khovanskii &&
        rep.khovanskii->overall != KhovanskiiStatus::degenerate_witness;
    const bool sublevel_clean =
        rep.properness.verdict == PropernessVerdict::no_witness_found && !rep.ps.witness_found &&
        rep.tangency_sublevel.clusters.empty();

    if (rep.witness) {
        rep.verdict = ExistenceVerdict::exists_with_witness;
        rep.theorem_path = "direct-witness";
    } else if (bounded && newton_clean) {
        rep.verdict = ExistenceVerdict::certificate_plus_bounded_section;
        rep.theorem_path = "newton-certificate+bounded-section";
    } else if (bounded && sublevel_clean) {
        rep.verdict = ExistenceVerdict::certificate_plus_bounded_section;
        rep.theorem_path = "sublevel-probes+bounded-section";
    } else {
        rep.verdict = ExistenceVerdict::no_conclusion;
        rep.theorem_path = "none";
    }
    return rep;
}

} // namespace vopt
