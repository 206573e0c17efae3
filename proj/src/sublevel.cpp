#include "vopt/sublevel.hpp"

#include "vopt/minimize.hpp"
#include "vopt/parallel.hpp"
#include "vopt/rabier.hpp"
#include "vopt/rng.hpp"

#include <algorithm>

namespace vopt {

namespace {

double max_violation(const Vec& fv, const Vec& tbar) {
    double v = 0.0;
    for (Eigen::Index j = 0; j < fv.size(); ++j) v = std::max(v, fv[j] - tbar[j]);
    return v;
}

/// Quadratic sublevel penalty and its gradient contribution.
double penalty_value(const PolyMap& f, const Vec& x, const Vec& tbar, double coeff, Vec* grad) {
    Vec fv = f.eval(x);
    double p = 0.0;
    for (Eigen::Index j = 0; j < fv.size(); ++j) {
        double e = std::max(0.0, fv[j] - tbar[j]);
        p += e * e;
    }
    if (grad) {
        grad->setZero();
        if (p > 0.0) {
            Mat J = f.jacobian(x);
            for (Eigen::Index j = 0; j < fv.size(); ++j) {
                double e = std::max(0.0, fv[j] - tbar[j]);
                if (e > 0.0) *grad += 2.0 * coeff * e * J.row(j).transpose();
            }
        }
    }
    return coeff * p;
}

} // namespace

SectionProbeReport probe_bounded_section(const PolyMap& f, const Vec& tbar,
                                         const SectionBudget& budget) {
    if (budget.n_starts <= 0 || budget.iter_cap <= 0 || budget.r_max <= 0)
        throw Error("probe_bounded_section: budget must be positive");
    const int m = f.ncomponents();
    const int n = f.nvars();
    const double slack = budget.slack_tol_rel * (1.0 + tbar.norm());
    const double penalty = budget.penalty_base * (1.0 + tbar.norm());

    struct RunOutcome {
        bool has_witness = false;
        EscapeWitness witness;
        std::vector<Vec> feasible_points;
        bool ambiguous = false;
    };
    const int runs = m * budget.n_starts;
    std::vector<RunOutcome> outcomes(runs);

    parallel_for(runs, [&](int run) {
        const int comp = run / budget.n_starts;
        const int s = run % budget.n_starts;
        RunOutcome& out = outcomes[run];
        Rng rng = Rng(budget.seed).fork(0x5ec70000ULL + static_cast<std::uint64_t>(run));
        double ball = budget.n_starts > 1
                          ? std::pow(budget.r_max, static_cast<double>(s) / (budget.n_starts - 1))
                          : 1.0;
        Vec x0 = rng.in_box(n, ball);

        ScalarFn obj = [&](const Vec& x, Vec* grad) {
            double val = f.component(comp).eval(x);
            if (grad) {
                *grad = f.gradient(comp, x);
                Vec pg(n);
                double p = penalty_value(f, x, tbar, penalty, &pg);
                *grad += pg;
                return val + p;
            }
            return val + penalty_value(f, x, tbar, penalty, nullptr);
        };
        MinimizeOptions mopt;
        mopt.max_iter = budget.iter_cap;
        mopt.divergence_floor = budget.divergence_floor;
        mopt.record_trail = true;
        MinimizeResult res = bfgs_minimize(obj, x0, mopt);

        // harvest feasible points from the trajectory
        double lowest_feasible = std::numeric_limits<double>::infinity();
        for (const auto& xt : res.trail) {
            Vec fv = f.eval(xt);
            if (!all_finite(fv)) continue;
            if (max_violation(fv, tbar) <= slack) {
                out.feasible_points.push_back(xt);
                double ci = fv[comp];
                if (ci < lowest_feasible) lowest_feasible = ci;
                if (ci <= budget.divergence_floor) out.has_witness = true;
            }
        }
        if (out.has_witness) {
            for (const auto& xt : res.trail) {
                Vec fv = f.eval(xt);
                if (all_finite(fv) && max_violation(fv, tbar) <= slack) {
                    out.witness.xs.push_back(xt);
                    out.witness.fvalues.push_back(fv);
                }
            }
            // keep the record small
            while (out.witness.xs.size() > 50) {
                std::vector<Vec> xs, fv;
                for (size_t i = 0; i < out.witness.xs.size(); i += 2) {
                    xs.push_back(out.witness.xs[i]);
                    fv.push_back(out.witness.fvalues[i]);
                }
                xs.push_back(out.witness.xs.back());
                fv.push_back(out.witness.fvalues.back());
                out.witness.xs = std::move(xs);
                out.witness.fvalues = std::move(fv);
            }
        }

        // feasibility polish: pull the endpoint onto the sublevel set so that
        // near-feasible minima still contribute to the envelope
        ScalarFn viol = [&](const Vec& x, Vec* grad) {
            if (grad) {
                Vec pg(n);
                double p = penalty_value(f, x, tbar, 1.0, &pg);
                *grad = pg;
                return p;
            }
            return penalty_value(f, x, tbar, 1.0, nullptr);
        };
        MinimizeOptions popt;
        popt.max_iter = 120;
        popt.g_tol_rel = 1e-12;
        MinimizeResult pol = bfgs_minimize(viol, res.x, popt);
        Vec fv = f.eval(pol.x);
        if (all_finite(fv) && max_violation(fv, tbar) <= slack)
            out.feasible_points.push_back(pol.x);

        if (!res.converged && !res.diverged && res.iterations >= budget.iter_cap &&
            res.value <= 0.01 * budget.divergence_floor && !out.has_witness) {
            Vec fend = f.eval(res.x);
            if (all_finite(fend) && max_violation(fend, tbar) <= slack) out.ambiguous = true;
        }
    });

    SectionProbeReport rep;
    rep.tbar = tbar;
    rep.seed = budget.seed;
    rep.lower_envelope = Vec::Constant(m, std::numeric_limits<double>::infinity());
    bool ambiguous = false;
    for (const auto& out : outcomes) {
        for (const auto& x : out.feasible_points) {
            Vec fv = f.eval(x);
            rep.feasible_points += 1;
            for (int j = 0; j < m; ++j) rep.lower_envelope[j] = std::min(rep.lower_envelope[j], fv[j]);
        }
        ambiguous = ambiguous || out.ambiguous;
    }
    for (const auto& out : outcomes) {
        if (out.has_witness) {
            rep.verdict = SectionVerdict::unbounded_witness;
            rep.witness = out.witness;
            return rep;
        }
    }
    if (rep.feasible_points == 0) {
        rep.verdict = SectionVerdict::empty_section;
        rep.lower_envelope = Vec();
    } else if (ambiguous) {
        rep.verdict = SectionVerdict::inconclusive;
    } else {
        rep.verdict = SectionVerdict::bounded_likely;
    }
    return rep;
}

PropernessProbeReport probe_properness(const PolyMap& f, const Vec& tbar,
                                       const PropernessBudget& budget,
                                       const std::vector<Vec>& target_hints) {
    if (budget.n_targets <= 0 || budget.n_starts <= 0)
        throw Error("probe_properness: budget must be positive");
    std::vector<double> radii = budget.radii.empty() ? geometric_radii(10, 2, 14) : budget.radii;
    for (size_t k = 1; k < radii.size(); ++k)
        if (radii[k] <= radii[k - 1]) throw Error("probe_properness: radii must increase");
    const int n = f.nvars();
    const double slack = budget.slack_tol_rel * (1.0 + tbar.norm());

    PropernessProbeReport rep;
    rep.tbar = tbar;
    rep.seed = budget.seed;

    // image observations in moderate boxes propose the limit targets
    Rng rng = Rng(budget.seed).fork(0x9120be5ULL);
    std::vector<Vec> feasible_obs;
    for (double box : {1.0, 3.0}) {
        for (int s = 0; s < budget.sample_count / 2; ++s) {
            Vec x = rng.in_box(n, box);
            Vec fv = f.eval(x);
            if (all_finite(fv) && leq_with_slack(fv, tbar, slack)) feasible_obs.push_back(fv);
        }
    }

    std::vector<Vec> targets;
    auto push_target = [&](Vec c) {
        for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = std::min(c[j], tbar[j]);
        for (const auto& t : targets)
            if ((t - c).norm() <= 1e-9 * (1.0 + c.norm())) return;
        targets.push_back(std::move(c));
    };
    for (const auto& h : target_hints)
        if (leq_with_slack(h, tbar, slack)) push_target(h);
    std::sort(feasible_obs.begin(), feasible_obs.end(), [](const Vec& a, const Vec& b) {
        double sa = a.sum(), sb = b.sum();
        if (sa != sb) return sa < sb;
        for (Eigen::Index i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    for (size_t i = 0; i < feasible_obs.size() && i < 10; ++i) push_target(feasible_obs[i]);
    if (!feasible_obs.empty()) {
        Vec floor = feasible_obs.front();
        for (const auto& v : feasible_obs) floor = floor.cwiseMin(v);
        push_target(floor);
    }
    if (targets.size() > static_cast<size_t>(budget.n_targets))
        targets.resize(budget.n_targets);
    rep.targets_tried = targets;

    if (targets.empty()) {
        rep.verdict = feasible_obs.empty() ? PropernessVerdict::empty_section
                                           : PropernessVerdict::no_witness_found;
        return rep;
    }

    for (const auto& c : targets) {
        const double wtol = budget.witness_tol_rel * (1.0 + c.norm());
        ScalarFn obj = [&f, &c](const Vec& x, Vec* grad) {
            Vec r = f.eval(x) - c;
            if (grad) *grad = 2.0 * (f.jacobian(x).transpose() * r);
            return r.squaredNorm();
        };
        TangencyTrace trace;
        bool ok = true;
        Vec warm;
        double prev_residual = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < radii.size() && ok; ++k) {
            double R = radii[k];
            std::vector<Vec> starts;
            if (warm.size() > 0) starts.push_back(warm * (R / warm.norm()));
            int fresh = (k == 0) ? budget.n_starts : 1;
            for (int s = 0; s < fresh; ++s)
                starts.push_back(sphere_point(budget.seed * 7919ULL + k * 131ULL + s, n));
            std::vector<SphereResult> results(starts.size());
            parallel_for(static_cast<int>(starts.size()), [&](int i) {
                Vec x0 = starts[i] * (R / starts[i].norm());
                results[i] = sphere_minimize(obj, R, x0);
            });
            int best = -1;
            for (int i = 0; i < static_cast<int>(results.size()); ++i) {
                if (!results[i].converged) continue;
                if (best < 0 || results[i].value < results[best].value) best = i;
            }
            if (best < 0) {
                ok = false;
                break;
            }
            const Vec& x = results[best].x;
            Vec fv = f.eval(x);
            double residual = (fv - c).norm();
            // the tail decides the witness; allow a decaying approach but not growth
            if (residual > std::max(wtol, 1.5 * prev_residual)) ok = false;
            prev_residual = std::min(prev_residual, residual);
            if (!leq_with_slack(fv, tbar, slack)) ok = false;
            if (!ok) break;
            TangencySample smp;
            smp.x = x;
            smp.radius = x.norm();
            smp.fvalue = fv;
            smp.dependency = dependency_measure(f, x);
            smp.nu = rabier_nu(f, x).value;
            smp.nu_scaled = smp.radius * smp.nu;
            smp.weight = c;
            trace.samples.push_back(std::move(smp));
            warm = x;
        }
        if (!ok || trace.samples.size() < 3) continue;
        bool tail_ok = true;
        for (size_t k = trace.samples.size() - 3; k < trace.samples.size(); ++k)
            tail_ok = tail_ok && (trace.samples[k].fvalue - c).norm() <= wtol;
        if (!tail_ok) continue;
        const auto& ss = trace.samples;
        trace.limit_estimate =
            (ss[ss.size() - 1].fvalue + ss[ss.size() - 2].fvalue + ss[ss.size() - 3].fvalue) / 3.0;
        rep.verdict = PropernessVerdict::not_proper_witness;
        rep.witness = std::move(trace);
        rep.witness_limit = *rep.witness->limit_estimate;
        return rep;
    }
    rep.verdict = PropernessVerdict::no_witness_found;
    return rep;
}

PsProbeReport probe_palais_smale(const PolyMap& f, const Vec& tbar, const PsBudget& budget) {
    std::vector<double> radii = budget.radii.empty() ? geometric_radii(10, 2, 14) : budget.radii;
    const int n = f.nvars();
    const int m = f.ncomponents();
    const double slack = budget.slack_tol_rel * (1.0 + tbar.norm());
    const double penalty = 1e4 * (1.0 + tbar.norm());

    PsProbeReport rep;
    rep.tbar = tbar;
    rep.seed = budget.seed;

    // nu^2 with the envelope gradient (the attaining weights held fixed),
    // plus the sublevel penalty
    ScalarFn obj = [&](const Vec& x, Vec* grad) {
        RabierResult rr = rabier_nu(f, x);
        double v2 = rr.value * rr.value;
        if (grad) {
            Vec v = f.jacobian(x).transpose() * rr.weights;
            Mat H = Mat::Zero(n, n);
            for (int i = 0; i < m; ++i) H += rr.weights[i] * f.hessian(i, x);
            *grad = 2.0 * (H * v);
            Vec pg(n);
            double p = penalty_value(f, x, tbar, penalty, &pg);
            *grad += pg;
            return v2 + p;
        }
        return v2 + penalty_value(f, x, tbar, penalty, nullptr);
    };

    Vec warm;
    for (size_t k = 0; k < radii.size(); ++k) {
        double R = radii[k];
        std::vector<Vec> starts;
        if (warm.size() > 0) starts.push_back(warm);
        for (int s = 0; s < budget.n_starts; ++s)
            starts.push_back(sphere_point(budget.seed * 50021ULL + k * 173ULL + s, n));
        std::vector<SphereResult> results(starts.size());
        parallel_for(static_cast<int>(starts.size()), [&](int i) {
            SphereOptions sopt;
            sopt.g_tol_rel = 1e-7;  // nu^2 landscapes are rough; modest tolerance
            results[i] = sphere_minimize(obj, R, starts[i] * (R / starts[i].norm()), sopt);
        });
        int best = -1;
        double best_key = std::numeric_limits<double>::infinity();
        for (int i = 0; i < static_cast<int>(results.size()); ++i) {
            Vec fv = f.eval(results[i].x);
            if (!all_finite(fv)) continue;
            double viol = max_violation(fv, tbar);
            double nu = rabier_nu(f, results[i].x).value;
            // prefer feasible, then small nu
            double key = (viol <= slack ? 0.0 : 1e30) + nu;
            if (key < best_key) {
                best_key = key;
                best = i;
            }
        }
        if (best < 0) continue;
        PsProbeRadiusRecord rec;
        rec.radius = R;
        rec.fvalue = f.eval(results[best].x);
        rec.violation = max_violation(rec.fvalue, tbar);
        rec.nu = rabier_nu(f, results[best].x).value;
        if (rec.violation <= slack) {
            rep.min_feasible_nu = std::min(rep.min_feasible_nu, rec.nu);
            warm = results[best].x;
        }
        rep.records.push_back(std::move(rec));
    }

    // witness: feasible tail with nu below resolution and convergent f-values
    std::vector<const PsProbeRadiusRecord*> feas;
    for (const auto& r : rep.records)
        if (r.violation <= slack) feas.push_back(&r);
    if (feas.size() >= 3) {
        const auto* a = feas[feas.size() - 1];
        const auto* b = feas[feas.size() - 2];
        const auto* c = feas[feas.size() - 3];
        double ctol = budget.cluster_tol_rel * (1.0 + a->fvalue.norm());
        bool f_conv = (a->fvalue - b->fvalue).norm() <= ctol && (a->fvalue - c->fvalue).norm() <= ctol;
        double nu_floor = 1e-5 * (1.0 + a->fvalue.norm());
        bool nu_zero = a->nu <= std::max(0.01 * feas.front()->nu, nu_floor);
        // the escape must actually reach the outer radii
        bool reached = a->radius >= radii.back() * 0.49;
        rep.witness_found = f_conv && nu_zero && reached;
    }
    return rep;
}

} // namespace vopt
