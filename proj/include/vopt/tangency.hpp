#pragma once

#include "vopt/core.hpp"
#include "vopt/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace vopt {

class ZeroPointError : public Error {
public:
    ZeroPointError() : Error("dependency_measure: x = 0 (always in the tangency variety)") {}
};

/// Scale-free certificate of membership in the tangency variety: smallest
/// singular value of the n x (m+1) matrix whose columns are the gradients
/// grad f_i(x) / max(1, ||grad f_i(x)||) and x / ||x||. Zero (up to floating
/// point) iff the gradients and the position vector are linearly dependent.
/// Returns 0 immediately when n <= m (more columns than rows).
double dependency_measure(const PolyMap& f, const Vec& x);

/// One near-tangency point found on a sphere, with its diagnostics.
struct TangencySample {
    Vec x;
    double radius = 0.0;
    Vec fvalue;
    double dependency = 0.0;
    double nu = 0.0;         // Rabier function at x
    double nu_scaled = 0.0;  // ||x|| * nu
    Vec weight;              // scalarization weight that produced the point
    int seed_index = -1;
    int weight_index = -1;
};

enum class TraceStatus { converged, lost_track };

/// A sequence of tangency samples with strictly increasing radii, traced
/// toward infinity, plus the estimated limit of f along it and witness tags
/// relative to an optional sublevel.
struct TangencyTrace {
    std::vector<TangencySample> samples;
    std::optional<Vec> limit_estimate;
    TraceStatus status = TraceStatus::converged;
    bool tangency_witness = false;
    bool ps_witness = false;       // nu  -> 0 within resolution
    bool weak_ps_witness = false;  // ||x|| nu -> 0 within resolution
    bool sublevel_ok = true;       // all fvalues <= tbar + slack (when tbar given)
};

struct SphereStationaryOptions {
    double dependency_tol = 1e-6;
    int max_iter = 600;
    double g_tol_rel = 1e-9;
};

/// Stationary points of x -> <w, f(x)> on the sphere of the given radius,
/// one projected-gradient run per (seed, weight) pair. Non-converged runs
/// and points failing the dependency threshold are dropped.
std::vector<TangencySample> sphere_stationary_points(
    const PolyMap& f, double radius, const std::vector<Vec>& seeds,
    const std::vector<Vec>& weights, const SphereStationaryOptions& opt = {});

struct TraceOptions {
    double cluster_tol_rel = 1e-3;
    double dependency_tol = 1e-6;
    double slack_tol_rel = 1e-6;
    std::optional<Vec> sublevel;
    int max_iter = 600;
    double g_tol_rel = 1e-9;
};

/// Warm-started continuation of a stationary point over an increasing radius
/// schedule (same scalarization weight throughout). Sets limit_estimate when
/// the last three f-values agree within the cluster tolerance.
TangencyTrace trace_to_infinity(const PolyMap& f, const TangencySample& seed_sample,
                                const std::vector<double>& radii,
                                const TraceOptions& opt = {});

/// A cluster of nearby limit values.
struct ValueCluster {
    Vec center;
    int count = 0;
    Vec representative_x;  // a point whose image is near the center (when known)
};

/// Greedy clustering after a deterministic sort; the output does not depend
/// on the input order. Tolerance is scale-relative: tol * (1 + ||center||).
std::vector<ValueCluster> cluster_values(const std::vector<Vec>& points,
                                         const std::vector<Vec>& reps, double tol_rel);

struct TangencyConfig {
    int n_seeds = 16;
    int n_weights = 8;
    std::vector<double> radii;  // default: geometric_radii(10, 2, 14)
    double cluster_tol_rel = 1e-3;
    double dependency_tol = 1e-6;
    double slack_tol_rel = 1e-6;
    std::optional<Vec> sublevel;
    /// Explicit scalarization weights; when empty, a low-discrepancy simplex
    /// sequence plus the coordinate vectors is used.
    std::vector<Vec> weight_override;
    std::uint64_t seed = 0;
    int max_iter = 600;
    double g_tol_rel = 1e-9;
};

struct TangencyEstimate {
    std::vector<ValueCluster> clusters;
    std::vector<TangencyTrace> traces;  // traces with limits (post sublevel filter)
    int traces_total = 0;
    int traces_with_limit = 0;
    TangencyConfig config;
};

/// Full pipeline: stationary points on the first sphere over a seed/weight
/// grid, continuation to infinity, sublevel filtering, clustering of limits.
/// An empty cluster list means no tangency value was detected at this budget.
TangencyEstimate estimate_tangency_values(const PolyMap& f, const TangencyConfig& cfg);

std::vector<double> geometric_radii(double r0, double factor, int steps);

std::vector<Vec> default_weight_grid(int m, int n_weights);

/// CSV dump: radius, x_1..x_n, f_1..f_m, dependency, nu, nu_scaled.
void write_trace_csv(std::ostream& os, const TangencyTrace& trace, int nvars, int ncomps);

} // namespace vopt
