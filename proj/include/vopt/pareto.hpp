#pragma once

#include "vopt/core.hpp"
#include "vopt/newton.hpp"
#include "vopt/polynomial.hpp"
#include "vopt/sublevel.hpp"
#include "vopt/tangency.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vopt {

struct CriticalBudget {
    int n_starts = 2000;
    double box_radius = 3.0;
    int iter_cap = 120;
    int refine_rounds = 2;       // adaptive midpoint starts between value-adjacent clusters
    double rank_tol_rel = 1e-6;  // sigma_min acceptance, scaled by 1 + ||J||_F
    double cluster_tol_rel = 1e-3;
    std::uint64_t seed = 0;
};

struct CriticalValueResult {
    std::vector<ValueCluster> clusters;
    bool degenerate_dimension = false;  // n <= m: K_0(f) not sampled, flagged instead
};

/// Samples the critical value set K_0(f) by driving sigma_min(Df)^2 to zero
/// with multistart quasi-Newton runs; accepted points are clustered in value
/// space. For m = 1 this solves grad f = 0.
CriticalValueResult sample_critical_values(const PolyMap& f, const CriticalBudget& budget);

/// Indices of the points not dominated by any other point in the list
/// (p dominates q iff p <= q componentwise and p != q); stable order.
std::vector<int> nondominated_indices(const std::vector<Vec>& points);

/// The nondominated subset itself, input order preserved.
std::vector<Vec> nondominated_filter(const std::vector<Vec>& points);

enum class ParetoKind { pareto_verified_local, weak_only, unverified };

struct ParetoPoint {
    Vec x;
    Vec value;
    ParetoKind kind = ParetoKind::unverified;
    Vec weight;  // scalarization weight that produced the point
};

struct ParetoSearchBudget {
    int n_weights = 12;
    int n_starts = 48;
    int verify_samples = 2000;
    double box_radius = 3.0;
    int iter_cap = 300;
    double slack_tol_rel = 1e-6;
    double cluster_tol_rel = 1e-3;
    std::uint64_t seed = 0;
};

struct ParetoSearchResult {
    std::vector<ParetoPoint> points;
    double observed_infimum_scalarized = std::numeric_limits<double>::infinity();
    /// componentwise minimum of f over everything the search evaluated
    Vec observed_floor;
};

/// Weighted-sum scalarization over a box with strictly positive weights;
/// candidates are kept when f(x) <= tbar + slack and then verified by a
/// dominance scan against random samples, the other candidates, and image
/// points found by targeted continuation below each candidate value.
ParetoSearchResult find_pareto_points(const PolyMap& f, const Vec& tbar,
                                      const ParetoSearchBudget& budget);

struct CandidateConfig {
    CriticalBudget critical;
    TangencyConfig tangency;
};

/// Theorem-style candidate set: sampled critical values united with estimated
/// tangency values at infinity, with nondominated flags over the union.
struct CandidateValueSet {
    std::vector<ValueCluster> critical_values;
    std::vector<ValueCluster> tangency_values;
    std::vector<char> nondominated;  // flags over critical ++ tangency
    bool degenerate_dimension = false;
};

CandidateValueSet candidate_pareto_values(const PolyMap& f, const CandidateConfig& cfg);

enum class ExistenceVerdict { exists_with_witness, certificate_plus_bounded_section, no_conclusion };

struct ExistenceConfig {
    std::optional<Vec> tbar;  // auto-selected from observed image points when absent
    int tbar_samples = 100;
    SectionBudget section;
    PropernessBudget properness;
    PsBudget ps;
    TangencyConfig tangency;
    ParetoSearchBudget search;
    KhovanskiiBudget khovanskii;
    std::uint64_t seed = 0;
};

struct ExistenceReport {
    Vec tbar;
    ExistenceVerdict verdict = ExistenceVerdict::no_conclusion;
    std::string theorem_path;  // which sufficient condition justified the verdict
    SectionProbeReport section;
    PropernessProbeReport properness;
    PsProbeReport ps;
    TangencyEstimate tangency_sublevel;
    std::optional<ConvenienceReport> convenience;
    std::optional<KhovanskiiResult> khovanskii;
    std::vector<ParetoPoint> pareto_points;
    std::optional<ParetoPoint> witness;  // re-verified with a fresh seed
    std::uint64_t seed = 0;
};

/// Full pipeline: choose/accept tbar in f(R^n), probe the bounded-section
/// hypothesis, gather the equivalent-condition evidence (properness,
/// Palais-Smale, tangency at the sublevel, Newton certificate), and attempt a
/// direct Pareto witness. Never claims nonexistence.
ExistenceReport existence_verdict(const PolyMap& f, const ExistenceConfig& cfg);

} // namespace vopt
