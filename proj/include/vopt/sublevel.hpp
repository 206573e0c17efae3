#pragma once

#include "vopt/core.hpp"
#include "vopt/polynomial.hpp"
#include "vopt/tangency.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace vopt {

/// Escape record: iterates with f(x) <= tbar whose objective diverges.
struct EscapeWitness {
    std::vector<Vec> xs;
    std::vector<Vec> fvalues;
};

enum class SectionVerdict { bounded_likely, unbounded_witness, empty_section, inconclusive };

/// Probe of "the section [f(R^n)]_tbar is bounded". All verdicts are
/// budget-relative: bounded_likely is evidence, never a certificate, and the
/// lower envelope is only an empirical candidate for the bounding vector.
struct SectionProbeReport {
    Vec tbar;
    SectionVerdict verdict = SectionVerdict::inconclusive;
    std::optional<EscapeWitness> witness;
    Vec lower_envelope;  // per-component best feasible value observed
    bool envelope_is_global_bound = false;  // always false: empirical only
    int feasible_points = 0;
    std::uint64_t seed = 0;
};

struct SectionBudget {
    int n_starts = 48;
    double r_max = 1e5;          // largest start-ball radius
    int iter_cap = 300;
    double penalty_base = 1e4;   // scaled by 1 + ||tbar||
    double divergence_floor = -1e6;
    double slack_tol_rel = 1e-6;
    std::uint64_t seed = 0;
};

/// Minimizes each component under a quadratic sublevel penalty from starts in
/// balls of growing radius; a feasible run diving below the divergence floor
/// is an unboundedness witness.
SectionProbeReport probe_bounded_section(const PolyMap& f, const Vec& tbar,
                                         const SectionBudget& budget);

enum class PropernessVerdict { not_proper_witness, no_witness_found, empty_section };

struct PropernessProbeReport {
    Vec tbar;
    PropernessVerdict verdict = PropernessVerdict::no_witness_found;
    std::optional<TangencyTrace> witness;  // escape with f convergent and <= tbar
    Vec witness_limit;
    std::vector<Vec> targets_tried;
    std::uint64_t seed = 0;
};

struct PropernessBudget {
    int n_targets = 10;
    int n_starts = 6;            // sphere seeds per radius at the first radius
    std::vector<double> radii;   // default geometric_radii(10, 2, 14)
    double witness_tol_rel = 1e-4;  // residual tolerance, scaled by 1 + ||c||
    double slack_tol_rel = 1e-6;
    int sample_count = 400;      // image observations used to propose targets
    std::uint64_t seed = 0;
};

/// Properness at the sublevel tbar: proposes candidate limit targets c <= tbar
/// from observed image points (plus caller-provided hints, e.g. tangency
/// limits), then runs a sphere continuation minimizing ||f - c||^2; a run
/// whose residual stays below tolerance out to the last radius while f stays
/// under tbar is a non-properness witness.
PropernessProbeReport probe_properness(const PolyMap& f, const Vec& tbar,
                                       const PropernessBudget& budget,
                                       const std::vector<Vec>& target_hints = {});

/// Palais-Smale escape probe: per-radius constrained minimization of nu_f^2
/// under the sublevel penalty. Evidence for condition (ii) of the existence
/// theorem; min_feasible_nu bounded away from zero is the clean outcome.
struct PsProbeRadiusRecord {
    double radius = 0.0;
    double nu = 0.0;
    double violation = 0.0;  // max componentwise excess over tbar
    Vec fvalue;
};

struct PsProbeReport {
    Vec tbar;
    bool witness_found = false;  // feasible escape with nu -> 0 and f convergent
    double min_feasible_nu = std::numeric_limits<double>::infinity();
    std::vector<PsProbeRadiusRecord> records;
    std::uint64_t seed = 0;
};

struct PsBudget {
    std::vector<double> radii;  // default geometric_radii(10, 2, 14)
    int n_starts = 6;
    double slack_tol_rel = 1e-6;
    double cluster_tol_rel = 1e-3;
    std::uint64_t seed = 0;
};

PsProbeReport probe_palais_smale(const PolyMap& f, const Vec& tbar, const PsBudget& budget);

} // namespace vopt
