#include "vopt/pareto.hpp"
#include "vopt/polynomial.hpp"
#include "vopt/rng.hpp"

#include <doctest.h>

#include <algorithm>

using namespace vopt;

namespace {

PolyMap motzkin() { return parse_poly_map("x1^2*x2^4 + x1^4*x2^2 - 3*x1^2*x2^2 + 1", 2); }

double curve_dist(const Vec& v, double lo, double hi, const std::function<Vec(double)>& curve) {
    double best = 1e300;
    for (int i = 0; i <= 4000; ++i) {
        double s = lo + (hi - lo) * i / 4000.0;
        best = std::min(best, (curve(s) - v).norm());
    }
    return best;
}

} // namespace

TEST_CASE("critical values: Motzkin finds both levels") {
    CriticalBudget b;
    b.seed = 8;
    b.n_starts = 400;
    CriticalValueResult res = sample_critical_values(motzkin(), b);
    CHECK(!res.degenerate_dimension);
    bool has0 = false, has1 = false;
    for (const auto& c : res.clusters) {
        if (std::abs(c.center[0]) <= 1e-6) has0 = true;
        if (std::abs(c.center[0] - 1.0) <= 1e-6) has1 = true;
    }
    CHECK(has0);
    CHECK(has1);
}

TEST_CASE("critical values: a submersion has none") {
    PolyMap f = parse_poly_map("x1", 2);
    CriticalBudget b;
    b.seed = 8;
    b.n_starts = 50;
    CriticalValueResult res = sample_critical_values(f, b);
    CHECK(!res.degenerate_dimension);
    CHECK(res.clusters.empty());
}

TEST_CASE("critical values: n <= m is flagged, not sampled") {
    PolyMap f = parse_poly_map("x1 + x2\nx1*x2", 2);
    CriticalValueResult res = sample_critical_values(f, CriticalBudget{});
    CHECK(res.degenerate_dimension);
    CHECK(res.clusters.empty());
}

TEST_CASE("nondominated filter: worked examples") {
    std::vector<Vec> pts(3, Vec(2));
    pts[0] << 0, 0;
    pts[1] << 1, -1;
    pts[2] << 2, 2;
    auto kept = nondominated_filter(pts);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0] == pts[0]);
    CHECK(kept[1] == pts[1]);

    std::vector<Vec> single{pts[2]};
    CHECK(nondominated_filter(single).size() == 1);
}

TEST_CASE("nondominated filter: equal points survive together") {
    std::vector<Vec> pts(2, Vec(2));
    pts[0] << 1, 1;
    pts[1] << 1, 1;
    CHECK(nondominated_filter(pts).size() == 2);
}

TEST_CASE("property: filter equals the brute-force oracle and is idempotent") {
    Rng rng(73);
    for (int inst = 0; inst < 100; ++inst) {
        int dim = (inst % 2) ? 3 : 2;
        std::vector<Vec> pts;
        for (int i = 0; i < 200; ++i) {
            if (i > 0 && rng.uniform() < 0.08) {
                pts.push_back(pts[static_cast<size_t>(rng.uniform() * i)]);
            } else {
                pts.push_back(rng.in_box(dim, 5.0));
            }
        }
        std::vector<int> oracle;
        for (int i = 0; i < 200; ++i) {
            bool dominated = false;
            for (int j = 0; j < 200 && !dominated; ++j) {
                if (i == j) continue;
                bool leq = true, strict = false;
                for (int d = 0; d < dim; ++d) {
                    if (pts[j][d] > pts[i][d]) leq = false;
                    if (pts[j][d] < pts[i][d]) strict = true;
                }
                dominated = leq && strict;
            }
            if (!dominated) oracle.push_back(i);
        }
        std::vector<int> got = nondominated_indices(pts);
        CHECK(got == oracle);

        auto once = nondominated_filter(pts);
        auto twice = nondominated_filter(once);
        CHECK(once.size() == twice.size());
        // no survivor dominates another survivor
        for (size_t a = 0; a < once.size(); ++a)
            for (size_t b = 0; b < once.size(); ++b) {
                if (a == b) continue;
                bool leq = true, strict = false;
                for (int d = 0; d < dim; ++d) {
                    if (once[a][d] > once[b][d]) leq = false;
                    if (once[a][d] < once[b][d]) strict = true;
                }
                CHECK(!(leq && strict));
            }
    }
}

TEST_CASE("find_pareto_points: Motzkin minima are verified Pareto points") {
    ParetoSearchBudget b;
    b.seed = 21;
    b.n_starts = 64;
    ParetoSearchResult res = find_pareto_points(motzkin(), Vec::Constant(1, 0.5), b);
    REQUIRE(!res.points.empty());
    int verified = 0;
    for (const auto& p : res.points) {
        if (p.kind != ParetoKind::pareto_verified_local) continue;
        ++verified;
        CHECK(std::abs(p.value[0]) <= 1e-6);
        CHECK(std::abs(std::abs(p.x[0]) - 1.0) <= 1e-4);
        CHECK(std::abs(std::abs(p.x[1]) - 1.0) <= 1e-4);
    }
    CHECK(verified >= 1);
}

TEST_CASE("find_pareto_points: attained front with at least five verified points") {
    PolyMap f = parse_poly_map("x1^2 + x2^2 + x3^2\nx3^3", 3);
    ParetoSearchBudget b;
    b.seed = 21;
    b.n_weights = 12;
    b.n_starts = 24;
    Vec tbar(2);
    tbar << 4, 8;
    ParetoSearchResult res = find_pareto_points(f, tbar, b);
    auto curve = [](double r) {
        Vec v(2);
        v << r * r, -r * r * r;
        return v;
    };
    int good = 0;
    for (const auto& p : res.points) {
        if (p.kind != ParetoKind::pareto_verified_local) continue;
        CHECK(leq_with_slack(p.value, tbar, 1e-6 * (1.0 + tbar.norm())));
        if (curve_dist(p.value, 0.0, 2.0, curve) <= 1e-3) ++good;
    }
    CHECK(good >= 5);
}

TEST_CASE("find_pareto_points: unattained infimum yields an empty list") {
    PolyMap f = parse_poly_map("x1^2*x2^2 + x1^2 - 2*x1*x2 + 1", 2);
    ParetoSearchBudget b;
    b.seed = 21;
    b.n_starts = 48;
    ParetoSearchResult res = find_pareto_points(f, Vec::Constant(1, 0.5), b);
    CHECK(res.points.empty());
    double observed = std::min(res.observed_infimum_scalarized, res.observed_floor[0]);
    CHECK(observed <= 1e-3);
}

TEST_CASE("candidate values: Motzkin union with dominance flags") {
    CandidateConfig cc;
    cc.critical.seed = 14;
    cc.critical.n_starts = 400;
    cc.tangency.seed = 14;
    CandidateValueSet cs = candidate_pareto_values(motzkin(), cc);
    REQUIRE(!cs.critical_values.empty());
    REQUIRE(!cs.tangency_values.empty());
    std::vector<Vec> all;
    for (const auto& c : cs.critical_values) all.push_back(c.center);
    for (const auto& c : cs.tangency_values) all.push_back(c.center);
    REQUIRE(cs.nondominated.size() == all.size());
    // flags agree with a direct dominance scan
    std::vector<int> keep = nondominated_indices(all);
    std::vector<char> expect(all.size(), 0);
    for (int i : keep) expect[i] = 1;
    CHECK(cs.nondominated == expect);
    // minimum value 0 is flagged, level 1 is dominated
    for (size_t i = 0; i < all.size(); ++i) {
        if (std::abs(all[i][0]) <= 1e-6) CHECK(cs.nondominated[i]);
        if (std::abs(all[i][0] - 1.0) <= 1e-6) CHECK(!cs.nondominated[i]);
    }
}

TEST_CASE("candidate values: hyperbola carries its tangency value 0") {
    PolyMap f = parse_poly_map("x1^2*x2^2 + x1^2 - 2*x1*x2 + 1", 2);
    CandidateConfig cc;
    cc.critical.seed = 14;
    cc.critical.n_starts = 300;
    cc.tangency.seed = 14;
    CandidateValueSet cs = candidate_pareto_values(f, cc);
    bool zero_from_tangency = false;
    for (const auto& c : cs.tangency_values)
        zero_from_tangency = zero_from_tangency || std::abs(c.center[0]) <= 1e-3;
    CHECK(zero_from_tangency);
}

TEST_CASE("existence: open quadrant map ends with no conclusion") {
    ProblemFile pf = load_problem_file("data/open_quadrant.vp");
    ExistenceConfig ec;
    ec.seed = 33;
    ec.tangency.n_seeds = 8;
    ec.tangency.n_weights = 6;
    ec.search.n_starts = 24;
    ec.search.n_weights = 8;
    ExistenceReport rep = existence_verdict(pf.map, ec);
    CHECK(rep.verdict == ExistenceVerdict::no_conclusion);
    CHECK(!rep.witness.has_value());
}

TEST_CASE("existence: proper pair admits a witness") {
    PolyMap f = parse_poly_map("x1^2 + x2^2 + x3^2\nx3^3", 3);
    ExistenceConfig ec;
    ec.seed = 33;
    Vec tbar(2);
    tbar << 4, 8;
    ec.tbar = tbar;
    ec.search.n_starts = 24;
    ExistenceReport rep = existence_verdict(f, ec);
    CHECK(rep.verdict == ExistenceVerdict::exists_with_witness);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->kind == ParetoKind::pareto_verified_local);
    // weak-test echo: the witness is in particular not strictly dominated
    for (const auto& p : rep.pareto_points) {
        bool strictly = true;
        for (Eigen::Index i = 0; i < p.value.size(); ++i)
            strictly = strictly && p.value[i] < rep.witness->value[i] - 1e-12;
        CHECK(!strictly);
    }
    // linear-route evidence field is present and sane
    CHECK(rep.ps.min_feasible_nu >= 0.0);
}
