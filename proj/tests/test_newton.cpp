#include "vopt/newton.hpp"
#include "vopt/polynomial.hpp"
#include "vopt/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace vopt;

namespace {

std::set<std::pair<int, int>> vertex_set2(const std::vector<IVec>& verts) {
    std::set<std::pair<int, int>> s;
    for (const auto& v : verts) s.insert({v[0], v[1]});
    return s;
}

/// Independent 2-D hull oracle (monotone chain, strict turns only).
std::vector<std::pair<int, int>> hull2_oracle(std::set<std::pair<int, int>> pts) {
    std::vector<std::pair<int, int>> p(pts.begin(), pts.end());
    auto cross = [](const std::pair<int, int>& o, const std::pair<int, int>& a,
                    const std::pair<int, int>& b) {
        return static_cast<long long>(a.first - o.first) * (b.second - o.second) -
               static_cast<long long>(a.second - o.second) * (b.first - o.first);
    };
    if (p.size() <= 2) return p;
    std::vector<std::pair<int, int>> h(2 * p.size());
    size_t k = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    size_t lower = k + 1;
    for (size_t i = p.size() - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    return h;
}

std::set<std::pair<int, int>> hull_oracle_vertices(const Polynomial& p) {
    std::set<std::pair<int, int>> gens;
    gens.insert({0, 0});
    for (const auto& t : p.terms()) gens.insert({t.exponents[0], t.exponents[1]});
    auto hull = hull2_oracle(gens);
    return {hull.begin(), hull.end()};
}

Polynomial random_sparse(Rng& rng, int n) {
    std::vector<Monomial> terms;
    int nt = 1 + static_cast<int>(rng.uniform() * 6.0);
    for (int t = 0; t < nt; ++t) {
        Monomial mono;
        mono.exponents = IVec::Zero(n);
        for (int j = 0; j < n; ++j) mono.exponents[j] = static_cast<int>(rng.uniform() * 5.0);
        mono.coefficient = rng.uniform(-4.0, 4.0);
        if (mono.coefficient == 0.0) mono.coefficient = 1.0;
        terms.push_back(std::move(mono));
    }
    return Polynomial(n, std::move(terms));
}

} // namespace

TEST_CASE("newton polytope: Motzkin drops the interior exponent") {
    Polynomial m = parse_polynomial("x1^2*x2^4 + x1^4*x2^2 - 3*x1^2*x2^2 + 1", 2);
    LatticePolytope P = newton_polytope(m);
    CHECK(vertex_set2(P.vertices) ==
          std::set<std::pair<int, int>>{{0, 0}, {2, 4}, {4, 2}});
}

TEST_CASE("newton polytope: quartic with an interior mixed term") {
    Polynomial p = parse_polynomial("x1^4 + x2^4 + x1*x2", 2);
    LatticePolytope P = newton_polytope(p);
    CHECK(vertex_set2(P.vertices) ==
          std::set<std::pair<int, int>>{{0, 0}, {4, 0}, {0, 4}});
}

TEST_CASE("newton polytope: a constant collapses to the origin") {
    Polynomial p = parse_polynomial("1", 3);
    LatticePolytope P = newton_polytope(p);
    REQUIRE(P.vertices.size() == 1);
    CHECK(P.vertices[0].isZero());
}

TEST_CASE("property: vertices match the 2-D hull oracle") {
    Rng rng(53);
    for (int inst = 0; inst < 60; ++inst) {
        Polynomial p = random_sparse(rng, 2);
        LatticePolytope P = newton_polytope(p);
        CHECK(vertex_set2(P.vertices) == hull_oracle_vertices(p));
    }
}

TEST_CASE("property: generators stay inside the vertex hull") {
    Rng rng(59);
    for (int inst = 0; inst < 20; ++inst) {
        int n = 2 + inst % 2;
        Polynomial p = random_sparse(rng, n);
        LatticePolytope P = newton_polytope(p);
        for (const auto& t : p.terms()) CHECK(in_convex_hull(t.exponents, P.vertices));
        CHECK(in_convex_hull(IVec::Zero(n), P.vertices));
    }
}

TEST_CASE("convenience: catalog examples") {
    PolyMap motzkin = parse_poly_map("x1^2*x2^4 + x1^4*x2^2 - 3*x1^2*x2^2 + 1", 2);
    CHECK(!is_convenient(motzkin).overall);
    PolyMap quartic = parse_poly_map("x1^4 + x2^4 + x1*x2", 2);
    CHECK(is_convenient(quartic).overall);
    PolyMap pair = parse_poly_map("x1^2 + x2^2\nx1^2 - x2^2", 2);
    CHECK(is_convenient(pair).overall);
}

TEST_CASE("property: convenience agrees with the axis-intersection oracle") {
    Rng rng(61);
    for (int inst = 0; inst < 100; ++inst) {
        int n = 1 + inst % 3;
        Polynomial p = random_sparse(rng, n);
        PolyMap f(n, {p});
        ConvenienceReport rep = is_convenient(f);
        LatticePolytope P = newton_polytope(p);
        bool oracle_all = true;
        for (int j = 0; j < n; ++j) {
            // the hull meets the axis away from 0 iff (1/1000) e_j lies in it,
            // tested exactly after scaling everything by 1000
            std::vector<IVec> scaled;
            for (const auto& v : P.vertices) scaled.push_back(1000 * v);
            IVec probe = IVec::Zero(n);
            probe[j] = 1;
            oracle_all = oracle_all && in_convex_hull(probe, scaled);
        }
        CHECK(rep.overall == oracle_all);
    }
}

TEST_CASE("faces at infinity: circle polynomial") {
    PolyMap f = parse_poly_map("x1^2 + x2^2", 2);
    NewtonComplex cx = faces_at_infinity(f);
    // the hypotenuse and its two endpoints; edges through the origin excluded
    CHECK(cx.faces.size() == 3);
    int edges = 0, verts = 0;
    for (const auto& face : cx.faces) {
        CHECK(face.support > 0);
        if (face.dim == 1) {
            ++edges;
            CHECK(vertex_set2(face.vertex_subset) ==
                  std::set<std::pair<int, int>>{{2, 0}, {0, 2}});
            CHECK(face.normal[0] == face.normal[1]);  // outer normal along (1,1)
        } else {
            ++verts;
        }
    }
    CHECK(edges == 1);
    CHECK(verts == 2);
}

TEST_CASE("faces at infinity: product map decomposition") {
    PolyMap f = parse_poly_map("x1^2\nx2^2", 2);
    NewtonComplex cx = faces_at_infinity(f);
    CHECK(vertex_set2(cx.minkowski_sum.vertices) ==
          std::set<std::pair<int, int>>{{0, 0}, {2, 0}, {0, 2}, {2, 2}});
    bool corner_found = false;
    for (const auto& face : cx.faces) {
        if (face.dim != 0 || face.vertex_subset.size() != 1) continue;
        if (face.vertex_subset[0][0] == 2 && face.vertex_subset[0][1] == 2) {
            corner_found = true;
            REQUIRE(face.decomposition.size() == 2);
            REQUIRE(face.decomposition[0].size() == 1);
            REQUIRE(face.decomposition[1].size() == 1);
            CHECK(face.decomposition[0][0][0] == 2);
            CHECK(face.decomposition[0][0][1] == 0);
            CHECK(face.decomposition[1][0][0] == 0);
            CHECK(face.decomposition[1][0][1] == 2);
        }
    }
    CHECK(corner_found);
}

TEST_CASE("faces at infinity: constant map has none") {
    PolyMap f = parse_poly_map("1\n2", 2);
    NewtonComplex cx = faces_at_infinity(f);
    CHECK(cx.faces.empty());
}

TEST_CASE("faces at infinity: degenerate (segment) supports still work") {
    PolyMap f = parse_poly_map("x1^2 + x1", 2);  // polytope is a segment on the x1-axis
    NewtonComplex cx = faces_at_infinity(f);
    REQUIRE(cx.faces.size() == 1);
    CHECK(cx.faces[0].dim == 0);
    CHECK(cx.faces[0].vertex_subset[0][0] == 2);
    CHECK(cx.faces[0].support > 0);
}

TEST_CASE("faces at infinity: dimension guard") {
    PolyMap f = parse_poly_map("x1 + x2 + x3 + x4 + x5", 5);
    CHECK_THROWS_AS(faces_at_infinity(f), DimensionUnsupported);
}

TEST_CASE("property: support additivity and the Minkowski identity") {
    Rng rng(67);
    for (int inst = 0; inst < 25; ++inst) {
        int n = 2 + inst % 2;
        int m = 1 + inst % 3;
        std::vector<Polynomial> comps;
        for (int i = 0; i < m; ++i) comps.push_back(random_sparse(rng, n));
        PolyMap f(n, comps);
        NewtonComplex cx = faces_at_infinity(f);
        std::vector<LatticePolytope> polys;
        for (int i = 0; i < m; ++i) polys.push_back(newton_polytope(f.component(i)));

        for (int d = 0; d < 200; ++d) {
            IVec w(n);
            for (int j = 0; j < n; ++j) w[j] = static_cast<int>(rng.uniform(-9.0, 10.0));
            long long rhs = 0;
            for (const auto& P : polys) rhs += support_value(P, w);
            CHECK(support_value(cx.minkowski_sum, w) == rhs);
        }

        for (const auto& face : cx.faces) {
            CHECK(face.support > 0);  // origin never on a face at infinity
            // vertex_subset equals the extreme points of the decomposition sums
            std::vector<IVec> sums;
            sums.push_back(IVec::Zero(n));
            for (const auto& part : face.decomposition) {
                std::vector<IVec> next;
                for (const auto& a : sums)
                    for (const auto& v : part) next.push_back(a + v);
                std::sort(next.begin(), next.end(), grlex_less);
                next.erase(std::unique(next.begin(), next.end()), next.end());
                sums = std::move(next);
            }
            std::vector<IVec> extremes;
            for (size_t i = 0; i < sums.size(); ++i) {
                std::vector<IVec> others;
                for (size_t j = 0; j < sums.size(); ++j)
                    if (j != i) others.push_back(sums[j]);
                if (others.empty() || !in_convex_hull(sums[i], others))
                    extremes.push_back(sums[i]);
            }
            std::sort(extremes.begin(), extremes.end(), grlex_less);
            CHECK(extremes == face.vertex_subset);
        }
    }
}

TEST_CASE("principal part: Motzkin top edge and a vertex face") {
    Polynomial m = parse_polynomial("x1^2*x2^4 + x1^4*x2^2 - 3*x1^2*x2^2 + 1", 2);
    IVec w(2);
    w << 1, 1;
    PolytopeFace face;
    face.normal = w;
    {
        IVec a(2), b(2);
        a << 2, 4;
        b << 4, 2;
        face.vertices = {a, b};
    }
    Polynomial part = principal_part(m, face);
    CHECK(part.same_terms(parse_polynomial("x1^2*x2^4 + x1^4*x2^2", 2)));

    Polynomial q = parse_polynomial("x1^4 + x2^4 + x1*x2", 2);
    PolytopeFace vf;
    vf.normal = IVec(2);
    vf.normal << 2, 1;
    vf.vertices = {IVec(2)};
    vf.vertices[0] << 4, 0;
    Polynomial vp = principal_part(q, vf);
    CHECK(vp.same_terms(parse_polynomial("x1^4", 2)));

    // mismatched claim: the (1,1) face of the quartic is the full hypotenuse
    PolytopeFace bad;
    bad.normal = IVec(2);
    bad.normal << 1, 1;
    bad.vertices = {vf.vertices[0]};
    CHECK_THROWS_AS(principal_part(q, bad), FaceMismatch);
}

TEST_CASE("property: principal part keeps exactly the supporting terms") {
    Rng rng(71);
    for (int inst = 0; inst < 30; ++inst) {
        int n = 2 + inst % 2;
        Polynomial p = random_sparse(rng, n);
        PolyMap f(n, {p});
        NewtonComplex cx = faces_at_infinity(f);
        for (const auto& face : cx.faces) {
            PolytopeFace pf{face.normal, face.decomposition[0]};
            Polynomial part = principal_part(p, pf);
            LatticePolytope P = newton_polytope(p);
            long long h = support_value(P, face.normal);
            for (const auto& t : part.terms()) {
                long long dot = 0;
                for (int j = 0; j < n; ++j)
                    dot += static_cast<long long>(face.normal[j]) * t.exponents[j];
                CHECK(dot == h);
            }
            size_t on_face = 0;
            for (const auto& t : p.terms()) {
                long long dot = 0;
                for (int j = 0; j < n; ++j)
                    dot += static_cast<long long>(face.normal[j]) * t.exponents[j];
                if (dot == h) ++on_face;
                else CHECK(dot < h);
            }
            CHECK(on_face == part.terms().size());
        }
    }
}

TEST_CASE("khovanskii: sums of even powers have no torus zeros") {
    PolyMap f = parse_poly_map("x1^2 + x2^2", 2);
    KhovanskiiResult res = check_khovanskii(f);
    CHECK(res.overall != KhovanskiiStatus::degenerate_witness);
    for (const auto& face : res.faces)
        CHECK(face.status == KhovanskiiStatus::no_zero_found);
}

TEST_CASE("khovanskii: the shifted square is degenerate at infinity") {
    PolyMap f = parse_poly_map("x1^2 - 2*x1*x2 + x2^2 + x1", 2);
    KhovanskiiBudget budget;
    budget.seed = 3;
    KhovanskiiResult res = check_khovanskii(f, budget);
    CHECK(res.overall == KhovanskiiStatus::degenerate_witness);
    bool verified = false;
    NewtonComplex cx = faces_at_infinity(f);
    for (const auto& fr : res.faces) {
        if (fr.status != KhovanskiiStatus::degenerate_witness) continue;
        REQUIRE(fr.witness.has_value());
        const Vec& x = *fr.witness;
        // independent re-verification straight from the principal part
        PolytopeFace pf{cx.faces[fr.face_index].normal, cx.faces[fr.face_index].decomposition[0]};
        Polynomial part = principal_part(f.component(0), pf);
        CHECK(std::abs(part.eval(x)) <= 1e-9);
        Vec g(2);
        g << part.derivative(0).eval(x) * x[0], part.derivative(1).eval(x) * x[1];
        CHECK(g.norm() <= 1e-6);
        // witnesses of this face sit on the diagonal
        CHECK(std::abs(x[0] - x[1]) <= 1e-6 * (1.0 + std::abs(x[0])));
        verified = true;
    }
    CHECK(verified);
}

TEST_CASE("khovanskii: convenient quartic has no degenerate face") {
    PolyMap f = parse_poly_map("x1^4 + x2^4 + x1*x2", 2);
    KhovanskiiResult res = check_khovanskii(f);
    CHECK(res.overall != KhovanskiiStatus::degenerate_witness);
}

TEST_CASE("khovanskii: determinism under a fixed seed") {
    PolyMap f = parse_poly_map("x1^2 - 2*x1*x2 + x2^2 + x1", 2);
    KhovanskiiBudget budget;
    budget.seed = 12;
    KhovanskiiResult a = check_khovanskii(f, budget);
    KhovanskiiResult b = check_khovanskii(f, budget);
    REQUIRE(a.faces.size() == b.faces.size());
    for (size_t i = 0; i < a.faces.size(); ++i) {
        CHECK(a.faces[i].status == b.faces[i].status);
        CHECK(a.faces[i].zeros_found == b.faces[i].zeros_found);
        if (a.faces[i].witness && b.faces[i].witness)
            CHECK((*a.faces[i].witness - *b.faces[i].witness).norm() == 0.0);
    }
}
