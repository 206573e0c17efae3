#pragma once

#include "vopt/core.hpp"
#include "vopt/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace vopt {

class DimensionUnsupported : public Error {
public:
    explicit DimensionUnsupported(int n)
        : Error("face enumeration supports n <= 4, got n = " + std::to_string(n)) {}
};

class FaceMismatch : public Error {
public:
    FaceMismatch() : Error("face does not support the Newton polytope of this polynomial") {}
};

/// Newton polyhedron at infinity: convex hull of the exponent support
/// together with the origin. Vertices are the extreme points only, stored
/// grlex-sorted. All arithmetic on these objects is exact.
struct LatticePolytope {
    int dim = 0;
    std::vector<IVec> vertices;

    bool contains_origin_vertex() const;
};

LatticePolytope newton_polytope(const Polynomial& p);

/// Exact membership of a point in the convex hull of integer points.
bool in_convex_hull(const IVec& point, const std::vector<IVec>& points);

/// Support function h(w) = max <w, v> over the polytope (exact).
long long support_value(const LatticePolytope& P, const IVec& w);

/// Vertices attaining the support value in direction w, grlex-sorted.
std::vector<IVec> argmax_vertices(const LatticePolytope& P, const IVec& w);

struct ConvenienceReport {
    std::vector<bool> per_component;
    bool overall = false;
};

/// A polynomial is convenient when its Newton polyhedron meets every
/// coordinate axis away from the origin; with nonnegative exponents this is
/// exactly "a pure power of every variable appears".
ConvenienceReport is_convenient(const PolyMap& f);

/// A face of the Minkowski-sum polytope not containing the origin, with its
/// outer normal and the unique decomposition into component faces.
struct FaceAtInfinity {
    IVec normal;       // integer outer normal (sum of primitive facet normals)
    long long support = 0;  // h(normal) > 0
    int dim = 0;
    std::vector<IVec> vertex_subset;                // face vertices of the sum polytope
    std::vector<std::vector<IVec>> decomposition;   // Delta_i = face of N(f_i) under normal
};

struct NewtonComplex {
    std::vector<LatticePolytope> component_polytopes;
    LatticePolytope minkowski_sum;
    std::vector<FaceAtInfinity> faces;  // all dimensions 0..n-1, origin excluded
};

/// Enumerates the faces at infinity of N(f_1) + ... + N(f_m). Exact; throws
/// DimensionUnsupported for n > 4.
NewtonComplex faces_at_infinity(const PolyMap& f);

/// A face of a single polynomial's Newton polytope, given by an outer normal
/// and the vertex set it must expose.
struct PolytopeFace {
    IVec normal;
    std::vector<IVec> vertices;
};

/// Terms of p whose exponents lie on the given face of N(p); throws
/// FaceMismatch when the face does not support N(p).
Polynomial principal_part(const Polynomial& p, const PolytopeFace& face);

enum class KhovanskiiStatus { nondegenerate_probabilistic, degenerate_witness, no_zero_found };

struct KhovanskiiFaceReport {
    int face_index = -1;
    KhovanskiiStatus status = KhovanskiiStatus::no_zero_found;
    int zeros_found = 0;
    std::optional<Vec> witness;        // rank-deficient torus zero of f_Delta
    double witness_residual = 0.0;     // ||f_Delta(witness)||
    double witness_sigma_min = 0.0;    // smallest singular value of the scaled Jacobian
};

struct KhovanskiiBudget {
    int n_starts = 40;
    double root_tol_rel = 1e-9;   // scaled by 1 + coefficient norm of f_Delta
    double rank_tol_rel = 1e-6;   // scaled by 1 + Frobenius norm of the scaled Jacobian
    double torus_floor = 0.05;    // zeros with min_j |x_j| below this are off-torus
    std::uint64_t seed = 0;
};

struct KhovanskiiResult {
    std::vector<KhovanskiiFaceReport> faces;
    KhovanskiiStatus overall = KhovanskiiStatus::no_zero_found;
    KhovanskiiBudget budget;
};

/// Multistart root sampling on every face at infinity: a rank-deficient torus
/// zero of the principal-part map is a degeneracy certificate; absence of
/// zeros is only evidence at this budget, never a certificate.
KhovanskiiResult check_khovanskii(const PolyMap& f, const KhovanskiiBudget& budget = {});

} // namespace vopt
