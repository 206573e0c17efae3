#include "vopt/newton.hpp"

#include "vopt/minimize.hpp"
#include "vopt/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace vopt {

namespace {

using int128 = __int128;

long long narrow(int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw Error("lattice arithmetic overflow");
    return static_cast<long long>(v);
}

/// Exact rational on int64 with 128-bit intermediates. Polytope data is tiny
/// (exponents and their sums), so reduced values stay far from the limits.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw Error("rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(std::abs(num), den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    static Rat make(int128 n, int128 d) {
        if (d == 0) throw Error("rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        // Euclid on 128-bit values before narrowing
        int128 x = n < 0 ? -n : n, y = d;
        while (y != 0) {
            int128 t = x % y;
            x = y;
            y = t;
        }
        if (x == 0) x = 1;
        Rat r;
        r.num = narrow(n / x);
        r.den = narrow(d / x);
        return r;
    }
    Rat operator+(const Rat& o) const {
        return make(static_cast<int128>(num) * o.den + static_cast<int128>(o.num) * den,
                    static_cast<int128>(den) * o.den);
    }
    Rat operator-(const Rat& o) const {
        return make(static_cast<int128>(num) * o.den - static_cast<int128>(o.num) * den,
                    static_cast<int128>(den) * o.den);
    }
    Rat operator*(const Rat& o) const {
        return make(static_cast<int128>(num) * o.num, static_cast<int128>(den) * o.den);
    }
    Rat operator/(const Rat& o) const {
        if (o.num == 0) throw Error("rational: division by zero");
        return make(static_cast<int128>(num) * o.den, static_cast<int128>(den) * o.num);
    }
    bool operator==(const Rat& o) const {
        return static_cast<int128>(num) * o.den == static_cast<int128>(o.num) * den;
    }
    bool operator<(const Rat& o) const {
        return static_cast<int128>(num) * o.den < static_cast<int128>(o.num) * den;
    }
    bool negative() const { return num < 0; }
    bool zero() const { return num == 0; }
};

/// Phase-I simplex over exact rationals: is {x >= 0 : A x = b} nonempty?
/// Bland's rule, so no cycling. Sizes here are a handful of rows and at most
/// a few dozen columns.
bool lp_feasible(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    const int rows = static_cast<int>(A.size());
    const int cols = rows ? static_cast<int>(A[0].size()) : 0;
    for (int i = 0; i < rows; ++i) {
        if (b[i].negative()) {
            for (auto& v : A[i]) v = Rat(0) - v;
            b[i] = Rat(0) - b[i];
        }
    }
    // tableau with artificial basis; objective = sum of artificials
    const int total = cols + rows;
    std::vector<std::vector<Rat>> T(rows, std::vector<Rat>(total + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) T[i][j] = A[i][j];
        T[i][cols + i] = Rat(1);
        T[i][total] = b[i];
    }
    std::vector<int> basis(rows);
    for (int i = 0; i < rows; ++i) basis[i] = cols + i;
    std::vector<Rat> z(total + 1);  // phase-I reduced costs (sum over artificial basic rows)
    auto recompute_costs = [&] {
        for (int j = 0; j <= total; ++j) {
            Rat s(0);
            for (int i = 0; i < rows; ++i)
                if (basis[i] >= cols) s = s + T[i][j];
            z[j] = s;
        }
    };
    recompute_costs();
    for (int guard = 0; guard < 10000; ++guard) {
        int pivot_col = -1;
        for (int j = 0; j < total; ++j) {
            bool basic = false;
            for (int i = 0; i < rows; ++i)
                if (basis[i] == j) basic = true;
            if (basic) continue;
            if (Rat(0) < z[j]) {  // entering improves (phase-I minimizes sum of artificials)
                pivot_col = j;
                break;  // Bland: smallest index
            }
        }
        if (pivot_col < 0) break;
        int pivot_row = -1;
        Rat best_ratio(0);
        for (int i = 0; i < rows; ++i) {
            if (Rat(0) < T[i][pivot_col]) {
                Rat ratio = T[i][total] / T[i][pivot_col];
                if (pivot_row < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[pivot_row])) {
                    pivot_row = i;
                    best_ratio = ratio;
                }
            }
        }
        if (pivot_row < 0) break;  // unbounded phase-I cannot happen; stop defensively
        Rat pv = T[pivot_row][pivot_col];
        for (int j = 0; j <= total; ++j) T[pivot_row][j] = T[pivot_row][j] / pv;
        for (int i = 0; i < rows; ++i) {
            if (i == pivot_row || T[i][pivot_col].zero()) continue;
            Rat factor = T[i][pivot_col];
            for (int j = 0; j <= total; ++j)
                T[i][j] = T[i][j] - factor * T[pivot_row][j];
        }
        basis[pivot_row] = pivot_col;
        recompute_costs();
    }
    // feasible iff all artificial variables are zero
    Rat obj(0);
    for (int i = 0; i < rows; ++i)
        if (basis[i] >= cols) obj = obj + T[i][total];
    return obj.zero();
}

bool ivec_eq(const IVec& a, const IVec& b) { return a == b; }

std::vector<IVec> sorted_unique(std::vector<IVec> pts) {
    std::sort(pts.begin(), pts.end(), grlex_less);
    pts.erase(std::unique(pts.begin(), pts.end(), ivec_eq), pts.end());
    return pts;
}

long long dot_ll(const IVec& w, const IVec& v) {
    int128 s = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        s += static_cast<int128>(w[i]) * v[i];
    return narrow(s);
}

IVec primitive(IVec w) {
    long long g = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i) g = std::gcd(g, static_cast<long long>(std::abs(w[i])));
    if (g > 1)
        for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = static_cast<int>(w[i] / g);
    return w;
}

/// Rank of the integer span of a point set (exact, fraction-free Gaussian
/// elimination on rationals).
int lattice_rank(const std::vector<IVec>& pts, int dim) {
    std::vector<std::vector<Rat>> M;
    for (const auto& p : pts) {
        std::vector<Rat> row(dim);
        for (int j = 0; j < dim; ++j) row[j] = Rat(p[j]);
        M.push_back(std::move(row));
    }
    int rank = 0;
    for (int col = 0; col < dim && rank < static_cast<int>(M.size()); ++col) {
        int pivot = -1;
        for (int i = rank; i < static_cast<int>(M.size()); ++i)
            if (!M[i][col].zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(M[rank], M[pivot]);
        for (int i = rank + 1; i < static_cast<int>(M.size()); ++i) {
            if (M[i][col].zero()) continue;
            Rat factor = M[i][col] / M[rank][col];
            for (int j = col; j < dim; ++j) M[i][j] = M[i][j] - factor * M[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// Pivot columns of the point matrix: coordinates whose projection keeps the
/// full rank (used to map a degenerate polytope into R^rank).
std::vector<int> pivot_columns(const std::vector<IVec>& pts, int dim) {
    std::vector<std::vector<Rat>> M;
    for (const auto& p : pts) {
        std::vector<Rat> row(dim);
        for (int j = 0; j < dim; ++j) row[j] = Rat(p[j]);
        M.push_back(std::move(row));
    }
    std::vector<int> pivots;
    int rank = 0;
    for (int col = 0; col < dim && rank < static_cast<int>(M.size()); ++col) {
        int pivot = -1;
        for (int i = rank; i < static_cast<int>(M.size()); ++i)
            if (!M[i][col].zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(M[rank], M[pivot]);
        for (int i = rank + 1; i < static_cast<int>(M.size()); ++i) {
            if (M[i][col].zero()) continue;
            Rat factor = M[i][col] / M[rank][col];
            for (int j = col; j < dim; ++j) M[i][j] = M[i][j] - factor * M[rank][j];
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

/// Integer normal orthogonal to the rows of an (r-1) x r matrix via cofactor
/// expansion (generalized cross product). det of the empty matrix is 1.
long long int_det(std::vector<std::vector<long long>> m) {
    const int k = static_cast<int>(m.size());
    if (k == 0) return 1;
    // fraction-free Bareiss elimination
    long long prev = 1;
    for (int i = 0; i < k - 1; ++i) {
        if (m[i][i] == 0) {
            int swap_row = -1;
            for (int r = i + 1; r < k; ++r)
                if (m[r][i] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(m[i], m[swap_row]);
            for (auto& v : m[i]) v = -v;
        }
        for (int r = i + 1; r < k; ++r) {
            for (int c = i + 1; c < k; ++c) {
                int128 val = static_cast<int128>(m[r][c]) * m[i][i] -
                             static_cast<int128>(m[r][i]) * m[i][c];
                m[r][c] = narrow(val / prev);
            }
            m[r][i] = 0;
        }
        prev = m[i][i];
    }
    return m[k - 1][k - 1];
}

IVec cross_normal(const std::vector<IVec>& diffs, int r) {
    IVec w(r);
    for (int j = 0; j < r; ++j) {
        std::vector<std::vector<long long>> minor;
        for (const auto& d : diffs) {
            std::vector<long long> row;
            for (int c = 0; c < r; ++c)
                if (c != j) row.push_back(d[c]);
            minor.push_back(std::move(row));
        }
        long long det = int_det(std::move(minor));
        w[j] = static_cast<int>(((j % 2) ? -1 : 1) * det);
    }
    return w;
}

struct Facet {
    IVec normal;  // primitive outer normal, <w, v> <= support for all vertices
    long long support = 0;
    std::set<int> vertex_ids;
};

std::vector<Facet> enumerate_facets(const std::vector<IVec>& verts, int r) {
    std::vector<Facet> facets;
    const int vcount = static_cast<int>(verts.size());
    if (r == 0 || vcount < 2) return facets;

    std::vector<int> idx(r);
    std::vector<bool> mask(vcount, false);
    std::fill(mask.begin(), mask.begin() + r, true);
    std::vector<std::set<int>> seen;
    do {
        int k = 0;
        for (int i = 0; i < vcount; ++i)
            if (mask[i]) idx[k++] = i;
        std::vector<IVec> diffs;
        for (int i = 1; i < r; ++i) diffs.push_back(verts[idx[i]] - verts[idx[0]]);
        IVec w = cross_normal(diffs, r);
        bool zero = true;
        for (int j = 0; j < r; ++j)
            if (w[j] != 0) zero = false;
        if (zero) continue;  // affinely dependent subset
        long long h = dot_ll(w, verts[idx[0]]);
        bool above = false, below = false;
        for (const auto& v : verts) {
            long long d = dot_ll(w, v);
            if (d > h) above = true;
            if (d < h) below = true;
        }
        if (above && below) continue;
        if (above) {  // flip to outer orientation
            w = -w;
            h = -h;
        }
        w = primitive(w);
        h = dot_ll(w, verts[idx[0]]);
        Facet fct;
        fct.normal = w;
        fct.support = h;
        for (int i = 0; i < vcount; ++i)
            if (dot_ll(w, verts[i]) == h) fct.vertex_ids.insert(i);
        if (std::find_if(seen.begin(), seen.end(), [&](const std::set<int>& s) {
                return s == fct.vertex_ids;
            }) == seen.end()) {
            seen.push_back(fct.vertex_ids);
            facets.push_back(std::move(fct));
        }
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return facets;
}

} // namespace

bool LatticePolytope::contains_origin_vertex() const {
    for (const auto& v : vertices)
        if (v.isZero()) return true;
    return false;
}

bool in_convex_hull(const IVec& point, const std::vector<IVec>& points) {
    if (points.empty()) return false;
    const int n = static_cast<int>(point.size());
    const int k = static_cast<int>(points.size());
    std::vector<std::vector<Rat>> A(n + 1, std::vector<Rat>(k));
    std::vector<Rat> b(n + 1);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < n; ++i) A[i][j] = Rat(points[j][i]);
        A[n][j] = Rat(1);
    }
    for (int i = 0; i < n; ++i) b[i] = Rat(point[i]);
    b[n] = Rat(1);
    return lp_feasible(std::move(A), std::move(b));
}

namespace {

std::vector<IVec> extreme_points(std::vector<IVec> pts) {
    pts = sorted_unique(std::move(pts));
    std::vector<IVec> vertices;
    for (size_t i = 0; i < pts.size(); ++i) {
        std::vector<IVec> others;
        others.reserve(pts.size() - 1);
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (others.empty() || !in_convex_hull(pts[i], others)) vertices.push_back(pts[i]);
    }
    return vertices;
}

} // namespace

LatticePolytope newton_polytope(const Polynomial& p) {
    LatticePolytope P;
    P.dim = p.nvars();
    std::vector<IVec> gens;
    gens.push_back(IVec::Zero(p.nvars()));
    for (const auto& t : p.terms()) gens.push_back(t.exponents);
    P.vertices = extreme_points(std::move(gens));
    return P;
}

long long support_value(const LatticePolytope& P, const IVec& w) {
    long long h = std::numeric_limits<long long>::min();
    for (const auto& v : P.vertices) h = std::max(h, dot_ll(w, v));
    return h;
}

std::vector<IVec> argmax_vertices(const LatticePolytope& P, const IVec& w) {
    long long h = support_value(P, w);
    std::vector<IVec> out;
    for (const auto& v : P.vertices)
        if (dot_ll(w, v) == h) out.push_back(v);
    std::sort(out.begin(), out.end(), grlex_less);
    return out;
}

ConvenienceReport is_convenient(const PolyMap& f) {
    ConvenienceReport rep;
    rep.overall = true;
    for (int i = 0; i < f.ncomponents(); ++i) {
        bool comp_ok = true;
        for (int j = 0; j < f.nvars(); ++j) {
            bool axis = false;
            for (const auto& t : f.component(i).terms()) {
                if (t.exponents[j] > 0 && t.degree() == t.exponents[j]) {
                    axis = true;
                    break;
                }
            }
            if (!axis) {
                comp_ok = false;
                break;
            }
        }
        rep.per_component.push_back(comp_ok);
        rep.overall = rep.overall && comp_ok;
    }
    return rep;
}

NewtonComplex faces_at_infinity(const PolyMap& f) {
    const int n = f.nvars();
    if (n > 4) throw DimensionUnsupported(n);
    NewtonComplex cx;
    for (int i = 0; i < f.ncomponents(); ++i)
        cx.component_polytopes.push_back(newton_polytope(f.component(i)));

    // Minkowski sum vertex candidates: sums of component vertices.
    std::vector<IVec> sums;
    sums.push_back(IVec::Zero(n));
    for (const auto& P : cx.component_polytopes) {
        std::vector<IVec> next;
        for (const auto& a : sums)
            for (const auto& v : P.vertices) next.push_back(a + v);
        sums = sorted_unique(std::move(next));
    }
    cx.minkowski_sum.dim = n;
    cx.minkowski_sum.vertices = extreme_points(std::move(sums));
    const auto& V = cx.minkowski_sum.vertices;

    const int rank = lattice_rank(V, n);
    if (rank == 0) return cx;  // polytope is the origin alone

    // Work in the polytope's own dimension: project to pivot coordinates
    // (a linear isomorphism on the span, so the face lattice is preserved).
    std::vector<int> pivots = pivot_columns(V, n);
    std::vector<IVec> proj;
    proj.reserve(V.size());
    for (const auto& v : V) {
        IVec q(rank);
        for (int j = 0; j < rank; ++j) q[j] = v[pivots[j]];
        proj.push_back(q);
    }

    std::vector<Facet> facets;
    if (rank == 1) {
        // segment through the origin: its two vertices are the facets
        for (int i = 0; i < static_cast<int>(proj.size()); ++i) {
            for (int sgn : {1, -1}) {
                IVec w(1);
                w[0] = sgn;
                long long h = std::numeric_limits<long long>::min();
                for (const auto& q : proj) h = std::max(h, static_cast<long long>(sgn) * q[0]);
                if (static_cast<long long>(sgn) * proj[i][0] == h) {
                    Facet fct;
                    fct.normal = w;
                    fct.support = h;
                    fct.vertex_ids.insert(i);
                    bool dup = false;
                    for (const auto& e : facets)
                        if (e.vertex_ids == fct.vertex_ids && e.normal == fct.normal) dup = true;
                    if (!dup) facets.push_back(std::move(fct));
                }
            }
        }
    } else {
        facets = enumerate_facets(proj, rank);
    }

    // Proper faces are intersections of facets; close the vertex sets under
    // pairwise intersection.
    std::vector<std::set<int>> face_sets;
    for (const auto& fct : facets) face_sets.push_back(fct.vertex_ids);
    for (;;) {
        bool grew = false;
        const size_t sz = face_sets.size();
        for (size_t a = 0; a < sz; ++a) {
            for (size_t b = a + 1; b < sz; ++b) {
                std::set<int> inter;
                std::set_intersection(face_sets[a].begin(), face_sets[a].end(),
                                      face_sets[b].begin(), face_sets[b].end(),
                                      std::inserter(inter, inter.begin()));
                if (inter.empty()) continue;
                if (std::find(face_sets.begin(), face_sets.end(), inter) == face_sets.end()) {
                    face_sets.push_back(std::move(inter));
                    grew = true;
                }
            }
        }
        if (!grew) break;
    }

    for (const auto& fs : face_sets) {
        // representative outer normal: sum of the primitive normals of all
        // facets containing the face (lies in the cone's relative interior)
        IVec wr = IVec::Zero(rank);
        for (const auto& fct : facets) {
            if (std::includes(fct.vertex_ids.begin(), fct.vertex_ids.end(), fs.begin(), fs.end()))
                wr += fct.normal;
        }
        // exactness check: the summed normal must expose exactly this face
        long long h = std::numeric_limits<long long>::min();
        for (const auto& q : proj) h = std::max(h, dot_ll(wr, q));
        std::set<int> exposed;
        for (int i = 0; i < static_cast<int>(proj.size()); ++i)
            if (dot_ll(wr, proj[i]) == h) exposed.insert(i);
        if (exposed != fs) continue;  // not a face of the lattice (spurious intersection)

        // pull the normal back to R^n (zero on non-pivot coordinates)
        IVec w = IVec::Zero(n);
        for (int j = 0; j < rank; ++j) w[pivots[j]] = wr[j];
        long long hn = support_value(cx.minkowski_sum, w);
        if (hn <= 0) continue;  // face contains the origin

        FaceAtInfinity face;
        face.normal = w;
        face.support = hn;
        for (int id : fs) face.vertex_subset.push_back(V[id]);
        std::sort(face.vertex_subset.begin(), face.vertex_subset.end(), grlex_less);
        face.dim = lattice_rank(
                       [&] {
                           std::vector<IVec> diffs;
                           for (size_t i = 1; i < face.vertex_subset.size(); ++i)
                               diffs.push_back(face.vertex_subset[i] - face.vertex_subset[0]);
                           return diffs;
                       }(),
                       n);
        for (const auto& P : cx.component_polytopes)
            face.decomposition.push_back(argmax_vertices(P, w));
        cx.faces.push_back(std::move(face));
    }

    std::sort(cx.faces.begin(), cx.faces.end(), [](const FaceAtInfinity& a, const FaceAtInfinity& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        const size_t na = a.vertex_subset.size(), nb = b.vertex_subset.size();
        if (na != nb) return na < nb;
        for (size_t i = 0; i < na; ++i)
            if (a.vertex_subset[i] != b.vertex_subset[i])
                return grlex_less(a.vertex_subset[i], b.vertex_subset[i]);
        return false;
    });
    return cx;
}

Polynomial principal_part(const Polynomial& p, const PolytopeFace& face) {
    LatticePolytope P = newton_polytope(p);
    std::vector<IVec> exposed = argmax_vertices(P, face.normal);
    std::vector<IVec> claimed = face.vertices;
    std::sort(claimed.begin(), claimed.end(), grlex_less);
    if (exposed.size() != claimed.size()) throw FaceMismatch();
    for (size_t i = 0; i < exposed.size(); ++i)
        if (exposed[i] != claimed[i]) throw FaceMismatch();
    long long h = support_value(P, face.normal);
    std::vector<Monomial> kept;
    for (const auto& t : p.terms())
        if (dot_ll(face.normal, t.exponents) == h) kept.push_back(t);
    return Polynomial(p.nvars(), std::move(kept));
}

KhovanskiiResult check_khovanskii(const PolyMap& f, const KhovanskiiBudget& budget) {
    NewtonComplex cx = faces_at_infinity(f);
    KhovanskiiResult result;
    result.budget = budget;
    const int n = f.nvars();
    const int m = f.ncomponents();

    for (size_t fi = 0; fi < cx.faces.size(); ++fi) {
        const FaceAtInfinity& face = cx.faces[fi];
        KhovanskiiFaceReport rep;
        rep.face_index = static_cast<int>(fi);

        std::vector<Polynomial> parts;
        double coeff_sq = 0.0;
        for (int i = 0; i < m; ++i) {
            PolytopeFace pf{face.normal, face.decomposition[i]};
            parts.push_back(principal_part(f.component(i), pf));
            for (const auto& t : parts.back().terms()) coeff_sq += t.coefficient * t.coefficient;
        }
        const double root_tol = budget.root_tol_rel * (1.0 + std::sqrt(coeff_sq));

        // a nonzero-constant component has no zeros on the torus
        bool impossible = false;
        for (const auto& part : parts)
            if (!part.is_zero() && part.degree() == 0) impossible = true;

        if (!impossible) {
            PolyMap part_map(n, parts);
            ResidualFn residual = [&part_map](const Vec& x, Vec& r, Mat* J) {
                r = part_map.eval(x);
                if (J) *J = part_map.jacobian(x);
            };
            Rng rng = Rng(budget.seed).fork(0xFACE0000ULL + fi);
            for (int s = 0; s < budget.n_starts; ++s) {
                Vec x0(n);
                for (int j = 0; j < n; ++j) {
                    double v = 0.0;
                    do {
                        v = rng.uniform(-3.0, 3.0);
                    } while (std::abs(v) < budget.torus_floor);
                    x0[j] = v;
                }
                // run far past root_tol: at a degenerate zero the rank test
                // needs several more digits than the residual test
                LmOptions lopt;
                lopt.max_iter = 200;
                lopt.r_tol = 0.0;
                lopt.g_tol = 1e-32;  // only stop on stall or the iteration cap
                LmResult lm = levenberg_marquardt(residual, x0, m, lopt);
                double rn = part_map.eval(lm.x).norm();
                if (rn > root_tol) continue;
                double floor = std::numeric_limits<double>::infinity();
                for (int j = 0; j < n; ++j) floor = std::min(floor, std::abs(lm.x[j]));
                if (floor < budget.torus_floor) continue;  // off the torus

                rep.zeros_found += 1;
                Mat J = part_map.jacobian(lm.x);
                Mat scaled = J;
                for (int j = 0; j < n; ++j) scaled.col(j) *= lm.x[j];
                double sigma_min = 0.0;
                if (m <= n) {
                    Eigen::JacobiSVD<Mat> svd(scaled);
                    sigma_min = svd.singularValues().minCoeff();
                }  // m > n: rank m is impossible, sigma_min stays 0
                double rank_tol = budget.rank_tol_rel * (1.0 + scaled.norm());
                if (sigma_min <= rank_tol) {
                    rep.status = KhovanskiiStatus::degenerate_witness;
                    rep.witness = lm.x;
                    rep.witness_residual = rn;
                    rep.witness_sigma_min = sigma_min;
                    break;
                }
            }
        }
        if (rep.status != KhovanskiiStatus::degenerate_witness)
            rep.status = rep.zeros_found > 0 ? KhovanskiiStatus::nondegenerate_probabilistic
                                             : KhovanskiiStatus::no_zero_found;
        result.faces.push_back(std::move(rep));
    }

    bool any_deg = false, any_nozero = false, any_nondeg = false;
    for (const auto& r : result.faces) {
        any_deg = any_deg || r.status == KhovanskiiStatus::degenerate_witness;
        any_nozero = any_nozero || r.status == KhovanskiiStatus::no_zero_found;
        any_nondeg = any_nondeg || r.status == KhovanskiiStatus::nondegenerate_probabilistic;
    }
    if (any_deg)
        result.overall = KhovanskiiStatus::degenerate_witness;
    else if (any_nozero || !any_nondeg)
        result.overall = KhovanskiiStatus::no_zero_found;
    else
        result.overall = KhovanskiiStatus::nondegenerate_probabilistic;
    return result;
}

} // namespace vopt
