#pragma once

// Exact convex hull kernel. Polytopes carry their vertices in ambient
// rational coordinates plus an integral coordinate chart on their affine
// hull; facet enumeration runs as a double description sweep over the
// homogenized chart coordinates.

#include "mfp/bits.hpp"
#include "mfp/linalg.hpp"
#include "mfp/sublattice.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace mfp {

struct geometry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Affine chart: ambient point p on the hull <-> chart point x via
//   p = origin + (x * basis) / denom.
// For lattice charts (denom = 1, basis a lattice basis of L ∩ dir) the chart
// coordinates of L-points are exactly Z^d.
struct Chart {
    QVec origin;
    ZMat basis;  // d rows of length D
    Int denom = 1;

    int dim() const { return static_cast<int>(basis.size()); }
    int ambient() const { return static_cast<int>(origin.size()); }

    // columns giving an invertible d x d submatrix, and its rational inverse
    std::vector<int> solve_cols;
    QMat solve_inv;  // d x d, inverse of basis restricted to solve_cols

    void finish() {
        int d = dim();
        RankTracker rt(d);
        solve_cols.clear();
        for (int c = 0; c < ambient() && static_cast<int>(solve_cols.size()) < d; ++c) {
            QVec col(d);
            for (int i = 0; i < d; ++i) col[i] = Rat(basis[i][c]);
            if (rt.add(col)) solve_cols.push_back(c);
        }
        if (static_cast<int>(solve_cols.size()) != d) throw geometry_error("chart basis rank defect");
        QMat m(d, QVec(2 * d, Rat(0)));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) m[i][j] = Rat(basis[j][solve_cols[i]]);
            m[i][d + i] = 1;
        }
        rref(m);
        solve_inv.assign(d, QVec(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) solve_inv[i][j] = m[i][d + j];
        // solve_inv[i][j]: x_j = sum_i solve_inv[i][j] * rhs_i with rhs_i = denom*(p-origin) at solve_cols[i]
    }

    QVec to_x(const QVec& p) const {
        int d = dim();
        QVec rhs(d);
        for (int i = 0; i < d; ++i) rhs[i] = (p[solve_cols[i]] - origin[solve_cols[i]]) * Rat(denom);
        QVec x(d, Rat(0));
        for (int i = 0; i < d; ++i) {
            if (rhs[i] == 0) continue;
            for (int j = 0; j < d; ++j) x[j] += solve_inv[i][j] * rhs[i];
        }
        return x;
    }

    // to_x with verification that p really lies on the affine hull
    std::optional<QVec> to_x_checked(const QVec& p) const {
        QVec x = to_x(p);
        QVec back = from_x_q(x);
        for (int c = 0; c < ambient(); ++c)
            if (back[c] != p[c]) return std::nullopt;
        return x;
    }

    QVec from_x_q(const QVec& x) const {
        QVec p = origin;
        for (int i = 0; i < dim(); ++i) {
            if (x[i] == 0) continue;
            Rat f = x[i] / Rat(denom);
            for (int c = 0; c < ambient(); ++c)
                if (basis[i][c] != 0) p[c] += f * Rat(basis[i][c]);
        }
        return p;
    }

    QVec from_x(const ZVec& x) const { return from_x_q(q_of_z(x)); }
};

// ---------------------------------------------------------------------------
// Double description: facets of conv(points), points full-dimensional in Z^d.

struct DDFacets {
    ZMat a;   // facet normals, primitive
    ZVec b;   // a . x >= b
};

namespace detail {

struct DDRay {
    ZVec r;      // length d+1
    Bits tight;  // over input point indices, in processing order
};

inline DDFacets dual_description(const ZMat& pts) {
    int n = static_cast<int>(pts.size());
    int d = pts.empty() ? 0 : static_cast<int>(pts[0].size());
    if (d == 0) return {};

    // choose d+1 affinely independent points for the initial simplicial cone
    std::vector<int> init;
    {
        RankTracker rt(d + 1);
        for (int i = 0; i < n && static_cast<int>(init.size()) < d + 1; ++i) {
            QVec h(d + 1);
            for (int j = 0; j < d; ++j) h[j] = Rat(pts[i][j]);
            h[d] = 1;
            if (rt.add(h)) init.push_back(i);
        }
    }
    if (static_cast<int>(init.size()) != d + 1) throw geometry_error("points not full-dimensional");

    std::vector<int> order = init;
    {
        std::vector<bool> used(n, false);
        for (int i : init) used[i] = true;
        for (int i = 0; i < n; ++i)
            if (!used[i]) order.push_back(i);
    }

    ZMat g0(d + 1, ZVec(d + 1));
    for (int k = 0; k <= d; ++k) {
        for (int j = 0; j < d; ++j) g0[k][j] = pts[init[k]][j];
        g0[k][d] = 1;
    }
    ZMat adj;
    Int det = ffgj_adjugate(g0, &adj);
    if (det == 0) throw geometry_error("initial simplex degenerate");

    std::vector<DDRay> rays;
    for (int j = 0; j <= d; ++j) {
        DDRay ray;
        ray.r.resize(d + 1);
        for (int i = 0; i <= d; ++i) ray.r[i] = det > 0 ? adj[i][j] : Int(-adj[i][j]);
        make_primitive(ray.r);
        ray.tight = Bits(n);
        for (int k = 0; k <= d; ++k)
            if (k != j) ray.tight.set(k);
        rays.push_back(std::move(ray));
    }

    auto eval = [&](int t, const ZVec& r) {
        Int s = 0;
        const ZVec& p = pts[order[t]];
        for (int j = 0; j < d; ++j) s += p[j] * r[j];
        s += r[d];
        return s;
    };

    for (int t = d + 1; t < n; ++t) {
        std::vector<Int> val(rays.size());
        bool any_neg = false;
        for (size_t i = 0; i < rays.size(); ++i) {
            val[i] = eval(t, rays[i].r);
            if (val[i] < 0) any_neg = true;
        }
        if (!any_neg) {
            for (size_t i = 0; i < rays.size(); ++i)
                if (val[i] == 0) rays[i].tight.set(t);
            continue;
        }
        std::vector<int> pos, neg;
        for (size_t i = 0; i < rays.size(); ++i) {
            if (val[i] > 0) pos.push_back(static_cast<int>(i));
            else if (val[i] < 0) neg.push_back(static_cast<int>(i));
        }
        std::unordered_set<size_t> seen;
        std::vector<DDRay> created;
        for (int ip : pos)
            for (int in : neg) {
                Bits common = rays[ip].tight & rays[in].tight;
                if (common.count() < d - 1) continue;
                bool adjacent = true;
                for (size_t r2 = 0; r2 < rays.size(); ++r2) {
                    if (static_cast<int>(r2) == ip || static_cast<int>(r2) == in) continue;
                    if (common.subset_of(rays[r2].tight)) { adjacent = false; break; }
                }
                if (!adjacent) continue;
                DDRay nr;
                nr.r.resize(d + 1);
                for (int j = 0; j <= d; ++j) nr.r[j] = val[ip] * rays[in].r[j] - val[in] * rays[ip].r[j];
                make_primitive(nr.r);
                nr.tight = common;
                nr.tight.set(t);
                ZVecHash h;
                size_t key = h(nr.r);
                if (!seen.insert(key).second) {
                    bool dup = false;
                    for (const auto& c : created)
                        if (c.r == nr.r) { dup = true; break; }
                    if (dup) continue;
                }
                created.push_back(std::move(nr));
            }
        std::vector<DDRay> next;
        next.reserve(rays.size() + created.size());
        for (size_t i = 0; i < rays.size(); ++i) {
            if (val[i] >= 0) {
                if (val[i] == 0) rays[i].tight.set(t);
                next.push_back(std::move(rays[i]));
            }
        }
        for (auto& c : created) next.push_back(std::move(c));
        rays = std::move(next);
    }

    DDFacets out;
    for (auto& ray : rays) {
        ZVec a(ray.r.begin(), ray.r.begin() + d);
        bool zero = true;
        for (const auto& x : a)
            if (x != 0) { zero = false; break; }
        if (zero) continue;  // the trivial 1 >= 0 ray; not a facet
        out.a.push_back(std::move(a));
        out.b.push_back(-ray.r[d]);
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

struct FaceLattice {
    std::vector<std::vector<Bits>> by_dim;  // proper faces grouped by dimension
    std::vector<long long> f_vector;
    // Hasse diagram: children[j][i] lists by_dim[j-1] indices covered by face i
    std::vector<std::vector<std::vector<int>>> children;
    // children of the whole polytope are the facets, in by_dim[dim-1] order
};

class Polytope;
using PolytopePtr = std::shared_ptr<const Polytope>;

class Polytope {
public:
    int ambient = 0;
    int dim = -1;
    std::vector<QVec> verts;  // lex sorted, irredundant
    Chart chart;
    ZMat vx;       // chart coordinates per vertex
    ZMat facets_a;
    ZVec facets_b;

    size_t n_vertices() const { return verts.size(); }
    size_t n_facets() const { return facets_a.size(); }

    // tight facet sets per vertex / tight vertex sets per facet
    const std::vector<Bits>& vertex_tight() const { return vtight_; }
    const std::vector<Bits>& facet_vertices() const { return fverts_; }

    bool contains(const QVec& p) const {
        if (dim < 0) return false;
        auto x = chart.to_x_checked(p);
        if (!x) return false;
        for (size_t f = 0; f < facets_a.size(); ++f) {
            Rat s = 0;
            for (int j = 0; j < dim; ++j)
                if (facets_a[f][j] != 0) s += Rat(facets_a[f][j]) * (*x)[j];
            if (s < Rat(facets_b[f])) return false;
        }
        return true;
    }

    bool vertex_set_equals(const Polytope& o) const {
        return ambient == o.ambient && verts == o.verts;  // both lex sorted
    }

    // Ambient affine hull equations a.p = c, primitive integer a.
    std::vector<std::pair<ZVec, Rat>> affine_hull_equations() const {
        std::vector<std::pair<ZVec, Rat>> eqs;
        if (verts.empty()) return eqs;
        QMat dirs;
        for (size_t i = 1; i < verts.size(); ++i) {
            QVec dvec(ambient);
            for (int c = 0; c < ambient; ++c) dvec[c] = verts[i][c] - verts[0][c];
            dirs.push_back(std::move(dvec));
        }
        if (dirs.empty()) {
            // a point: equations x_c = v_c
            for (int c = 0; c < ambient; ++c) {
                ZVec a(ambient, Int(0));
                a[c] = 1;
                eqs.emplace_back(std::move(a), verts[0][c]);
            }
            return eqs;
        }
        QMat normals = right_kernel(dirs);  // dirs . y = 0
        for (auto& yq : normals) {
            Int den;
            ZVec a = z_of_q_cleared(yq, den);
            make_primitive(a);
            Rat c = dotzq(a, verts[0]);
            eqs.emplace_back(std::move(a), std::move(c));
        }
        return eqs;
    }

    // Ambient representatives of the facet inequalities g.p >= c (valid on the
    // affine hull; unique up to adding affine hull equations).
    std::vector<std::pair<QVec, Rat>> ambient_facets() const {
        std::vector<std::pair<QVec, Rat>> out;
        for (size_t f = 0; f < facets_a.size(); ++f) {
            QVec g(ambient, Rat(0));
            // a . x with x = denom * solve_inv^T (p - origin)|cols
            for (int i = 0; i < dim; ++i) {
                Rat coeff = 0;
                for (int j = 0; j < dim; ++j)
                    if (facets_a[f][j] != 0) coeff += chart.solve_inv[i][j] * Rat(facets_a[f][j]);
                coeff *= Rat(chart.denom);
                g[chart.solve_cols[i]] += coeff;
            }
            Rat c = Rat(facets_b[f]) + dot(g, chart.origin);
            out.emplace_back(std::move(g), std::move(c));
        }
        return out;
    }

    const FaceLattice& face_lattice() const;
    const std::vector<long long>& f_vector() const { return face_lattice().f_vector; }
    const std::vector<std::pair<int, int>>& edges() const;

    // set by hull()
    friend Polytope hull(std::vector<QVec> points, const SubLattice* lattice);

private:
    std::vector<Bits> vtight_;   // per vertex: tight facets
    std::vector<Bits> fverts_;   // per facet: tight vertices

    // Derived combinatorial data is computed once under a lock and then read
    // concurrently; copies of a polytope share the cache.
    struct Lazy {
        std::mutex mu;
        std::unique_ptr<FaceLattice> lattice;
        std::unique_ptr<std::vector<std::pair<int, int>>> edges;
    };
    std::shared_ptr<Lazy> lazy_ = std::make_shared<Lazy>();

    void build_incidence() {
        size_t nv = verts.size(), nf = facets_a.size();
        vtight_.assign(nv, Bits(static_cast<int>(nf)));
        fverts_.assign(nf, Bits(static_cast<int>(nv)));
        for (size_t v = 0; v < nv; ++v)
            for (size_t f = 0; f < nf; ++f) {
                if (dot(facets_a[f], vx[v]) == facets_b[f]) {
                    vtight_[v].set(static_cast<int>(f));
                    fverts_[f].set(static_cast<int>(v));
                }
            }
    }

    friend struct FaceLatticeBuilder;
};

// Convex hull of ambient points. When a lattice is supplied all points must
// be integral members of it and the chart is lattice-adapted: chart
// coordinates identify L ∩ aff with Z^dim.
inline Polytope hull(std::vector<QVec> points, const SubLattice* lattice = nullptr) {
    if (points.empty()) throw std::invalid_argument("hull of empty point set");
    std::sort(points.begin(), points.end(), [](const QVec& a, const QVec& b) { return lex_less(a, b); });
    points.erase(std::unique(points.begin(), points.end()), points.end());

    Polytope p;
    p.ambient = static_cast<int>(points[0].size());

    // affine dimension
    RankTracker rt(p.ambient);
    std::vector<int> indep;
    for (size_t i = 1; i < points.size(); ++i) {
        QVec dvec(p.ambient);
        for (int c = 0; c < p.ambient; ++c) dvec[c] = points[i][c] - points[0][c];
        if (rt.add(dvec)) indep.push_back(static_cast<int>(i));
    }
    int d = rt.rank();
    p.dim = d;

    if (d == 0) {
        p.verts = {points[0]};
        p.chart.origin = points[0];
        p.chart.denom = 1;
        p.vx = {ZVec{}};
        p.build_incidence();
        return p;
    }

    if (lattice) {
        if (lattice->ambient() != p.ambient) throw std::invalid_argument("lattice ambient mismatch");
        ZMat ys;
        for (const auto& pt : points) {
            if (!is_integral(pt)) throw std::invalid_argument("point not integral for lattice chart");
            auto y = lattice->coordinates(z_of_q(pt));
            if (!y) throw std::invalid_argument("point outside the given lattice");
            ys.push_back(std::move(*y));
        }
        ZMat diffs;
        for (size_t i = 1; i < ys.size(); ++i) {
            ZVec dvec(ys[i].size());
            for (size_t c = 0; c < dvec.size(); ++c) dvec[c] = ys[i][c] - ys[0][c];
            diffs.push_back(std::move(dvec));
        }
        ZMat dir_basis = saturated_span_lattice(diffs);  // rows in y-coords
        if (static_cast<int>(dir_basis.size()) != d) throw geometry_error("direction lattice rank mismatch");
        Hnf dir = hnf(dir_basis);
        p.chart.origin = points[0];
        p.chart.denom = 1;
        p.chart.basis.clear();
        for (const auto& row : dir.basis) p.chart.basis.push_back(lattice->from_coordinates(row));
        p.chart.finish();
        p.vx.clear();
        for (size_t i = 0; i < ys.size(); ++i) {
            ZVec dvec(ys[i].size());
            for (size_t c = 0; c < dvec.size(); ++c) dvec[c] = ys[i][c] - ys[0][c];
            auto x = dir.coordinates(dvec);
            if (!x) throw geometry_error("lattice chart coordinate failure");
            p.vx.push_back(std::move(*x));
        }
    } else {
        p.chart.origin = points[0];
        p.chart.basis.clear();
        for (int idx : indep) {
            QVec dvec(p.ambient);
            for (int c = 0; c < p.ambient; ++c) dvec[c] = points[idx][c] - points[0][c];
            Int den;
            ZVec zi = z_of_q_cleared(dvec, den);
            make_primitive(zi);
            p.chart.basis.push_back(std::move(zi));
        }
        p.chart.denom = 1;
        p.chart.finish();
        // rational coordinates, then scale to a common denominator
        QMat xq;
        Int m = 1;
        for (const auto& pt : points) {
            auto x = p.chart.to_x_checked(pt);
            if (!x) throw geometry_error("point off the affine hull in chart build");
            for (const auto& c : *x) m = lcm(m, c.get_den());
            xq.push_back(std::move(*x));
        }
        p.chart.denom = m;
        p.chart.finish();
        p.vx.clear();
        for (auto& x : xq) {
            ZVec xi(d);
            for (int j = 0; j < d; ++j) {
                Rat s = x[j] * Rat(m);
                xi[j] = s.get_num();
            }
            p.vx.push_back(std::move(xi));
        }
    }

    DDFacets dd = detail::dual_description(p.vx);
    p.facets_a = std::move(dd.a);
    p.facets_b = std::move(dd.b);

    // keep only vertices: points whose tight facet normals span rank d
    std::vector<QVec> keep_p;
    ZMat keep_x;
    for (size_t i = 0; i < points.size(); ++i) {
        RankTracker frank(d);
        int tight = 0;
        for (size_t f = 0; f < p.facets_a.size(); ++f) {
            if (dot(p.facets_a[f], p.vx[i]) == p.facets_b[f]) {
                ++tight;
                frank.add(p.facets_a[f]);
            }
        }
        if (tight >= d && frank.rank() == d) {
            keep_p.push_back(std::move(points[i]));
            keep_x.push_back(std::move(p.vx[i]));
        }
    }
    p.verts = std::move(keep_p);
    p.vx = std::move(keep_x);
    p.build_incidence();
    return p;
}

inline Polytope hull_z(const ZMat& points, const SubLattice* lattice = nullptr) {
    std::vector<QVec> q;
    q.reserve(points.size());
    for (const auto& pt : points) q.push_back(q_of_z(pt));
    return hull(std::move(q), lattice);
}

}  // namespace mfp

#include "mfp/facelattice.hpp"
