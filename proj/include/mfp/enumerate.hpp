#pragma once

// Lattice point enumeration for dilates of a lattice polytope, working in the
// polytope's lattice-adapted chart. Coordinate-by-coordinate bound
// propagation over the facet system; pruning uses per-level tail extrema and
// never discards feasible points.

#include "mfp/polytope.hpp"

namespace mfp {

namespace detail {

struct DilateEnumerator {
    int d = 0;
    int m = 0;
    std::vector<std::vector<long long>> a;  // m x d
    std::vector<long long> b;               // a.x >= k*b
    std::vector<long long> lo0, hi0;        // unit-dilate coordinate bounds
    std::vector<std::vector<long long>> tailmax0;  // [i][j]: max of sum_{t>=j} a[i][t] x_t at k=1

    explicit DilateEnumerator(const Polytope& p) {
        d = p.dim;
        m = static_cast<int>(p.n_facets());
        a.assign(m, std::vector<long long>(d, 0));
        b.assign(m, 0);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < d; ++j) a[i][j] = to_ll(p.facets_a[i][j]);
            b[i] = to_ll(p.facets_b[i]);
        }
        lo0.assign(d, 0);
        hi0.assign(d, 0);
        for (int j = 0; j < d; ++j) {
            long long lo = to_ll(p.vx[0][j]), hi = lo;
            for (const auto& x : p.vx) {
                long long v = to_ll(x[j]);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            lo0[j] = lo;
            hi0[j] = hi;
        }
        tailmax0.assign(m, std::vector<long long>(d + 1, 0));
        for (int i = 0; i < m; ++i)
            for (int j = d - 1; j >= 0; --j) {
                long long up = std::max(checked_mul(a[i][j], lo0[j]), checked_mul(a[i][j], hi0[j]));
                tailmax0[i][j] = checked_add(tailmax0[i][j + 1], up);
            }
    }

    // visit(x) is called for every point of (kP) ∩ Z^d in chart coordinates.
    template <class Visit>
    void run(long long k, Visit&& visit) const {
        if (d == 0) {
            std::vector<long long> x;
            visit(x);
            return;
        }
        std::vector<long long> x(d, 0);
        std::vector<long long> partial(m, 0);
        rec(k, 0, x, partial, visit);
    }

    long long count(long long k) const {
        long long n = 0;
        run(k, [&](const std::vector<long long>&) { ++n; });
        return n;
    }

private:
    template <class Visit>
    void rec(long long k, int j, std::vector<long long>& x, std::vector<long long>& partial,
             Visit&& visit) const {
        if (j == d) {
            visit(x);
            return;
        }
        auto ceil_div = [](long long p, long long q) {  // q > 0
            return p >= 0 ? (p + q - 1) / q : -((-p) / q);
        };
        long long lo = checked_mul(k, lo0[j]);
        long long hi = checked_mul(k, hi0[j]);
        for (int i = 0; i < m; ++i) {
            long long aij = a[i][j];
            if (aij == 0) continue;
            // a_ij x_j >= k b_i - partial_i - k*tailmax(j+1)
            long long rhs = checked_mul(k, b[i]) - partial[i] - checked_mul(k, tailmax0[i][j + 1]);
            if (aij > 0)
                lo = std::max(lo, ceil_div(rhs, aij));
            else
                hi = std::min(hi, -ceil_div(rhs, -aij));  // floor(rhs / aij)
        }
        for (long long v = lo; v <= hi; ++v) {
            x[j] = v;
            bool feasible = true;
            for (int i = 0; i < m; ++i) {
                long long np = partial[i] + a[i][j] * v;
                if (feasible && np + checked_mul(k, tailmax0[i][j + 1]) < checked_mul(k, b[i]))
                    feasible = false;
                partial[i] = np;
            }
            if (feasible) rec(k, j + 1, x, partial, visit);
            for (int i = 0; i < m; ++i) partial[i] -= a[i][j] * v;
        }
        x[j] = 0;
    }
};

}  // namespace detail

// Number of points of kP lying in the chart lattice (= L ∩ aff for lattice
// charts). Requires a lattice-adapted chart (denom 1, integer vertices).
inline long long count_lattice_points_x(const Polytope& p, long long k) {
    if (k == 0) return 1;
    if (p.chart.denom != 1) throw std::invalid_argument("lattice chart required");
    detail::DilateEnumerator e(p);
    return e.count(k);
}

// The points themselves, in chart coordinates.
inline ZMat lattice_points_x(const Polytope& p, long long k) {
    if (p.chart.denom != 1) throw std::invalid_argument("lattice chart required");
    ZMat out;
    if (k == 0) {
        out.push_back(ZVec(p.dim, Int(0)));
        return out;
    }
    detail::DilateEnumerator e(p);
    e.run(k, [&](const std::vector<long long>& x) {
        ZVec z(x.size());
        for (size_t i = 0; i < x.size(); ++i) z[i] = int_of(x[i]);
        out.push_back(std::move(z));
    });
    return out;
}

// Ambient coordinates of the points of kP ∩ L. For k=0 this is the origin.
inline std::vector<QVec> lattice_points_ambient(const Polytope& p, long long k) {
    std::vector<QVec> out;
    if (k == 0) {
        out.push_back(QVec(p.ambient, Rat(0)));
        return out;
    }
    ZMat xs = lattice_points_x(p, k);
    // ambient point = k*origin + x * basis (denom = 1)
    for (auto& x : xs) {
        QVec pt(p.ambient);
        for (int c = 0; c < p.ambient; ++c) pt[c] = Rat(int_of(k)) * p.chart.origin[c];
        for (int i = 0; i < p.dim; ++i)
            if (x[i] != 0)
                for (int c = 0; c < p.ambient; ++c)
                    if (p.chart.basis[i][c] != 0) pt[c] += Rat(x[i] * p.chart.basis[i][c]);
        out.push_back(std::move(pt));
    }
    return out;
}

}  // namespace mfp
