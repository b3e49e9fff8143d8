#pragma once

// Ehrhart polynomials of lattice polytopes, relative to the chart lattice.
//
// Two routes produce the same exact polynomial:
//  * counts: enumerate |kP ∩ L| for k = 0..d, interpolate, validate at d+1;
//  * hstar:  pull a triangulation off the face lattice, make it half-open
//            towards a symbolically perturbed interior point, and read the
//            h*-vector off the fundamental-domain points of each simplex.
// The counts route is preferred while the expected number of points stays
// under a fixed budget; beyond that only the hstar route is tractable.

#include "mfp/enumerate.hpp"
#include "mfp/facelattice.hpp"

#include <cmath>

namespace mfp {

inline constexpr long long kEnumerationBudget = 2'000'000;

struct EhrhartPolynomial {
    QVec coeffs;  // coeffs[i] multiplies m^i

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    Rat eval(const Int& m) const {
        Rat acc = 0;
        for (int i = degree(); i >= 0; --i) acc = acc * Rat(m) + coeffs[i];
        return acc;
    }

    Int eval_count(long long m) const {
        Rat v = eval(int_of(m));
        if (v.get_den() != 1) throw geometry_error("Ehrhart value not integral");
        return v.get_num();
    }

    Rat leading() const { return coeffs.empty() ? Rat(0) : coeffs.back(); }

    bool operator==(const EhrhartPolynomial& o) const { return coeffs == o.coeffs; }
    bool operator!=(const EhrhartPolynomial& o) const { return !(*this == o); }
};

namespace detail {

inline QVec poly_mul(const QVec& a, const QVec& b) {
    QVec r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// binomial(m + shift, d) as a polynomial in m
inline QVec binom_poly(long long shift, int d) {
    QVec r{Rat(1)};
    for (int i = 0; i < d; ++i) {
        // factor (m + shift - i)
        r = poly_mul(r, QVec{Rat(int_of(shift - i)), Rat(1)});
    }
    Rat fact = 1;
    for (int i = 2; i <= d; ++i) fact *= i;
    for (auto& c : r) c /= fact;
    return r;
}

struct HVecHash {
    size_t operator()(const std::vector<long long>& v) const {
        size_t h = 1469598103934665603ull;
        for (auto x : v) h = (h ^ static_cast<size_t>(x)) * 1099511628211ull;
        return h;
    }
};

}  // namespace detail

struct HStarData {
    std::vector<Int> hstar;
    Int volume = 0;  // normalized volume = sum of h*
    long long simplices = 0;
};

// Streams the pulling triangulation of p (pull vertex = least index at every
// face) through a callback taking d+1 vertex indices.
template <class Cb>
void pulling_triangulation(const Polytope& p, Cb&& cb) {
    int d = p.dim;
    if (d <= 0) return;
    const FaceLattice& fl = p.face_lattice();
    std::vector<int> path;
    path.push_back(0);  // least vertex of the whole polytope

    std::vector<int> minv;  // per (dim,idx) cached min vertex
    auto min_vertex = [&](const Bits& b) {
        for (size_t k = 0; k < b.w.size(); ++k)
            if (b.w[k]) return static_cast<int>(k * 64 + __builtin_ctzll(b.w[k]));
        return -1;
    };

    auto descend = [&](auto&& self, int jdim, int idx) -> void {
        const Bits& face = fl.by_dim[jdim][idx];
        int w = min_vertex(face);
        path.push_back(w);
        if (jdim == 0) {
            cb(path);
        } else {
            for (int child : fl.children[jdim][idx])
                if (!fl.by_dim[jdim - 1][child].test(w)) self(self, jdim - 1, child);
        }
        path.pop_back();
    };

    if (d == 1) {
        // faces of a segment are its two vertices
        for (int idx = 0; idx < static_cast<int>(fl.by_dim[0].size()); ++idx)
            if (!fl.by_dim[0][idx].test(0)) descend(descend, 0, idx);
        return;
    }
    for (int idx = 0; idx < static_cast<int>(fl.by_dim[d - 1].size()); ++idx)
        if (!fl.by_dim[d - 1][idx].test(0)) descend(descend, d - 1, idx);
}

// h*-vector via the half-open pulling triangulation.
inline HStarData hstar_data(const Polytope& p) {
    HStarData out;
    int d = p.dim;
    if (d <= 0) {
        out.hstar = {Int(1)};
        out.volume = 1;
        out.simplices = 1;
        return out;
    }
    if (p.chart.denom != 1) throw std::invalid_argument("lattice chart required for h*");
    out.hstar.assign(d + 2, Int(0));

    // symbolically perturbed interior point: vertex centroid, homogenized
    int nv = static_cast<int>(p.n_vertices());
    ZVec qrow(d + 1, Int(0));
    for (const auto& x : p.vx)
        for (int j = 0; j < d; ++j) qrow[j] += x[j];
    qrow[d] = nv;

    pulling_triangulation(p, [&](const std::vector<int>& simplex) {
        int n = d + 1;
        ZMat w(n, ZVec(n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) w[i][j] = p.vx[simplex[i]][j];
            w[i][d] = 1;
        }
        ZMat adj;
        Int det = ffgj_adjugate(w, &adj);
        if (det == 0) throw geometry_error("degenerate simplex in pulling triangulation");
        int sign = det > 0 ? 1 : -1;
        Int n_abs = abs(det);
        out.volume += n_abs;
        ++out.simplices;

        // excluded facets: negative symbolic barycentric coordinate of q
        std::vector<bool> excl(n, false);
        int nexcl = 0;
        for (int j = 0; j < n; ++j) {
            Int s = 0;
            for (int t = 0; t < n; ++t) s += qrow[t] * adj[t][j];
            if (sign < 0) s = -s;
            int sg = sgn(s);
            for (int t = 0; t < d && sg == 0; ++t) {
                Int e = sign < 0 ? Int(-adj[t][j]) : adj[t][j];
                sg = sgn(e);
            }
            if (sg == 0) throw geometry_error("simplex exclusion sign undecided");
            if (sg < 0) { excl[j] = true; ++nexcl; }
        }

        if (n_abs == 1) {
            out.hstar[nexcl] += 1;
            return;
        }

        long long nn = to_ll(n_abs);
        // generators of (Z^n W^{-1}) / Z^n, scaled by nn
        std::vector<std::vector<long long>> gens;
        for (int i = 0; i < n; ++i) {
            std::vector<long long> g(n);
            bool zero = true;
            for (int j = 0; j < n; ++j) {
                Int e = sign < 0 ? Int(-adj[i][j]) : adj[i][j];
                Int r = e % n_abs;
                if (r < 0) r += n_abs;
                g[j] = to_ll(r);
                if (g[j]) zero = false;
            }
            if (!zero) gens.push_back(std::move(g));
        }
        std::unordered_set<std::vector<long long>, detail::HVecHash> seen;
        std::vector<std::vector<long long>> elems;
        elems.push_back(std::vector<long long>(n, 0));
        seen.insert(elems[0]);
        for (const auto& g : gens) {
            if (seen.count(g)) continue;
            size_t base = elems.size();
            // add k*g to everything until closure
            std::vector<long long> mult = g;
            while (true) {
                bool added = false;
                for (size_t i = 0; i < base; ++i) {
                    std::vector<long long> e(n);
                    for (int j = 0; j < n; ++j) {
                        e[j] = elems[i][j] + mult[j];
                        if (e[j] >= nn) e[j] -= nn;
                    }
                    if (seen.insert(e).second) {
                        elems.push_back(std::move(e));
                        added = true;
                    }
                }
                if (!added) break;
                for (int j = 0; j < n; ++j) {
                    mult[j] += g[j];
                    if (mult[j] >= nn) mult[j] -= nn;
                }
                if (static_cast<long long>(elems.size()) > nn) throw geometry_error("box group overflow");
            }
        }
        if (static_cast<long long>(elems.size()) != nn)
            throw geometry_error("box group order mismatch");
        for (const auto& t : elems) {
            long long hsum = 0;
            for (int j = 0; j < n; ++j) {
                long long tj = t[j];
                if (tj == 0 && excl[j]) tj = nn;
                hsum += tj;
            }
            if (hsum % nn != 0) throw geometry_error("box point height not integral");
            out.hstar[static_cast<size_t>(hsum / nn)] += 1;
        }
    });

    Int total = 0;
    for (const auto& h : out.hstar) total += h;
    if (total != out.volume) throw geometry_error("h* does not sum to the normalized volume");
    if (out.hstar[0] != 1) throw geometry_error("h*_0 != 1");
    return out;
}

inline Int normalized_volume(const Polytope& p) { return hstar_data(p).volume; }

struct EhrhartData {
    EhrhartPolynomial poly;
    Int volume = 0;             // d! * leading coefficient, cross-checked
    std::vector<Int> counts;    // counts used or checked, indexed by dilation
    std::vector<Int> hstar;     // present on the h* route
    bool via_counts = false;
};

struct EhrhartOptions {
    long long enum_budget = kEnumerationBudget;
    int force_route = 0;  // 0 auto, 1 counts, 2 hstar
};

inline EhrhartData ehrhart(const Polytope& p, const EhrhartOptions& opt = {}) {
    EhrhartData out;
    int d = p.dim;
    if (d <= 0) {
        out.poly.coeffs = {Rat(1)};
        out.volume = 1;
        out.counts = {Int(1)};
        out.via_counts = true;
        return out;
    }

    HStarData hs = hstar_data(p);
    out.volume = hs.volume;

    bool use_counts;
    if (opt.force_route == 1)
        use_counts = true;
    else if (opt.force_route == 2)
        use_counts = false;
    else {
        double vol = hs.volume.get_d();
        double fact = 1;
        for (int i = 2; i <= d; ++i) fact *= i;
        double est = 0;
        for (int k = 0; k <= d + 1; ++k) est += vol * std::pow(static_cast<double>(k), d) / fact + 100.0;
        use_counts = est <= static_cast<double>(opt.enum_budget);
    }

    if (use_counts) {
        out.via_counts = true;
        out.counts.resize(d + 2);
        for (int k = 0; k <= d + 1; ++k) out.counts[k] = int_of(count_lattice_points_x(p, k));
        // Newton forward differences on counts at 0..d
        std::vector<Rat> diff(d + 1);
        for (int i = 0; i <= d; ++i) diff[i] = Rat(out.counts[i]);
        QMat deltas;  // deltas[j] = j-th forward difference at 0
        QVec row = diff;
        deltas.push_back(row);
        for (int j = 1; j <= d; ++j) {
            QVec nxt(row.size() - 1);
            for (size_t i = 0; i + 1 < row.size(); ++i) nxt[i] = row[i + 1] - row[i];
            row = nxt;
            deltas.push_back(row);
        }
        QVec coeffs(d + 1, Rat(0));
        for (int j = 0; j <= d; ++j) {
            // Δ^j c_0 * C(m, j)
            QVec term = detail::binom_poly(0, j);
            for (size_t i = 0; i < term.size(); ++i) coeffs[i] += deltas[j][0] * term[i];
        }
        out.poly.coeffs = std::move(coeffs);
        if (out.poly.eval(Int(d + 1)) != Rat(out.counts[d + 1]))
            throw geometry_error("Ehrhart validation at d+1 failed");
    } else {
        out.hstar = hs.hstar;
        QVec coeffs(d + 1, Rat(0));
        for (int j = 0; j < static_cast<int>(hs.hstar.size()); ++j) {
            if (hs.hstar[j] == 0) continue;
            QVec term = detail::binom_poly(d - j, d);
            for (size_t i = 0; i < term.size(); ++i) coeffs[i] += Rat(hs.hstar[j]) * term[i];
        }
        out.poly.coeffs = std::move(coeffs);
        // cheap independent validation by enumeration at low dilations
        for (long long k = 1; k <= 2; ++k) {
            double vol = hs.volume.get_d();
            double fact = 1;
            for (int i = 2; i <= d; ++i) fact *= i;
            double est = vol * std::pow(static_cast<double>(k), d) / fact + 100.0;
            if (est > static_cast<double>(opt.enum_budget)) break;
            if (out.poly.eval_count(k) != int_of(count_lattice_points_x(p, k)))
                throw geometry_error("h* Ehrhart disagrees with enumeration");
            if (out.counts.size() < static_cast<size_t>(k + 1)) out.counts.resize(k + 1);
            out.counts[k] = out.poly.eval_count(k);
        }
    }

    if (out.poly.eval(Int(0)) != 1) throw geometry_error("E(0) != 1");
    // leading coefficient times d! must equal the triangulation volume
    Rat lead = out.poly.leading();
    Rat fact = 1;
    for (int i = 2; i <= d; ++i) fact *= i;
    if (lead * fact != Rat(hs.volume)) throw geometry_error("volume vs Ehrhart leading coefficient mismatch");
    // integrality through d+2
    for (int k = 0; k <= d + 2; ++k) (void)out.poly.eval_count(k);
    return out;
}

}  // namespace mfp
