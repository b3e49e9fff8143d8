#pragma once

// From matching fields to polytopes: Grassmannian pieces as hulls of tuple
// vectors, partial-flag polytopes as Minkowski sums, the Gelfand-Tsetlin
// reference, scaled variants, and the product-of-simplices lattice maps.

#include "mfp/ehrhart.hpp"
#include "mfp/matchfield.hpp"

namespace mfp {

inline int ambient_dim(int n) { return (n - 1) * n; }

// Lattice ZS spanned by all tuple vectors of the matching field over K.
inline SubLattice tuple_lattice(const MatchingField& mf, const std::vector<int>& K) {
    ZMat gens;
    for (int k : K)
        for (const auto& I : mf.subsets(k)) gens.push_back(mf.tuple_vector(I));
    return SubLattice::span_of(std::move(gens), ambient_dim(mf.n));
}

// Hull of the tuple vectors of one cardinality. Tuple vectors of a fixed k
// are pairwise distinct for a well-formed field; a collision is diagnosed.
inline Polytope grassmannian_polytope(const MatchingField& mf, int k) {
    std::unordered_map<ZVec, Subset, ZVecHash> seen;
    ZMat pts;
    for (const auto& I : mf.subsets(k)) {
        ZVec v = mf.tuple_vector(I);
        auto it = seen.find(v);
        if (it != seen.end())
            throw geometry_error("tuple vector collision between {" + subset_str(it->second) +
                                 "} and {" + subset_str(I) + "}");
        seen.emplace(v, I);
        pts.push_back(std::move(v));
    }
    SubLattice zs = SubLattice::span_of(pts, ambient_dim(mf.n));
    Polytope p = hull_z(pts, &zs);
    if (p.n_vertices() != mf.subsets(k).size())
        throw geometry_error("tuple vectors of fixed cardinality must all be vertices");
    return p;
}

struct FlagContext {
    int n = 0;
    std::vector<int> K;
    MatchingField mf;
    SubLattice zs;                       // spanned by all tuple vectors, all k in K
    std::map<int, Polytope> per_k;       // Grassmannian summands
    Polytope combined;                   // Minkowski sum over K

    // lazily computed Ehrhart data, shared across copies
    struct Cache {
        std::mutex mu;
        std::unique_ptr<EhrhartData> ehr;
    };
    std::shared_ptr<Cache> cache = std::make_shared<Cache>();

    const EhrhartData& ehrhart_data(const EhrhartOptions& opt = {}) const {
        std::lock_guard<std::mutex> lk(cache->mu);
        if (!cache->ehr) cache->ehr = std::make_unique<EhrhartData>(ehrhart(combined, opt));
        return *cache->ehr;
    }
};

// Pairwise vertex sums of two polytopes, deduplicated.
inline std::vector<QVec> minkowski_candidates(const std::vector<QVec>& a, const std::vector<QVec>& b) {
    std::unordered_set<QVec, QVecHash> dedup;
    std::vector<QVec> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            QVec s(x.size());
            for (size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
            if (dedup.insert(s).second) out.push_back(std::move(s));
        }
    return out;
}

inline Polytope minkowski(const Polytope& a, const Polytope& b, const SubLattice* lattice = nullptr) {
    if (a.ambient != b.ambient) throw std::invalid_argument("Minkowski sum needs equal ambient dimensions");
    return hull(minkowski_candidates(a.verts, b.verts), lattice);
}

inline FlagContext flag_polytope(const MatchingField& mf, const std::vector<int>& K) {
    if (K.empty()) throw std::invalid_argument("K must be nonempty");
    for (int k : K)
        if (std::find(mf.cards.begin(), mf.cards.end(), k) == mf.cards.end())
            throw std::invalid_argument("matching field does not cover k=" + std::to_string(k));
    FlagContext ctx;
    ctx.n = mf.n;
    ctx.K = K;
    ctx.mf = mf;
    ctx.zs = tuple_lattice(mf, K);
    std::vector<QVec> sums;
    for (int k : K) {
        Polytope pk = grassmannian_polytope(mf, k);
        sums = sums.empty() ? pk.verts : minkowski_candidates(sums, pk.verts);
        ctx.per_k.emplace(k, std::move(pk));
    }
    ctx.combined = hull(std::move(sums), &ctx.zs);
    return ctx;
}

inline FlagContext gt_polytope(int n, const std::vector<int>& K) {
    return flag_polytope(bsigma(Permutation::longest(n), K), K);
}

// Minkowski sum of lambda_k copies of each Grassmannian piece.
inline Polytope scaled_polytope(const MatchingField& mf, const std::vector<long long>& lambda) {
    int n = mf.n;
    if (static_cast<int>(lambda.size()) != n - 1)
        throw std::invalid_argument("lambda must have n-1 entries");
    std::vector<int> kpos;
    for (int k = 1; k <= n - 1; ++k) {
        if (lambda[k - 1] < 0) throw std::invalid_argument("lambda must be nonnegative");
        if (lambda[k - 1] > 0) kpos.push_back(k);
    }
    if (kpos.empty()) {
        std::vector<QVec> origin{QVec(ambient_dim(n), Rat(0))};
        return hull(origin);
    }
    SubLattice zs = tuple_lattice(mf, kpos);
    std::vector<QVec> sums;
    for (int k : kpos) {
        Polytope pk = grassmannian_polytope(mf, k);
        std::vector<QVec> scaled;
        for (const auto& v : pk.verts) {
            QVec s(v.size());
            for (size_t i = 0; i < v.size(); ++i) s[i] = v[i] * Rat(int_of(lambda[k - 1]));
            scaled.push_back(std::move(s));
        }
        sums = sums.empty() ? scaled : minkowski_candidates(sums, scaled);
    }
    return hull(std::move(sums), &zs);
}

// Product-of-simplices data for the toric-subvariety construction: the facet
// matrix B, offset rho, grading matrix D, and the lattice map whose columns
// are the tuple vectors.
struct LatticeMapData {
    int n = 0;
    std::vector<int> K;
    std::vector<Subset> plucker_order;  // by (k, colex)
    ZMat phi;                           // (n-1)n x (sum C(n,k)) columns = tuple vectors
    ZMat b_matrix;                      // facet normals of the product of simplices
    ZVec rho;
    ZMat d_matrix;                      // grading: block rows of ones
    ZVec d_rho;                         // D * rho

    // Vertex matrix of the product of simplices, embedded by x -> Bx + rho:
    // one column per choice of a vertex in each simplex factor, columns
    // ordered with the earlier cardinality as the outer loop.
    ZMat vertex_matrix() const {
        const std::vector<size_t>& sizes = block_sizes;
        size_t total_cols = 1;
        for (auto s : sizes) total_cols *= s;
        size_t rows = 0;
        for (auto s : sizes) rows += s;
        ZMat v(rows, ZVec(total_cols, Int(0)));
        for (size_t col = 0; col < total_cols; ++col) {
            size_t rem = col;
            size_t div = total_cols;
            size_t row_base = 0;
            for (size_t t = 0; t < sizes.size(); ++t) {
                div /= sizes[t];
                size_t choice = rem / div;
                rem %= div;
                v[row_base + choice][col] = 1;
                row_base += sizes[t];
            }
        }
        return v;
    }

    ZMat image_vertex_matrix() const {
        ZMat v = vertex_matrix();
        size_t rows = phi.size(), cols = v[0].size(), inner = v.size();
        ZMat out(rows, ZVec(cols, Int(0)));
        for (size_t i = 0; i < rows; ++i)
            for (size_t t = 0; t < inner; ++t) {
                if (phi[i][t] == 0) continue;
                for (size_t j = 0; j < cols; ++j)
                    if (v[t][j] != 0) out[i][j] += phi[i][t] * v[t][j];
            }
        return out;
    }

    std::vector<size_t> block_sizes;  // C(n,k) per k in K order
};

inline LatticeMapData phi_hat(const MatchingField& mf, const std::vector<int>& K) {
    LatticeMapData d;
    d.n = mf.n;
    d.K = K;
    int amb = ambient_dim(mf.n);
    size_t total = 0;
    for (int k : K) {
        const auto& subs = mf.subsets(k);
        d.block_sizes.push_back(subs.size());
        for (const auto& I : subs) d.plucker_order.push_back(I);
        total += subs.size();
    }
    d.phi.assign(amb, ZVec(total, Int(0)));
    size_t col = 0;
    for (int k : K)
        for (const auto& I : mf.subsets(k)) {
            ZVec v = mf.tuple_vector(I);
            for (int r = 0; r < amb; ++r)
                if (v[r] != 0) d.phi[r][col] = v[r];
            ++col;
        }
    // B = direct sum of J_{m_k - 1}, rho = (0,..,0,1) per block, D = block ones
    size_t bcols = total - K.size();
    d.b_matrix.assign(total, ZVec(bcols, Int(0)));
    d.rho.assign(total, Int(0));
    d.d_matrix.assign(K.size(), ZVec(total, Int(0)));
    size_t r0 = 0, c0 = 0;
    for (size_t t = 0; t < d.block_sizes.size(); ++t) {
        size_t mk = d.block_sizes[t];
        for (size_t i = 0; i + 1 < mk; ++i) d.b_matrix[r0 + i][c0 + i] = 1;
        for (size_t i = 0; i + 1 < mk; ++i) d.b_matrix[r0 + mk - 1][c0 + i] = -1;
        d.rho[r0 + mk - 1] = 1;
        for (size_t i = 0; i < mk; ++i) d.d_matrix[t][r0 + i] = 1;
        r0 += mk;
        c0 += mk - 1;
    }
    d.d_rho.assign(K.size(), Int(0));
    for (size_t t = 0; t < K.size(); ++t)
        for (size_t i = 0; i < total; ++i) d.d_rho[t] += d.d_matrix[t][i] * d.rho[i];
    return d;
}

}  // namespace mfp
