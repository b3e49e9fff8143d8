#pragma once

// Exact linear algebra: rational Gaussian elimination, integer Hermite normal
// form, integer kernels, and fraction-free Gauss-Jordan (Bareiss) determinant
// and adjugate with machine-integer fast paths.

#include "mfp/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

namespace mfp {

// ---------------------------------------------------------------------------
// Rational elimination

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(QMat& m) {
    std::vector<int> pivots;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        Rat inv = m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

inline int rank_q(QMat m) { return static_cast<int>(rref(m).size()); }

// Basis of {y : A y = 0} (right kernel), rows of the result.
inline QMat right_kernel(QMat a) {
    size_t cols = a.empty() ? 0 : a[0].size();
    auto pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    QMat basis;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        QVec v(cols, Rat(0));
        v[fc] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Incremental rank tracker over Q (used for affine dimension and face dims).

class RankTracker {
public:
    explicit RankTracker(size_t dim) : dim_(dim) {}

    // Returns true if v was independent of the rows seen so far.
    bool add(QVec v) {
        for (auto& [piv, row] : rows_) {
            if (v[piv] == 0) continue;
            Rat f = v[piv];
            for (size_t j = 0; j < dim_; ++j) v[j] -= f * row[j];
        }
        for (size_t j = 0; j < dim_; ++j) {
            if (v[j] != 0) {
                Rat inv = v[j];
                for (size_t t = 0; t < dim_; ++t) v[t] /= inv;
                rows_.emplace_back(j, std::move(v));
                return true;
            }
        }
        return false;
    }

    bool add(const ZVec& v) { return add(q_of_z(v)); }

    int rank() const { return static_cast<int>(rows_.size()); }

private:
    size_t dim_;
    std::vector<std::pair<size_t, QVec>> rows_;
};

// ---------------------------------------------------------------------------
// Hermite normal form (row style)

struct Hnf {
    ZMat basis;               // echelon basis of the row lattice
    std::vector<int> pivots;  // pivot column of each basis row

    int rank() const { return static_cast<int>(basis.size()); }

    // Expresses v in the basis; nullopt if v is outside the lattice.
    std::optional<ZVec> coordinates(ZVec v) const {
        ZVec coeff(basis.size(), Int(0));
        for (size_t i = 0; i < basis.size(); ++i) {
            int c = pivots[i];
            if (v[c] % basis[i][c] != 0) return std::nullopt;
            Int q = v[c] / basis[i][c];
            if (q != 0)
                for (size_t j = 0; j < v.size(); ++j) v[j] -= q * basis[i][j];
            coeff[i] = q;
        }
        for (const auto& x : v)
            if (x != 0) return std::nullopt;
        return coeff;
    }

    bool contains(const ZVec& v) const { return coordinates(v).has_value(); }
};

// Row HNF of the lattice generated by the rows of a.
// echelon_cols limits pivot search to the first echelon_cols columns
// (used for kernel extraction); -1 means all columns.
inline Hnf hnf(ZMat a, int echelon_cols = -1) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    size_t limit = echelon_cols < 0 ? cols : static_cast<size_t>(echelon_cols);
    size_t r = 0;
    std::vector<int> pivots;
    for (size_t c = 0; c < limit && r < rows; ++c) {
        while (true) {
            size_t best = rows;
            for (size_t i = r; i < rows; ++i)
                if (a[i][c] != 0 && (best == rows || cmp(abs(a[i][c]), abs(a[best][c])) < 0)) best = i;
            if (best == rows) break;
            std::swap(a[r], a[best]);
            bool others = false;
            for (size_t i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
                if (a[i][c] != 0) others = true;
            }
            if (!others) break;
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0)
            for (size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
        for (size_t i = 0; i < r; ++i) {
            if (a[i][c] == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
            if (q != 0)
                for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    Hnf h;
    h.basis.assign(a.begin(), a.begin() + r);
    h.pivots = std::move(pivots);
    return h;
}

// Basis of {z : A z = 0} over the integers (a saturated lattice).
inline ZMat integer_kernel(const ZMat& a) {
    size_t m = a.size();
    size_t n = m ? a[0].size() : 0;
    if (n == 0) return {};
    // Rows of [A^T | I]; echelonize over the first m columns only.
    ZMat aug(n, ZVec(m + n, Int(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < m; ++j) aug[i][j] = a[j][i];
        aug[i][m + i] = 1;
    }
    size_t rows = n, cols = m + n;
    size_t r = 0;
    for (size_t c = 0; c < m && r < rows; ++c) {
        while (true) {
            size_t best = rows;
            for (size_t i = r; i < rows; ++i)
                if (aug[i][c] != 0 && (best == rows || cmp(abs(aug[i][c]), abs(aug[best][c])) < 0)) best = i;
            if (best == rows) break;
            std::swap(aug[r], aug[best]);
            bool others = false;
            for (size_t i = r + 1; i < rows; ++i) {
                if (aug[i][c] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), aug[i][c].get_mpz_t(), aug[r][c].get_mpz_t());
                for (size_t j = 0; j < cols; ++j) aug[i][j] -= q * aug[r][j];
                if (aug[i][c] != 0) others = true;
            }
            if (!others) break;
        }
        if (aug[r][c] != 0) ++r;
    }
    ZMat kernel;
    for (size_t i = r; i < rows; ++i) {
        bool zero = true;
        for (size_t j = 0; j < m; ++j)
            if (aug[i][j] != 0) { zero = false; break; }
        assert(zero);
        kernel.emplace_back(aug[i].begin() + m, aug[i].end());
    }
    return kernel;
}

// Basis of Z^n intersected with the rational row span of w (the saturation).
inline ZMat saturated_span_lattice(const ZMat& w) {
    size_t n = w.empty() ? 0 : w[0].size();
    QMat wq(w.size(), QVec(n));
    for (size_t i = 0; i < w.size(); ++i) wq[i] = q_of_z(w[i]);
    QMat ker = right_kernel(wq);  // y with W y = 0; span(W) = {x : x . y = 0 for all such y}
    ZMat eqs;
    for (auto& row : ker) {
        Int den;
        ZVec zi = z_of_q_cleared(row, den);
        make_primitive(zi);
        eqs.push_back(std::move(zi));
    }
    if (eqs.empty()) {
        ZMat id(n, ZVec(n, Int(0)));
        for (size_t i = 0; i < n; ++i) id[i][i] = 1;
        return id;
    }
    return integer_kernel(eqs);
}

// ---------------------------------------------------------------------------
// Fraction-free Gauss-Jordan: determinant and adjugate.
//
// Works over a machine-integer type with checked arithmetic and escalates to
// GMP integers on overflow. For a nonsingular W the right block of the swept
// [W | I] ends as adj(W) and the diagonal as det(W).

namespace detail {

template <class T>
struct ffops;

template <>
struct ffops<long long> {
    static long long mul(long long a, long long b) { return checked_mul(a, b); }
    static long long sub(long long a, long long b) {
        long long r;
        if (__builtin_sub_overflow(a, b, &r)) throw arithmetic_overflow{};
        return r;
    }
    static long long div_exact(long long a, long long b) {
        assert(b != 0 && a % b == 0);
        return a / b;
    }
};

template <>
struct ffops<__int128> {
    static __int128 mul(__int128 a, __int128 b) {
        __int128 r;
        if (__builtin_mul_overflow(a, b, &r)) throw arithmetic_overflow{};
        return r;
    }
    static __int128 sub(__int128 a, __int128 b) {
        __int128 r;
        if (__builtin_sub_overflow(a, b, &r)) throw arithmetic_overflow{};
        return r;
    }
    static __int128 div_exact(__int128 a, __int128 b) {
        assert(b != 0 && a % b == 0);
        return a / b;
    }
};

template <>
struct ffops<Int> {
    static Int mul(const Int& a, const Int& b) { return a * b; }
    static Int sub(const Int& a, const Int& b) { return a - b; }
    static Int div_exact(const Int& a, const Int& b) {
        Int q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
};

template <class T>
Int to_big(T v) {
    if constexpr (std::is_same_v<T, Int>) {
        return v;
    } else if constexpr (std::is_same_v<T, __int128>) {
        bool neg = v < T(0);
        unsigned __int128 a = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
        Int big(static_cast<unsigned long>(a >> 64));
        big <<= 64;
        big += Int(static_cast<unsigned long>(a));
        return neg ? Int(-big) : big;
    } else {
        return Int(static_cast<long>(v));
    }
}

template <class T>
bool ffgj_adjugate_t(const ZMat& w, Int& det_out, ZMat* adj_out) {
    size_t n = w.size();
    size_t width = adj_out ? 2 * n : n;
    std::vector<std::vector<T>> m(n, std::vector<T>(width, T(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if constexpr (std::is_same_v<T, Int>)
                m[i][j] = w[i][j];
            else
                m[i][j] = static_cast<T>(to_ll(w[i][j]));
        }
        if (adj_out) m[i][n + i] = T(1);
    }
    int sign = 1;
    T prev = T(1);
    for (size_t k = 0; k < n; ++k) {
        size_t piv = n;
        for (size_t r = k; r < n; ++r)
            if (m[r][k] != T(0)) { piv = r; break; }
        if (piv == n) { det_out = 0; return false; }
        if (piv != k) { std::swap(m[piv], m[k]); sign = -sign; }
        T p = m[k][k];
        size_t lo = adj_out ? 0 : k + 1;  // plain Bareiss for det, full sweep for adjugate
        for (size_t i = lo; i < n; ++i) {
            if (i == k) continue;
            T q = m[i][k];
            for (size_t j = k + 1; j < width; ++j)
                m[i][j] = ffops<T>::div_exact(
                    ffops<T>::sub(ffops<T>::mul(p, m[i][j]), ffops<T>::mul(q, m[k][j])), prev);
            m[i][k] = T(0);
        }
        prev = p;
    }
    Int d = to_big(m[n - 1][n - 1]);
    det_out = sign > 0 ? d : Int(-d);
    if (adj_out) {
        // right block now holds det(w) * w^{-1} up to the swap sign
        adj_out->assign(n, ZVec(n, Int(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Int big = to_big(m[i][n + j]);
                (*adj_out)[i][j] = sign > 0 ? big : Int(-big);
            }
    }
    return true;
}

}  // namespace detail

// det(w); returns 0 for singular input. adj_out, when non-null, receives
// adj(w) = det(w) * w^{-1}.
inline Int ffgj_adjugate(const ZMat& w, ZMat* adj_out = nullptr) {
    Int det;
    try {
        detail::ffgj_adjugate_t<long long>(w, det, adj_out);
        return det;
    } catch (const arithmetic_overflow&) {}
    try {
        detail::ffgj_adjugate_t<__int128>(w, det, adj_out);
        return det;
    } catch (const arithmetic_overflow&) {}
    detail::ffgj_adjugate_t<Int>(w, det, adj_out);
    return det;
}

inline Int det_z(const ZMat& w) { return ffgj_adjugate(w, nullptr); }

}  // namespace mfp
