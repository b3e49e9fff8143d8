#pragma once

// Matching fields: assignments of a permutation to every k-subset, their
// inducing weight matrices, coherence verification, Plucker weight vectors,
// and the tuple vectors that become polytope vertices.

#include "mfp/numeric.hpp"
#include "mfp/perm.hpp"
#include "mfp/plucker.hpp"

#include <map>
#include <sstream>

namespace mfp {

// Non-coherence: some subset admits two minimizing permutations.
struct non_coherent_error : std::runtime_error {
    Subset subset;
    Permutation first, second;
    non_coherent_error(Subset s, Permutation a, Permutation b)
        : std::runtime_error("weight matrix does not induce a matching field: tie on subset {" +
                             subset_str(s) + "}"),
          subset(std::move(s)),
          first(std::move(a)),
          second(std::move(b)) {}
};

struct WeightMatrix {
    int n = 0;
    QMat rows;  // (n-1) x n

    static WeightMatrix zero(int n) {
        WeightMatrix m;
        m.n = n;
        m.rows.assign(n - 1, QVec(n, Rat(0)));
        return m;
    }
};

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Inducing matrix of B^sigma: rows 0, sigma, then N^{r}(n, n-1, ..., 1).
inline WeightMatrix weight_matrix_bsigma(const Permutation& sigma, long long big_n) {
    int n = sigma.size();
    if (big_n < n + 1) throw std::invalid_argument("scale must be at least n+1");
    WeightMatrix m = WeightMatrix::zero(n);
    if (n >= 2)
        for (int j = 1; j <= n; ++j) m.rows[1][j - 1] = Rat(sigma(j));
    Int pw = 1;
    for (int i = 2; i <= n - 2; ++i) {
        pw *= int_of(big_n);
        for (int j = 1; j <= n; ++j) m.rows[i][j - 1] = Rat(pw * (n + 1 - j));
    }
    return m;
}

// Scaled-second-row family: rows 0, c*sigma, then p^r(n, ..., 1).
inline WeightMatrix weight_matrix_c(const Permutation& sigma, long long c, long long p) {
    int n = sigma.size();
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (p < n + 1) throw std::invalid_argument("p must be at least n+1");
    if (c < 1 || c % p == 0) throw std::invalid_argument("c must be positive and coprime to p");
    WeightMatrix m = WeightMatrix::zero(n);
    if (n >= 2)
        for (int j = 1; j <= n; ++j) m.rows[1][j - 1] = Rat(int_of(c * sigma(j)));
    Int pw = 1;
    for (int i = 2; i <= n - 2; ++i) {
        pw *= int_of(p);
        for (int j = 1; j <= n; ++j) m.rows[i][j - 1] = Rat(pw * (n + 1 - j));
    }
    return m;
}

inline long long default_prime(int n) {
    long long p = n + 1;
    while (!is_prime(p)) ++p;
    return p;
}

struct Provenance {
    enum Kind { FromMatrix, BSigma, BSigmaC, Block, Explicit } kind = Explicit;
    Permutation sigma;           // BSigma / BSigmaC
    long long c = 0, p = 0;      // BSigmaC
    std::vector<int> block_comp; // Block
    std::string describe() const {
        switch (kind) {
            case BSigma: return "bsigma(" + sigma.compact() + ")";
            case BSigmaC:
                return "bsigma_c(" + sigma.compact() + ",c=" + std::to_string(c) +
                       ",p=" + std::to_string(p) + ")";
            case Block: {
                std::string s = "block(";
                for (size_t i = 0; i < block_comp.size(); ++i)
                    s += (i ? "," : "") + std::to_string(block_comp[i]);
                return s + ")";
            }
            case FromMatrix: return "from_matrix";
            default: return "explicit";
        }
    }
};

class MatchingField {
public:
    int n = 0;
    std::vector<int> cards;  // K, ascending
    Provenance prov;
    std::optional<WeightMatrix> matrix;  // certificate of coherence when present

    const std::vector<Subset>& subsets(int k) const { return subsets_.at(k); }

    const Permutation& at(const Subset& I) const {
        int k = static_cast<int>(I.size());
        const auto& subs = subsets_.at(k);
        const auto& asg = assign_.at(k);
        for (size_t i = 0; i < subs.size(); ++i)
            if (subs[i] == I) return asg[i];
        throw std::invalid_argument("subset not in the matching field domain");
    }

    const Permutation& at_index(int k, size_t colex_idx) const { return assign_.at(k)[colex_idx]; }

    bool coherent() const { return matrix.has_value(); }

    // 0/1 matrix point in Z^{(n-1) x n}, row-major: one in row i, column
    // j_{Lambda(I)(i)} for i = 1..k.
    ZVec tuple_vector(const Subset& I) const {
        int k = static_cast<int>(I.size());
        const Permutation& perm = at(I);
        ZVec v((n - 1) * n, Int(0));
        for (int i = 1; i <= k; ++i) {
            int col = I[perm(i) - 1];
            v[(i - 1) * n + (col - 1)] = 1;
        }
        return v;
    }

    int sign_of(const Subset& I) const { return at(I).sign(); }

    // Degree check: every monomial point must use rows 1..k exactly once.
    bool check_grading() const {
        for (int k : cards)
            for (const auto& I : subsets(k)) {
                ZVec v = tuple_vector(I);
                if (!grading_ok(v, static_cast<int>(I.size()))) return false;
            }
        return true;
    }

    bool grading_ok(const ZVec& point, int k) const {
        for (int r = 0; r < n - 1; ++r) {
            Int s = 0;
            for (int j = 0; j < n; ++j) s += point[r * n + j];
            if (s != ((r < k) ? 1 : 0)) return false;
        }
        return true;
    }

    bool same_assignment(const MatchingField& o) const {
        return n == o.n && cards == o.cards && assign_ == o.assign_;
    }

    friend MatchingField induce(const WeightMatrix& m, const std::vector<int>& K);
    friend MatchingField bsigma(const Permutation& sigma, const std::vector<int>& K);
    friend MatchingField bsigma_c(const Permutation& sigma, long long c, long long p,
                                  const std::vector<int>& K);
    friend MatchingField block_field(const std::vector<int>& comp, const std::vector<int>& K);
    friend MatchingField explicit_field(int n, std::map<int, std::vector<Permutation>> assign);

private:
    std::map<int, std::vector<Subset>> subsets_;
    std::map<int, std::vector<Permutation>> assign_;  // aligned with subsets_

    void fill_domains() {
        for (int k : cards) subsets_[k] = subsets_colex(n, k);
    }
};

inline std::vector<int> full_flag(int n) {
    std::vector<int> k(n - 1);
    std::iota(k.begin(), k.end(), 1);
    return k;
}

// argmin over S_k of sum_a M[a][ I[perm(a)] ]; ties are non-coherence.
inline MatchingField induce(const WeightMatrix& m, const std::vector<int>& K) {
    MatchingField f;
    f.n = m.n;
    f.cards = K;
    f.prov.kind = Provenance::FromMatrix;
    f.matrix = m;
    f.fill_domains();
    for (int k : K) {
        auto perms = all_permutations(k);
        auto& asg = f.assign_[k];
        for (const auto& I : f.subsets_[k]) {
            const Permutation* best = nullptr;
            Rat best_w;
            bool tie = false;
            const Permutation* tied = nullptr;
            for (const auto& s : perms) {
                Rat w = 0;
                for (int a = 1; a <= k; ++a) w += m.rows[a - 1][I[s(a) - 1] - 1];
                if (!best || w < best_w) {
                    best = &s;
                    best_w = w;
                    tie = false;
                } else if (w == best_w) {
                    tie = true;
                    tied = &s;
                }
            }
            if (tie) throw non_coherent_error(I, *best, *tied);
            asg.push_back(*best);
        }
    }
    return f;
}

// B^sigma: id when sigma(p) > sigma(q) or |I| = 1, the transposition (12)
// otherwise, where p < q are the two smallest elements of I.
inline MatchingField bsigma(const Permutation& sigma, const std::vector<int>& K) {
    if (K.empty()) throw std::invalid_argument("K must be nonempty");
    MatchingField f;
    f.n = sigma.size();
    f.cards = K;
    f.prov.kind = Provenance::BSigma;
    f.prov.sigma = sigma;
    f.matrix = weight_matrix_bsigma(sigma, f.n + 1);
    f.fill_domains();
    for (int k : K) {
        auto& asg = f.assign_[k];
        for (const auto& I : f.subsets_[k]) {
            if (k == 1 || sigma(I[0]) > sigma(I[1])) {
                asg.push_back(Permutation::identity(k));
            } else {
                std::vector<int> t(k);
                std::iota(t.begin(), t.end(), 1);
                std::swap(t[0], t[1]);
                asg.push_back(Permutation(std::move(t)));
            }
        }
    }
    return f;
}

inline MatchingField bsigma_c(const Permutation& sigma, long long c, long long p,
                              const std::vector<int>& K) {
    WeightMatrix m = weight_matrix_c(sigma, c, p);
    MatchingField f = induce(m, K);
    f.prov.kind = Provenance::BSigmaC;
    f.prov.sigma = sigma;
    f.prov.c = c;
    f.prov.p = p;
    return f;
}

inline MatchingField block_field(const std::vector<int>& comp, const std::vector<int>& K) {
    Permutation w = Permutation::block(comp);
    MatchingField f = bsigma(w, K);
    f.prov.kind = Provenance::Block;
    f.prov.block_comp = comp;
    f.prov.sigma = w;
    return f;
}

// Explicit assignment table (for tests and JSON input); not coherent unless
// a certifying matrix is attached separately.
inline MatchingField explicit_field(int n, std::map<int, std::vector<Permutation>> assign) {
    MatchingField f;
    f.n = n;
    for (auto& [k, v] : assign) f.cards.push_back(k);
    f.prov.kind = Provenance::Explicit;
    f.fill_domains();
    for (auto& [k, v] : assign) {
        if (v.size() != f.subsets_[k].size())
            throw std::invalid_argument("assignment size mismatch for k=" + std::to_string(k));
        f.assign_[k] = std::move(v);
    }
    return f;
}

// Weight vector entries min_{s in S_k} sum_a M[a][I[s(a)]], ordered by
// (cardinality, colex).
struct WeightVector {
    std::vector<std::pair<Subset, Rat>> entries;

    QVec values() const {
        QVec v;
        v.reserve(entries.size());
        for (const auto& e : entries) v.push_back(e.second);
        return v;
    }
};

inline WeightVector plucker_weight_vector(const WeightMatrix& m, const std::vector<int>& K) {
    WeightVector wv;
    for (int k : K) {
        auto perms = all_permutations(k);
        for (const auto& I : subsets_colex(m.n, k)) {
            bool first = true;
            Rat best;
            for (const auto& s : perms) {
                Rat w = 0;
                for (int a = 1; a <= k; ++a) w += m.rows[a - 1][I[s(a) - 1] - 1];
                if (first || w < best) {
                    best = w;
                    first = false;
                }
            }
            wv.entries.emplace_back(I, best);
        }
    }
    return wv;
}

}  // namespace mfp
