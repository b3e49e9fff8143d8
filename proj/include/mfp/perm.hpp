#pragma once

// Permutations in one-line notation with the pattern machinery used by the
// mutation-admissibility filter.

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfp {

class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> one_line) : v_(std::move(one_line)) {
        std::vector<bool> seen(v_.size() + 1, false);
        for (int x : v_) {
            if (x < 1 || x > static_cast<int>(v_.size()) || seen[x])
                throw std::invalid_argument("not a permutation of 1..n");
            seen[x] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        return Permutation(std::move(v));
    }

    static Permutation longest(int n) {  // w0 = (n, n-1, ..., 1)
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = n - i;
        return Permutation(std::move(v));
    }

    // Accepts "6,2,4,3,5,1" or compact "624351" (the latter only for n <= 9).
    static Permutation parse(const std::string& s) {
        std::vector<int> v;
        if (s.find(',') != std::string::npos) {
            std::stringstream ss(s);
            std::string tok;
            while (std::getline(ss, tok, ',')) v.push_back(std::stoi(tok));
        } else {
            for (char c : s) {
                if (c < '1' || c > '9') throw std::invalid_argument("bad permutation string: " + s);
                v.push_back(c - '0');
            }
        }
        return Permutation(std::move(v));
    }

    int size() const { return static_cast<int>(v_.size()); }
    int operator()(int i) const { return v_[i - 1]; }  // 1-based
    const std::vector<int>& one_line() const { return v_; }

    int preimage(int value) const {  // sigma^{-1}(value), 1-based
        for (int i = 0; i < size(); ++i)
            if (v_[i] == value) return i + 1;
        throw std::invalid_argument("value out of range");
    }

    long long inversions() const {
        long long c = 0;
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j)
                if (v_[i] > v_[j]) ++c;
        return c;
    }

    int sign() const { return inversions() % 2 == 0 ? 1 : -1; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (v_[i] != i + 1) return false;
        return true;
    }

    // Lexicographically smallest increasing index sequence realizing the
    // pattern pi, or nullopt. Indices are 1-based.
    std::optional<std::vector<int>> pattern_witness(const Permutation& pi) const {
        int n = size(), k = pi.size();
        if (k > n) throw std::invalid_argument("pattern longer than the permutation");
        std::vector<int> idx;
        idx.reserve(k);
        auto matches = [&](int cand) {
            for (int t = 0; t < static_cast<int>(idx.size()); ++t) {
                bool a = v_[idx[t] - 1] < v_[cand - 1];
                bool b = pi.v_[t] < pi.v_[idx.size()];
                if (a != b) return false;
            }
            return true;
        };
        std::optional<std::vector<int>> best;
        auto rec = [&](auto&& self, int start) -> bool {
            if (static_cast<int>(idx.size()) == k) {
                best = idx;
                return true;
            }
            int need = k - static_cast<int>(idx.size());
            for (int i = start; i + need - 1 <= n; ++i) {
                if (!matches(i)) continue;
                idx.push_back(i);
                if (self(self, i + 1)) return true;
                idx.pop_back();
            }
            return false;
        };
        rec(rec, 1);
        return best;
    }

    bool contains_pattern(const Permutation& pi) const { return pattern_witness(pi).has_value(); }

    // Thm criterion: free of 4123, 3124, 1423 and 1324.
    bool mutation_admissible() const {
        static const std::vector<std::vector<int>> pats = {
            {4, 1, 2, 3}, {3, 1, 2, 4}, {1, 4, 2, 3}, {1, 3, 2, 4}};
        for (const auto& p : pats)
            if (size() >= 4 && contains_pattern(Permutation(p))) return false;
        return true;
    }

    // tau = (l l+1) sigma: swaps the values l and l+1.
    Permutation swap_values(int l) const {
        if (l < 1 || l >= size()) throw std::invalid_argument("swap position out of range");
        std::vector<int> w = v_;
        for (auto& x : w) {
            if (x == l) x = l + 1;
            else if (x == l + 1) x = l;
        }
        return Permutation(std::move(w));
    }

    // Lists each block of the composition in descending order.
    static Permutation block(const std::vector<int>& comp) {
        std::vector<int> v;
        int start = 1;
        for (int a : comp) {
            if (a <= 0) throw std::invalid_argument("composition entries must be positive");
            for (int x = start + a - 1; x >= start; --x) v.push_back(x);
            start += a;
        }
        return Permutation(std::move(v));
    }

    std::string compact() const {
        std::string s;
        bool comma = size() > 9;
        for (int i = 0; i < size(); ++i) {
            if (comma && i) s += ',';
            s += std::to_string(v_[i]);
        }
        return s;
    }

    bool operator==(const Permutation& o) const { return v_ == o.v_; }
    bool operator!=(const Permutation& o) const { return v_ != o.v_; }
    bool operator<(const Permutation& o) const { return v_ < o.v_; }

private:
    std::vector<int> v_;
};

inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do out.push_back(Permutation(v));
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

}  // namespace mfp
