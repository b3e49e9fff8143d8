#pragma once

// Plucker indices: nonempty proper subsets of [n], kept strictly increasing.
// The global ordering is by cardinality, then colexicographic.

#include <stdexcept>
#include <string>
#include <vector>

namespace mfp {

using Subset = std::vector<int>;  // strictly increasing, 1-based

inline void validate_subset(const Subset& s, int n) {
    if (s.empty() || static_cast<int>(s.size()) >= n)
        throw std::invalid_argument("index must be a nonempty proper subset");
    int prev = 0;
    for (int x : s) {
        if (x <= prev || x > n) throw std::invalid_argument("index not strictly increasing in [n]");
        prev = x;
    }
}

inline bool colex_less(const Subset& a, const Subset& b) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// All k-subsets of [n] in colexicographic order.
inline std::vector<Subset> subsets_colex(int n, int k) {
    std::vector<Subset> out;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i + 1;
    while (true) {
        out.push_back(c);
        int i = 0;
        while (i < k && ((i + 1 < k && c[i] + 1 == c[i + 1]) || (i + 1 == k && c[i] == n))) ++i;
        if (i == k) break;
        ++c[i];
        for (int j = 0; j < i; ++j) c[j] = j + 1;
    }
    return out;
}

inline std::string subset_str(const Subset& s) {
    std::string out;
    bool comma = false;
    for (int x : s) {
        if (x > 9) comma = true;
    }
    for (size_t i = 0; i < s.size(); ++i) {
        if (comma && i) out += ',';
        out += std::to_string(s[i]);
    }
    return out;
}

}  // namespace mfp
