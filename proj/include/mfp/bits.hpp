#pragma once

// Small dynamic bitset used for vertex sets and incidence rows.

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace mfp {

struct Bits {
    std::vector<uint64_t> w;
    int n = 0;

    Bits() = default;
    explicit Bits(int bits) : w((bits + 63) / 64, 0), n(bits) {}

    void set(int i) { w[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { w[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (auto x : w) c += __builtin_popcountll(x);
        return c;
    }

    bool subset_of(const Bits& o) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }

    Bits operator&(const Bits& o) const {
        Bits r(n);
        for (size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] & o.w[i];
        return r;
    }

    Bits operator|(const Bits& o) const {
        Bits r(n);
        for (size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] | o.w[i];
        return r;
    }

    void operator&=(const Bits& o) {
        for (size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
    }

    bool operator==(const Bits& o) const { return n == o.n && w == o.w; }
    bool operator<(const Bits& o) const { return w < o.w; }

    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }

    template <class F>
    void for_each(F&& f) const {
        for (size_t k = 0; k < w.size(); ++k) {
            uint64_t x = w[k];
            while (x) {
                int b = __builtin_ctzll(x);
                f(static_cast<int>(k * 64 + b));
                x &= x - 1;
            }
        }
    }

    std::vector<int> members() const {
        std::vector<int> out;
        for_each([&](int i) { out.push_back(i); });
        return out;
    }
};

struct BitsHash {
    size_t operator()(const Bits& b) const {
        size_t h = 1469598103934665603ull;
        for (auto x : b.w) h = (h ^ x) * 1099511628211ull;
        return h;
    }
};

}  // namespace mfp
