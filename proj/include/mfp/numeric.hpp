#pragma once

// Exact arithmetic primitives shared by the geometry kernel. All polytope
// computations run over arbitrary-precision rationals (GMP); hot loops use
// machine integers with overflow escalation.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfp {

using Int = mpz_class;
using Rat = mpq_class;

using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;
using ZMat = std::vector<ZVec>;
using QMat = std::vector<QVec>;

struct arithmetic_overflow : std::runtime_error {
    arithmetic_overflow() : std::runtime_error("machine integer overflow") {}
};

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw arithmetic_overflow{};
    return r;
}

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw arithmetic_overflow{};
    return r;
}

inline long long to_ll(const Int& z) {
    if (!z.fits_slong_p()) throw arithmetic_overflow{};
    return z.get_si();
}

static_assert(sizeof(long) == sizeof(long long), "LP64 assumed");

inline Int int_of(long long x) { return Int(static_cast<long>(x)); }

inline Rat rat_of(long long p, long long q) {
    Rat r{int_of(p), int_of(q)};
    r.canonicalize();
    return r;
}

// Parses "p/q" or "p". Rejects zero denominators.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    Rat r;
    if (slash == std::string::npos) {
        r = Rat(Int(s));
    } else {
        Int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
        r = Rat(num, den);
    }
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Int vec_gcd(const ZVec& v) {
    Int g = 0;
    for (const auto& x : v) {
        g = gcd(g, x);
        if (g == 1) break;
    }
    return g;
}

// Divides by the gcd of all entries; zero vectors stay zero.
inline void make_primitive(ZVec& v) {
    Int g = vec_gcd(v);
    if (g > 1)
        for (auto& x : v) x /= g;
}

inline ZVec z_of_q_cleared(const QVec& v, Int& denom_out) {
    Int lcm_den = 1;
    for (const auto& x : v) lcm_den = lcm(lcm_den, x.get_den());
    ZVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat y = v[i] * lcm_den;
        out[i] = y.get_num();
    }
    denom_out = lcm_den;
    return out;
}

inline Int dot(const ZVec& a, const ZVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dotzq(const ZVec& a, const QVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0) s += Rat(a[i]) * b[i];
    }
    return s;
}

inline QVec q_of_z(const ZVec& v) {
    QVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
    return out;
}

inline bool is_integral(const QVec& v) {
    for (const auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

inline ZVec z_of_q(const QVec& v) {
    ZVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1) throw std::invalid_argument("expected integral vector");
        out[i] = v[i].get_num();
    }
    return out;
}

struct ZVecHash {
    size_t operator()(const ZVec& v) const {
        size_t h = 1469598103934665603ull;
        for (const auto& x : v) {
            long r = mpz_get_si(x.get_mpz_t());
            h ^= static_cast<size_t>(r) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

struct QVecHash {
    size_t operator()(const QVec& v) const {
        size_t h = 1469598103934665603ull;
        for (const auto& x : v) {
            h ^= static_cast<size_t>(mpz_get_si(x.get_num().get_mpz_t())) + 0x9e3779b9ull + (h << 6) + (h >> 2);
            h ^= static_cast<size_t>(mpz_get_si(x.get_den().get_mpz_t())) + 0x85ebca6bull + (h << 5) + (h >> 3);
        }
        return h;
    }
};

inline bool lex_less(const QVec& a, const QVec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

inline bool lex_less(const ZVec& a, const ZVec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

}  // namespace mfp
