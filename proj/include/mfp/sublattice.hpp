#pragma once

// Sublattices of Z^D given by generating sets, with exact membership via
// Hermite normal form. These are the lattices ZS spanned by the tuple vectors
// of a matching field; Ehrhart counts and normality are taken relative to them.

#include "mfp/linalg.hpp"

#include <optional>

namespace mfp {

class SubLattice {
public:
    SubLattice() = default;

    static SubLattice span_of(ZMat generators, int ambient) {
        SubLattice l;
        l.ambient_ = ambient;
        l.gens_ = generators;
        l.hnf_ = hnf(std::move(generators));
        return l;
    }

    static SubLattice standard(int ambient) {
        ZMat id(ambient, ZVec(ambient, Int(0)));
        for (int i = 0; i < ambient; ++i) id[i][i] = 1;
        return span_of(std::move(id), ambient);
    }

    int ambient() const { return ambient_; }
    int rank() const { return hnf_.rank(); }
    const ZMat& basis() const { return hnf_.basis; }
    const ZMat& generators() const { return gens_; }

    bool contains(const ZVec& v) const { return hnf_.contains(v); }

    // Coordinates of v in the HNF basis, if v lies in the lattice.
    std::optional<ZVec> coordinates(const ZVec& v) const { return hnf_.coordinates(v); }

    ZVec from_coordinates(const ZVec& y) const {
        ZVec v(ambient_, Int(0));
        for (size_t i = 0; i < y.size(); ++i)
            if (y[i] != 0)
                for (int j = 0; j < ambient_; ++j) v[j] += y[i] * hnf_.basis[i][j];
        return v;
    }

    // Z^D intersected with the rational span: the saturation of this lattice.
    SubLattice saturation() const { return span_of(saturated_span_lattice(hnf_.basis), ambient_); }

    bool operator==(const SubLattice& o) const {
        return ambient_ == o.ambient_ && hnf_.basis == o.hnf_.basis;
    }

private:
    int ambient_ = 0;
    ZMat gens_;
    Hnf hnf_;
};

}  // namespace mfp
