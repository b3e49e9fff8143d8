#pragma once

// Face enumeration from vertex-facet incidences. Faces are closed sets of the
// incidence closure operator; covers are found as inclusion-minimal closures
// of one-vertex extensions, so the BFS level is the face dimension.

#include "mfp/polytope.hpp"

#include <deque>

namespace mfp {

namespace detail {

struct FaceRec {
    Bits verts;
    Bits tightf;
    int dim;
};

inline FaceLattice build_face_lattice(const Polytope& p) {
    FaceLattice fl;
    int d = p.dim;
    if (d <= 0) return fl;
    int nv = static_cast<int>(p.n_vertices());
    int nf = static_cast<int>(p.n_facets());
    const auto& vtight = p.vertex_tight();
    const auto& fverts = p.facet_vertices();

    auto closure_of = [&](const Bits& tf, Bits& out_verts) {
        // vertices lying on every facet in tf
        out_verts = Bits(nv);
        for (auto& w : out_verts.w) w = ~uint64_t{0};
        if (nv % 64)
            out_verts.w.back() = (uint64_t{1} << (nv % 64)) - 1;
        bool anyf = false;
        tf.for_each([&](int f) {
            anyf = true;
            out_verts &= fverts[f];
        });
        return anyf;
    };

    struct Key {
        int dim, idx;
    };
    std::unordered_map<Bits, Key, BitsHash> known;  // vertex set -> (dim, index)
    std::deque<detail::FaceRec> queue;
    fl.by_dim.assign(d, {});
    fl.children.assign(d, {});

    for (int v = 0; v < nv; ++v) {
        Bits b(nv);
        b.set(v);
        known.emplace(b, Key{0, v});
        fl.by_dim[0].push_back(b);
        fl.children[0].push_back({});
        queue.push_back({b, vtight[v], 0});
    }

    while (!queue.empty()) {
        auto rec = std::move(queue.front());
        queue.pop_front();
        if (rec.dim >= d - 1) continue;  // facets have no proper covers
        int my_idx = known.at(rec.verts).idx;

        // closures of one-vertex extensions, deduplicated
        std::vector<std::pair<Bits, Bits>> cand;  // (verts, tight facets)
        std::unordered_set<Bits, BitsHash> cseen;
        for (int v = 0; v < nv; ++v) {
            if (rec.verts.test(v)) continue;
            Bits tf = rec.tightf & vtight[v];
            Bits cv;
            if (!closure_of(tf, cv)) continue;  // whole polytope
            if (cseen.insert(cv).second) cand.emplace_back(std::move(cv), std::move(tf));
        }
        // inclusion-minimal candidates are exactly the covers
        for (size_t i = 0; i < cand.size(); ++i) {
            bool minimal = true;
            for (size_t j = 0; j < cand.size(); ++j) {
                if (i == j) continue;
                if (cand[j].first.subset_of(cand[i].first) && !(cand[j].first == cand[i].first)) {
                    minimal = false;
                    break;
                }
            }
            if (!minimal) continue;
            auto it = known.find(cand[i].first);
            if (it != known.end()) {
                if (it->second.dim != rec.dim + 1) throw geometry_error("face lattice not graded");
                fl.children[rec.dim + 1][it->second.idx].push_back(my_idx);
                continue;
            }
            int idx = static_cast<int>(fl.by_dim[rec.dim + 1].size());
            known.emplace(cand[i].first, Key{rec.dim + 1, idx});
            fl.by_dim[rec.dim + 1].push_back(cand[i].first);
            fl.children[rec.dim + 1].push_back({my_idx});
            queue.push_back({cand[i].first, cand[i].second, rec.dim + 1});
        }
    }

    fl.f_vector.assign(d, 0);
    for (int j = 0; j < d; ++j) fl.f_vector[j] = static_cast<long long>(fl.by_dim[j].size());
    if (fl.f_vector[0] != nv) throw geometry_error("face lattice vertex count mismatch");
    if (fl.f_vector[d - 1] != nf) throw geometry_error("face lattice facet count mismatch");
    long long euler = 0;
    for (int j = 0; j < d; ++j) euler += (j % 2 == 0) ? fl.f_vector[j] : -fl.f_vector[j];
    long long expect = 1 - ((d % 2 == 0) ? 1 : -1);
    if (euler != expect) throw geometry_error("Euler relation violated");
    return fl;
}

}  // namespace detail

inline const FaceLattice& Polytope::face_lattice() const {
    std::lock_guard<std::mutex> lk(lazy_->mu);
    if (!lazy_->lattice) lazy_->lattice = std::make_unique<FaceLattice>(detail::build_face_lattice(*this));
    return *lazy_->lattice;
}

inline const std::vector<std::pair<int, int>>& Polytope::edges() const {
    std::lock_guard<std::mutex> lk(lazy_->mu);
    if (!lazy_->edges) {
        auto e = std::make_unique<std::vector<std::pair<int, int>>>();
        int nv = static_cast<int>(n_vertices());
        for (int v = 0; v < nv; ++v)
            for (int w = v + 1; w < nv; ++w) {
                Bits t = vtight_[v] & vtight_[w];
                int onface = 0;
                for (int u = 0; u < nv && onface <= 2; ++u)
                    if (t.subset_of(vtight_[u])) ++onface;
                if (onface == 2) e->emplace_back(v, w);
            }
        lazy_->edges = std::move(e);
    }
    return *lazy_->edges;
}

}  // namespace mfp
