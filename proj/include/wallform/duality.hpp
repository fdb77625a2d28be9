#pragma once

/** @file duality.hpp
 *  @brief The duality maps into Hom(M, P(nu)) and the non-singularity test.
 */

#include "wallform/wall_form.hpp"

namespace wallform {

// T0(v) = (0, lambda(v, .))
inline HMap dual_of_minus(const WallForm& W, const Coords& v) {
    HPair P = probe_zero(W.H());
    IntMatrix fm(0, W.minus().size()), fp(1, W.plus().size());
    for (std::size_t k = 0; k < W.plus().size(); ++k) fp(0, k) = W.lambda(v, W.plus().generator(k));
    return make_hmap(W.pair(), P, fm, fp);
}

// T1(w) = (lambda(., w), mu(., w))
inline HMap dual_of_plus(const WallForm& W, const Coords& w) {
    HPair P = probe_one(W.H());
    IntMatrix fm(1, W.minus().size()), fp(W.H().size(), W.plus().size());
    for (std::size_t i = 0; i < W.minus().size(); ++i) fm(0, i) = W.lambda(W.minus().generator(i), w);
    for (std::size_t k = 0; k < W.plus().size(); ++k) fp.set_column(k, W.mu(W.plus().generator(k), w));
    return make_hmap(W.pair(), P, fm, fp);
}

struct DualityMap {
    ProbeHomGroup homs;
    GroupHom map;  // W- -> homs.group() for nu = 0, W+ -> homs.group() for nu = 1
};

inline DualityMap duality_map(const WallForm& W, int nu) {
    ProbeHomGroup homs = hom_to_probe(W.pair(), nu);
    const FgAbGroup& dom = nu == 0 ? W.minus() : W.plus();
    IntMatrix m(homs.group().size(), dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
        HMap f = nu == 0 ? dual_of_minus(W, dom.generator(i)) : dual_of_plus(W, dom.generator(i));
        auto c = homs.coordinates(f);
        if (!c) throw std::logic_error("dual element is not an H-map");
        m.set_column(i, *c);
    }
    GroupHom map(dom, homs.group(), std::move(m));
    return {std::move(homs), std::move(map)};
}

struct DualityCertificate {
    std::vector<Coords> kernel;  // generators of the kernel
    FgAbGroup cokernel;
    bool bijective() const { return kernel.empty() && cokernel.is_trivial(); }
};

inline DualityCertificate certify(const GroupHom& f) {
    DualityCertificate c;
    c.kernel = kernel_generators(f);
    const auto& cod = f.codomain();
    IntMatrix rel(cod.size(), f.domain().size() + cod.size());
    for (std::size_t i = 0; i < cod.size(); ++i) {
        for (std::size_t j = 0; j < f.domain().size(); ++j) rel(i, j) = f.matrix()(i, j);
        rel(i, f.domain().size() + i) = cod.factor(i);
    }
    c.cokernel = group_from_presentation(rel).group;
    return c;
}

struct NonsingularityReport {
    bool nonsingular = false;
    DualityCertificate minus_side;  // T0
    DualityCertificate plus_side;   // T1
};

inline NonsingularityReport is_nonsingular(const WallForm& W) {
    NonsingularityReport r;
    r.minus_side = certify(duality_map(W, 0).map);
    r.plus_side = certify(duality_map(W, 1).map);
    r.nonsingular = r.minus_side.bijective() && r.plus_side.bijective();
    return r;
}

}  // namespace wallform
