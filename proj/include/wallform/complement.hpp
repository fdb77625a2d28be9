#pragma once

/** @file complement.hpp
 *  @brief Sub-forms, orthogonal complements, orthogonality and orthogonal sums.
 */

#include "wallform/morphism.hpp"

namespace wallform {

struct SubWallForm {
    FormRef ambient;
    SubHPair gens;
};

inline SubWallForm whole_form(const FormRef& W) {
    SubWallForm s{W, {}};
    for (std::size_t i = 0; i < W->minus().size(); ++i) s.gens.minus.push_back(W->minus().generator(i));
    for (std::size_t k = 0; k < W->plus().size(); ++k) s.gens.plus.push_back(W->plus().generator(k));
    return s;
}

inline SubWallForm image(const WallMorphism& f) {
    SubWallForm s{f.target_ref(), {}};
    for (std::size_t i = 0; i < f.source().minus().size(); ++i)
        s.gens.minus.push_back(f.apply_minus(f.source().minus().generator(i)));
    for (std::size_t k = 0; k < f.source().plus().size(); ++k)
        s.gens.plus.push_back(f.apply_plus(f.source().plus().generator(k)));
    return s;
}

inline bool contains_minus(const SubWallForm& N, const Coords& x) {
    return Subgroup(N.ambient->minus().factors(), N.gens.minus).contains(x);
}
inline bool contains_plus(const SubWallForm& N, const Coords& y) {
    return Subgroup(N.ambient->plus().factors(), N.gens.plus).contains(y);
}

inline bool same_subform(const SubWallForm& a, const SubWallForm& b) {
    return same_subgroup(Subgroup(a.ambient->minus().factors(), a.gens.minus),
                         Subgroup(b.ambient->minus().factors(), b.gens.minus)) &&
           same_subgroup(Subgroup(a.ambient->plus().factors(), a.gens.plus),
                         Subgroup(b.ambient->plus().factors(), b.gens.plus));
}

inline bool is_zero_subform(const SubWallForm& N) {
    for (const auto& x : N.gens.minus)
        if (!N.ambient->minus().is_zero(x)) return false;
    for (const auto& y : N.gens.plus)
        if (!N.ambient->plus().is_zero(y)) return false;
    return true;
}

/** N-perp: x with lambda(x, N+) = 0, and y with lambda(N-, y) = 0 and mu(y, N+) = 0. */
inline SubWallForm orthogonal_complement(const SubWallForm& N) {
    const WallForm& W = *N.ambient;
    const FgAbGroup& H = W.H();
    const std::size_t nm = W.minus().size(), np = W.plus().size();

    IntMatrix lm(N.gens.plus.size(), nm);
    for (std::size_t r = 0; r < N.gens.plus.size(); ++r)
        for (std::size_t i = 0; i < nm; ++i) lm(r, i) = W.lambda(W.minus().generator(i), N.gens.plus[r]);
    SubWallForm perp{N.ambient, {}};
    perp.gens.minus = kernel_generators(lm, W.minus().factors(), std::vector<Int>(lm.rows(), Int(0)));

    std::vector<Coords> rows;
    std::vector<Int> moduli;
    for (const auto& v : N.gens.minus) {
        Coords r(np);
        for (std::size_t k = 0; k < np; ++k) r[k] = W.lambda(v, W.plus().generator(k));
        rows.push_back(std::move(r));
        moduli.push_back(0);
    }
    for (const auto& w : N.gens.plus) {
        std::vector<Coords> per_h(H.size(), Coords(np));
        for (std::size_t k = 0; k < np; ++k) {
            Coords m = W.mu(W.plus().generator(k), w);
            for (std::size_t p = 0; p < H.size(); ++p) per_h[p][k] = m[p];
        }
        for (std::size_t p = 0; p < H.size(); ++p) {
            rows.push_back(std::move(per_h[p]));
            moduli.push_back(H.factor(p));
        }
    }
    perp.gens.plus = kernel_generators(IntMatrix::from_rows(np, rows), W.plus().factors(), moduli);
    if (!is_sub_hpair(W.pair(), perp.gens)) throw std::logic_error("orthogonal complement is not closed under tau");
    return perp;
}

/** Intersection zero and each inside the other's complement. */
inline bool are_orthogonal(const SubWallForm& A, const SubWallForm& B) {
    const WallForm& W = *A.ambient;
    for (const auto& x : A.gens.minus)
        for (const auto& y : B.gens.plus)
            if (W.lambda(x, y) != 0) return false;
    for (const auto& x : B.gens.minus)
        for (const auto& y : A.gens.plus)
            if (W.lambda(x, y) != 0) return false;
    for (const auto& y : A.gens.plus)
        for (const auto& z : B.gens.plus)
            if (!W.H().is_zero(W.mu(y, z))) return false;
    return intersection_generators(W.minus().factors(), A.gens.minus, B.gens.minus).empty() &&
           intersection_generators(W.plus().factors(), A.gens.plus, B.gens.plus).empty();
}

struct SubFormStructure {
    FormRef form;
    WallMorphism inclusion;
};

/** The restricted Wall form on a sub-form, in its own normal-form coordinates. */
inline SubFormStructure as_form(const SubWallForm& N) {
    const WallForm& W = *N.ambient;
    const FgAbGroup& H = W.H();
    const FormParameter& P = W.param();
    Subgroup sm(W.minus().factors(), N.gens.minus);
    Subgroup sp(W.plus().factors(), N.gens.plus);
    const auto& xm = sm.basis();
    const auto& yp = sp.basis();
    std::vector<Coords> tau;
    for (const auto& x : xm)
        for (std::size_t j = 0; j < H.size(); ++j) {
            auto c = sp.coordinates(W.tau(x, H.generator(j)));
            if (!c) throw InvalidInput("sub-form is not closed under tau");
            tau.push_back(*c);
        }
    HPair pair(H, sm.group(), sp.group(), std::move(tau));
    IntMatrix lambda(xm.size(), yp.size());
    for (std::size_t i = 0; i < xm.size(); ++i)
        for (std::size_t k = 0; k < yp.size(); ++k) lambda(i, k) = W.lambda(xm[i], yp[k]);
    std::vector<Coords> mu;
    for (const auto& y : yp)
        for (const auto& z : yp) mu.push_back(W.mu(y, z));
    std::vector<Coords> am, ap;
    for (const auto& x : xm) am.push_back(W.alpha_minus(x));
    for (const auto& y : yp) ap.push_back(W.alpha_plus(y));
    FormRef sub = share(make_wall_form(WallFormData{P, std::move(pair), std::move(lambda), std::move(mu), std::move(am), std::move(ap)}));
    WallMorphism inc = make_morphism(sub, N.ambient, IntMatrix::from_columns(W.minus().size(), xm),
                                     IntMatrix::from_columns(W.plus().size(), yp));
    return {sub, std::move(inc)};
}

struct PerpSum {
    FormRef form;
    WallMorphism inj_first;
    WallMorphism inj_second;
};

/** Orthogonal sum: block lambda and mu, alpha additive across the summands. */
inline PerpSum perp_sum(const FormRef& A, const FormRef& B) {
    if (!(A->param() == B->param())) throw ParameterMismatch("orthogonal sum of forms with different parameters");
    HPairSum s = hpair_direct_sum(A->pair(), B->pair());
    const HPair& pair = s.pair;
    DirectSum m = direct_sum(A->minus(), B->minus());
    DirectSum p = direct_sum(A->plus(), B->plus());
    const FormParameter& P = A->param();
    const std::size_t nm = pair.minus().size(), np = pair.plus().size();
    std::vector<Coords> xa, xb, ya, yb;
    for (std::size_t i = 0; i < nm; ++i) {
        xa.push_back(m.proj_first(pair.minus().generator(i)));
        xb.push_back(m.proj_second(pair.minus().generator(i)));
    }
    for (std::size_t k = 0; k < np; ++k) {
        ya.push_back(p.proj_first(pair.plus().generator(k)));
        yb.push_back(p.proj_second(pair.plus().generator(k)));
    }
    IntMatrix lambda(nm, np);
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t k = 0; k < np; ++k) lambda(i, k) = A->lambda(xa[i], ya[k]) + B->lambda(xb[i], yb[k]);
    std::vector<Coords> mu;
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t k = 0; k < np; ++k) mu.push_back(P.H().add(A->mu(ya[i], ya[k]), B->mu(yb[i], yb[k])));
    std::vector<Coords> am, ap;
    for (std::size_t i = 0; i < nm; ++i) am.push_back(P.G.minus().add(A->alpha_minus(xa[i]), B->alpha_minus(xb[i])));
    for (std::size_t k = 0; k < np; ++k) ap.push_back(P.G.plus().add(A->alpha_plus(ya[k]), B->alpha_plus(yb[k])));
    FormRef sum = share(make_wall_form(WallFormData{P, pair, std::move(lambda), std::move(mu), std::move(am), std::move(ap)}));
    WallMorphism ia = make_morphism(A, sum, s.inj_first.minus().matrix(), s.inj_first.plus().matrix());
    WallMorphism ib = make_morphism(B, sum, s.inj_second.minus().matrix(), s.inj_second.plus().matrix());
    if (!are_orthogonal(image(ia), image(ib))) throw std::logic_error("summands of an orthogonal sum are not orthogonal");
    return {sum, std::move(ia), std::move(ib)};
}

}  // namespace wallform
