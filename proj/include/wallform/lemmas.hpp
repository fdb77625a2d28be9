#pragma once

/** @file lemmas.hpp
 *  @brief Constructive witnesses on standard forms: complements, envelopes, focusing automorphisms,
 *  kernel ranks, transitivity and cancelation.
 */

#include "wallform/complement.hpp"
#include "wallform/duality.hpp"

namespace wallform {

/** The splitting W^g = W_(0) + W_(1): b_1..b_g against the a_i and tau(a_i, h). */
struct IsotropicSplit {
    SubHPair isotropic;  // minus part 0, plus part free on the b_i
    SubHPair tau_part;   // all of W-, plus part spanned by tau(a_i, h)
    TensorProduct tensor;
    GroupHom tau_map;    // W- (x) H -> tau_part.plus, in the coordinates of `tau_image`
    Subgroup tau_image;
};

inline IsotropicSplit isotropic_split(const WallForm& W) {
    const std::size_t g = W.minus().size();
    const FgAbGroup& H = W.H();
    StandardLayout L(g, H);
    IsotropicSplit s{{}, {}, tensor_product(W.minus(), H), {}, Subgroup(W.plus().factors(), {})};
    for (std::size_t i = 0; i < g; ++i) {
        s.isotropic.plus.push_back(L.b(i));
        s.tau_part.minus.push_back(L.a(i));
        for (std::size_t j = 0; j < H.size(); ++j) s.tau_part.plus.push_back(W.tau(L.a(i), H.generator(j)));
    }
    s.tau_image = Subgroup(W.plus().factors(), s.tau_part.plus);

    // pure tensors e_i (x) h_j in moduli coordinates, then each normal-form generator pulled back
    std::vector<Int> moduli;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < H.size(); ++j) moduli.push_back(gcd(W.minus().factor(i), H.factor(j)));
    IntMatrix emb = IntMatrix::from_columns(s.tensor.group.size(), s.tensor.embedding);
    IntMatrix m(s.tau_image.group().size(), s.tensor.group.size());
    for (std::size_t k = 0; k < s.tensor.group.size(); ++k) {
        auto pure = preimage(emb, moduli, s.tensor.group.factors(), s.tensor.group.generator(k));
        if (!pure) throw std::logic_error("tensor generator without a preimage");
        Coords y = W.plus().zero();
        for (std::size_t p = 0; p < pure->size(); ++p)
            y = W.plus().add(y, W.plus().scale((*pure)[p], s.tau_part.plus[p]));
        m.set_column(k, *s.tau_image.coordinates(y));
    }
    s.tau_map = GroupHom(s.tensor.group, s.tau_image.group(), std::move(m));
    return s;
}

namespace detail {

inline void require_standard(const WallForm& W, const char* what) {
    if (!is_standard(W)) throw InvalidInput(std::string(what) + " must be a standard form");
}

// x with x . u = 1 for primitive u
inline Coords dual_vector(const Coords& u) {
    auto x = solve_integer(IntMatrix::from_rows(u.size(), {u}), Coords{1});
    if (!x) throw InvalidInput("vector is not primitive");
    return *x;
}

// v = t * primitive; the zero vector gives t = 0 and the first unit vector
inline Coords primitive_part(const Coords& v, Int& t) {
    t = 0;
    for (const auto& c : v) t = gcd(t, c);
    Coords out(v.size());
    if (t == 0) {
        if (!out.empty()) out[0] = 1;
        return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / t;
    return out;
}

inline Frame pull_back(const WallMorphism& c, const Frame& fr) {
    Frame out;
    for (const auto& x : fr.xs) {
        auto p = preimage(c.minus(), x);
        if (!p) throw std::logic_error("element outside the image of an embedding");
        out.xs.push_back(*p);
    }
    for (const auto& y : fr.ys) {
        auto p = preimage(c.plus(), y);
        if (!p) throw std::logic_error("element outside the image of an embedding");
        out.ys.push_back(*p);
    }
    return out;
}

inline bool is_zero_hmap(const HMap& f) {
    for (std::size_t i = 0; i < f.minus().domain().size(); ++i)
        if (!f.minus().codomain().is_zero(f.minus()(f.minus().domain().generator(i)))) return false;
    for (std::size_t k = 0; k < f.plus().domain().size(); ++k)
        if (!f.plus().codomain().is_zero(f.plus()(f.plus().domain().generator(k)))) return false;
    return true;
}

inline WallMorphism endomorphism(const FormRef& T, const WallMorphism& f) {
    return make_morphism(T, T, f.minus().matrix(), f.plus().matrix());
}

// the k = 1 step: (v, w) is a hyperbolic pair of the standard form T
inline WallMorphism complement_of_pair(const FormRef& T, const Coords& v, const Coords& w) {
    const std::size_t n = T->minus().size();
    StandardLayout L(n, T->H());
    Coords u = L.isotropic_part(w);
    std::vector<Coords> cols{v};
    for (auto& x : kernel_basis(IntMatrix::from_rows(n, {u}))) cols.push_back(std::move(x));
    IntMatrix X = IntMatrix::from_columns(n, cols);
    if (!is_unimodular(X)) throw std::logic_error("dual system completion failed");
    IntMatrix Y = unimodular_inverse(X).transpose();
    Frame fr;
    for (std::size_t i = 1; i < n; ++i) {
        Coords y = L.from_isotropic(Y.column(i));
        Coords h = T->mu(y, w);
        fr.xs.push_back(cols[i]);
        fr.ys.push_back(T->plus().sub(y, T->tau(v, h)));
    }
    return morphism_from_frame(n - 1, T, fr);
}

}  // namespace detail

/** c : W^g -> W^(g+k) onto the orthogonal complement of f(W^k); f (+) c is an automorphism. */
inline WallMorphism complement_standardize(const WallMorphism& f) {
    detail::require_standard(f.source(), "source");
    detail::require_standard(f.target(), "target");
    const std::size_t k = f.source().minus().size(), n = f.target().minus().size();
    if (k > n) throw InvalidInput("source rank exceeds target rank");
    const FormRef& T = f.target_ref();
    WallMorphism c;
    if (k == 0) {
        c = identity_morphism(T);
    } else {
        Frame fr = frame_of(f);
        WallMorphism c1 = detail::complement_of_pair(T, fr.xs[0], fr.ys[0]);
        if (k == 1) {
            c = c1;
        } else {
            Frame rest{{fr.xs.begin() + 1, fr.xs.end()}, {fr.ys.begin() + 1, fr.ys.end()}};
            WallMorphism inner = morphism_from_frame(k - 1, c1.source_ref(), detail::pull_back(c1, rest));
            c = compose(c1, complement_standardize(inner));
        }
    }
    if (!are_orthogonal(image(f), image(c)) || !is_isomorphism(join_frames(f, c)))
        throw std::logic_error("complement does not split the target");
    return c;
}

namespace detail {

// W^|xs| -> T whose minus image contains every x
inline WallMorphism minus_envelope(const FormRef& T, const std::vector<Coords>& xs) {
    const std::size_t n = T->minus().size();
    if (xs.empty()) return morphism_from_frame(0, T, {});
    if (xs.size() > n) throw RankTooSmall("more elements than blocks");
    StandardLayout L(n, T->H());
    Int t;
    Coords x = primitive_part(xs[0], t);
    Coords y = L.from_isotropic(dual_vector(x));
    WallMorphism f1 = morphism_from_frame(1, T, Frame{{x}, {y}});
    if (xs.size() == 1) return f1;
    Frame rest;
    for (std::size_t i = 1; i < xs.size(); ++i) rest.xs.push_back(T->minus().sub(xs[i], T->minus().scale(T->lambda(xs[i], y), x)));
    WallMorphism c1 = complement_standardize(f1);
    WallMorphism inner = minus_envelope(c1.source_ref(), pull_back(c1, rest).xs);
    return join_frames(f1, compose(c1, inner));
}

}  // namespace detail

/** W^(k+1) -> T whose image contains y (a combination of the b_i) and every x in xs. */
inline WallMorphism envelope_morphism(const FormRef& T, const Coords& y, const std::vector<Coords>& xs) {
    detail::require_standard(*T, "target");
    const std::size_t n = T->minus().size();
    StandardLayout L(n, T->H());
    Coords u = L.isotropic_part(y);
    if (!T->plus().equal(y, L.from_isotropic(u))) throw InvalidInput("plus element has a tau component");
    if (xs.size() + 1 > n) throw InvalidInput("envelope needs more blocks than the target has");
    Int t;
    Coords ybar = L.from_isotropic(detail::primitive_part(u, t));
    Coords xbar = detail::dual_vector(L.isotropic_part(ybar));
    WallMorphism f1 = morphism_from_frame(1, T, Frame{{xbar}, {ybar}});
    std::vector<Coords> rest;
    for (const auto& x : xs) rest.push_back(T->minus().sub(x, T->minus().scale(T->lambda(x, ybar), xbar)));
    WallMorphism c1 = complement_standardize(f1);
    WallMorphism inner = detail::minus_envelope(c1.source_ref(), detail::pull_back(c1, Frame{rest, {}}).xs);
    WallMorphism e = join_frames(f1, compose(c1, inner));

    SubWallForm im = image(e);
    if (!contains_plus(im, y)) throw std::logic_error("envelope misses the plus element");
    for (const auto& x : xs)
        if (!contains_minus(im, x)) throw std::logic_error("envelope misses a minus element");
    return e;
}

enum class Side { minus, plus };

/** Automorphism Phi of T with Phi^-1(target) in the leading d + 1 blocks (plus side, d = generators
 *  of H) or in Z a_1 (minus side). */
inline WallMorphism focus_automorphism(const FormRef& T, Side side, const Coords& target) {
    detail::require_standard(*T, "form");
    const std::size_t g = T->minus().size(), d = T->H().size();
    const std::size_t lead = side == Side::plus ? d + 1 : 1;
    if (g < lead) throw RankTooSmall("rank " + std::to_string(g) + " is below " + std::to_string(lead));
    StandardLayout L(g, T->H());
    WallMorphism e;
    if (side == Side::plus) {
        T->plus().check(target);
        Coords y0 = L.from_isotropic(L.isotropic_part(target));
        e = envelope_morphism(T, y0, L.tau_part(target));
    } else {
        T->minus().check(target);
        e = detail::minus_envelope(T, {target});
    }
    WallMorphism phi = detail::endomorphism(T, join_frames(e, complement_standardize(e)));

    WallMorphism back = inverse(phi);
    if (side == Side::plus) {
        Coords z = back.apply_plus(target);
        for (std::size_t p = 0; p < z.size(); ++p)
            if (L.block_of_plus(p) >= lead && z[p] != 0) throw std::logic_error("focused element leaves the leading blocks");
    } else {
        Coords z = back.apply_minus(target);
        for (std::size_t i = 1; i < z.size(); ++i)
            if (z[i] != 0) throw std::logic_error("focused element leaves the first block");
    }
    return phi;
}

/** Restriction of a rank witness W^g -> M to a standard sub-form inside ker(phi), phi : M -> P(nu).
 *  Rank g - d - 1 for nu = 1 and g - 1 for nu = 0, or g when phi vanishes on the witness. */
inline WallMorphism kernel_rank_witness(const WallMorphism& witness, const HMap& phi, int nu) {
    if (nu != 0 && nu != 1) throw InvalidInput("nu must be 0 or 1");
    detail::require_standard(witness.source(), "witness source");
    const WallForm& M = witness.target();
    if (!(phi.minus().domain() == M.minus()) || !(phi.plus().domain() == M.plus()))
        throw InvalidInput("functional is not defined on the witness target");
    HMap pulled = compose(phi, witness.hmap());
    if (detail::is_zero_hmap(pulled)) return witness;

    const FormRef& S = witness.source_ref();
    const std::size_t g = S->minus().size(), d = S->H().size();
    const std::size_t drop = nu == 1 ? d + 1 : 1;
    if (g < drop) throw RankTooSmall("witness rank " + std::to_string(g) + " is below " + std::to_string(drop));
    DualityMap D = duality_map(*S, nu);
    auto coords = D.homs.coordinates(pulled);
    if (!coords) throw InvalidInput("functional is not an H-map into the probe");
    auto elt = preimage(D.map, *coords);
    if (!elt) throw std::logic_error("standard form is not non-singular");
    WallMorphism phi_s = focus_automorphism(S, nu == 1 ? Side::plus : Side::minus, *elt);
    WallMorphism out = compose(witness, restrict_blocks(phi_s, drop, g - drop));
    if (!detail::is_zero_hmap(compose(phi, out.hmap()))) throw std::logic_error("kernel witness leaves the kernel");
    return out;
}

/** Witness of rank g - 2 - d inside N and orthogonal to f(W^1), from a rank-g witness of N. */
inline WallMorphism slice_rank_witness(const SubWallForm& N, const WallMorphism& witness, const WallMorphism& f) {
    const std::size_t g = witness.source().minus().size(), d = witness.source().H().size();
    if (f.source().minus().size() != 1) throw InvalidInput("slice needs a morphism out of W^1");
    if (!(f.target() == witness.target()) || !(*N.ambient == witness.target()))
        throw InvalidInput("witness, sub-form and morphism need a common target");
    SubWallForm im = image(witness);
    for (const auto& x : im.gens.minus)
        if (!contains_minus(N, x)) throw InvalidInput("witness image is not inside the sub-form");
    for (const auto& y : im.gens.plus)
        if (!contains_plus(N, y)) throw InvalidInput("witness image is not inside the sub-form");
    if (g < 2 + d) throw RankTooSmall("witness rank " + std::to_string(g) + " is below " + std::to_string(2 + d));

    const WallForm& M = witness.target();
    Frame fr = frame_of(f);
    WallMorphism k1 = kernel_rank_witness(witness, dual_of_minus(M, fr.xs[0]), 0);
    return kernel_rank_witness(k1, dual_of_plus(M, fr.ys[0]), 1);
}

/** Automorphism Phi of the standard target with Phi o f2 = f1. */
inline WallMorphism transitivity_witness(const WallMorphism& f1, const WallMorphism& f2) {
    if (f1.source().minus().size() != 1 || f2.source().minus().size() != 1)
        throw InvalidInput("transitivity acts on morphisms out of W^1");
    if (!(f1.target() == f2.target())) throw InvalidInput("morphisms need a common target");
    detail::require_standard(f1.target(), "target");
    const FormRef& T = f1.target_ref();
    WallMorphism F1 = detail::endomorphism(T, join_frames(f1, complement_standardize(f1)));
    WallMorphism F2 = detail::endomorphism(T, join_frames(f2, complement_standardize(f2)));
    WallMorphism phi = compose(F1, inverse(F2));
    Frame got = frame_of(compose(phi, f2)), want = frame_of(f1);
    if (!T->minus().equal(got.xs[0], want.xs[0]) || !T->plus().equal(got.ys[0], want.ys[0]) || !is_isomorphism(phi))
        throw std::logic_error("transitivity witness does not carry f2 to f1");
    return phi;
}

/** Iso M -> N from an iso M (+) W^1 -> N (+) W^1 whose target is standard. */
inline WallMorphism cancel_standard(const FormRef& M, const FormRef& N, const WallMorphism& iso) {
    FormRef W1 = share(standard_form(1, M->param()));
    PerpSum SM = perp_sum(M, W1), SN = perp_sum(N, W1);
    if (!(iso.source() == *SM.form) || !(iso.target() == *SN.form))
        throw InvalidInput("isomorphism does not run between the two orthogonal sums");
    if (!is_isomorphism(iso)) throw InvalidInput("morphism is not an isomorphism");
    if (!is_standard(*SN.form)) throw NotSupported("cancelation needs a standard target");

    WallMorphism psi = compose(transitivity_witness(SN.inj_second, compose(iso, SM.inj_second)), iso);
    DirectSum dm = direct_sum(N->minus(), W1->minus()), dp = direct_sum(N->plus(), W1->plus());
    IntMatrix mm(N->minus().size(), M->minus().size()), pm(N->plus().size(), M->plus().size());
    for (std::size_t i = 0; i < M->minus().size(); ++i) {
        Coords z = psi.apply_minus(SM.inj_first.apply_minus(M->minus().generator(i)));
        if (!W1->minus().is_zero(dm.proj_second(z))) throw std::logic_error("aligned isomorphism mixes the summands");
        mm.set_column(i, dm.proj_first(z));
    }
    for (std::size_t k = 0; k < M->plus().size(); ++k) {
        Coords z = psi.apply_plus(SM.inj_first.apply_plus(M->plus().generator(k)));
        if (!W1->plus().is_zero(dp.proj_second(z))) throw std::logic_error("aligned isomorphism mixes the summands");
        pm.set_column(k, dp.proj_first(z));
    }
    WallMorphism out = make_morphism(M, N, mm, pm);
    if (!is_isomorphism(out)) throw std::logic_error("cancelation result is not an isomorphism");
    return out;
}

}  // namespace wallform
