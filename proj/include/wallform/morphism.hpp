#pragma once

/** @file morphism.hpp
 *  @brief Morphisms of Wall forms and frames of morphisms out of standard forms.
 */

#include "wallform/wall_form.hpp"

namespace wallform {

class WallMorphism {
public:
    WallMorphism() = default;

    const WallForm& source() const { return *source_; }
    const WallForm& target() const { return *target_; }
    const FormRef& source_ref() const { return source_; }
    const FormRef& target_ref() const { return target_; }
    const GroupHom& minus() const { return map_.minus(); }
    const GroupHom& plus() const { return map_.plus(); }
    const HMap& hmap() const { return map_; }

    Coords apply_minus(const Coords& x) const { return map_.minus()(x); }
    Coords apply_plus(const Coords& y) const { return map_.plus()(y); }

    friend bool operator==(const WallMorphism& a, const WallMorphism& b) {
        return *a.source_ == *b.source_ && *a.target_ == *b.target_ && a.map_ == b.map_;
    }

private:
    friend WallMorphism make_morphism(FormRef, FormRef, const IntMatrix&, const IntMatrix&);
    friend WallMorphism compose(const WallMorphism&, const WallMorphism&);

    WallMorphism(FormRef s, FormRef t, HMap m) : source_(std::move(s)), target_(std::move(t)), map_(std::move(m)) {}

    FormRef source_;
    FormRef target_;
    HMap map_;
};

/** Validates that (minus, plus) preserves tau, lambda, mu and alpha on generators. */
inline WallMorphism make_morphism(FormRef src, FormRef dst, const IntMatrix& minus, const IntMatrix& plus) {
    const WallForm& S = *src;
    const WallForm& T = *dst;
    if (!(S.param() == T.param())) throw ParameterMismatch("source and target use different form parameters");
    GroupHom fm, fp;
    try {
        fm = GroupHom(S.minus(), T.minus(), minus);
        fp = GroupHom(S.plus(), T.plus(), plus);
    } catch (const InvalidInput& e) {
        throw PreservationViolation("group structure", e.what());
    }
    auto bad = square_failure(S.pair(), T.pair(), fm, fp);
    if (!bad.empty()) throw PreservationViolation("tau", bad);

    std::vector<Coords> xs, ys;
    for (std::size_t i = 0; i < S.minus().size(); ++i) xs.push_back(fm(S.minus().generator(i)));
    for (std::size_t k = 0; k < S.plus().size(); ++k) ys.push_back(fp(S.plus().generator(k)));

    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t k = 0; k < ys.size(); ++k)
            if (T.lambda(xs[i], ys[k]) != S.lambda_value(i, k))
                throw PreservationViolation("lambda", "(" + gen_name('x', i) + ", " + gen_name('y', k) + ")");
    for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t k = 0; k < ys.size(); ++k)
            if (!T.H().equal(T.mu(ys[i], ys[k]), S.mu_value(i, k)))
                throw PreservationViolation("mu", "(" + gen_name('y', i) + ", " + gen_name('y', k) + ")");
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (!T.param().G.minus().equal(T.alpha_minus(xs[i]), S.alpha_minus_value(i)))
            throw PreservationViolation("alpha_minus", gen_name('x', i));
    for (std::size_t k = 0; k < ys.size(); ++k)
        if (!T.param().G.plus().equal(T.alpha_plus(ys[k]), S.alpha_plus_value(k)))
            throw PreservationViolation("alpha_plus", gen_name('y', k));
    return WallMorphism(std::move(src), std::move(dst), HMap(std::move(fm), std::move(fp)));
}

inline WallMorphism compose(const WallMorphism& g, const WallMorphism& f) {
    if (!(f.target() == g.source())) throw InvalidInput("composition of incompatible morphisms");
    return WallMorphism(f.source_ref(), g.target_ref(), compose(g.hmap(), f.hmap()));
}

inline WallMorphism identity_morphism(const FormRef& W) {
    return make_morphism(W, W, IntMatrix::identity(W->minus().size()), IntMatrix::identity(W->plus().size()));
}

inline bool is_isomorphism(const WallMorphism& f) { return is_bijective(f.minus()) && is_bijective(f.plus()); }

inline WallMorphism inverse(const WallMorphism& f) {
    GroupHom im = inverse(f.minus());
    GroupHom ip = inverse(f.plus());
    return make_morphism(f.target_ref(), f.source_ref(), im.matrix(), ip.matrix());
}

/** Images of a_1..a_k and b_1..b_k under a morphism out of W^k. */
struct Frame {
    std::vector<Coords> xs;
    std::vector<Coords> ys;
};

inline Frame frame_of(const WallMorphism& f) {
    const std::size_t k = f.source().minus().size();
    StandardLayout L(k, f.source().H());
    Frame fr;
    for (std::size_t i = 0; i < k; ++i) {
        fr.xs.push_back(f.apply_minus(L.a(i)));
        fr.ys.push_back(f.apply_plus(L.b(i)));
    }
    return fr;
}

/** The morphism W^k -> dst sending a_i to xs[i] and b_i to ys[i]; @p src must be W^k. */
inline WallMorphism morphism_from_frame(const FormRef& src, const FormRef& dst, const Frame& fr) {
    const std::size_t k = fr.xs.size();
    if (fr.ys.size() != k || src->minus().size() != k) throw InvalidInput("frame size does not match the source rank");
    const WallForm& T = *dst;
    StandardLayout L(k, T.H());
    IntMatrix minus(T.minus().size(), k), plus(T.plus().size(), L.plus_size());
    for (std::size_t i = 0; i < k; ++i) {
        minus.set_column(i, fr.xs[i]);
        plus.set_column(L.b_index(i), fr.ys[i]);
        for (std::size_t j = 0; j < T.H().size(); ++j)
            plus.set_column(L.tau_index(i, j), T.tau(fr.xs[i], T.H().generator(j)));
    }
    return make_morphism(src, dst, minus, plus);
}

inline WallMorphism morphism_from_frame(std::size_t k, const FormRef& dst, const Frame& fr) {
    return morphism_from_frame(share(standard_form(k, dst->param())), dst, fr);
}

/** Standard inclusion of W^k into W^g on the blocks first, first+1, ... */
inline WallMorphism block_inclusion(const FormRef& src, const FormRef& dst, std::size_t first = 0) {
    const std::size_t k = src->minus().size();
    StandardLayout L(dst->minus().size(), dst->H());
    Frame fr;
    for (std::size_t i = 0; i < k; ++i) {
        fr.xs.push_back(L.a(first + i));
        fr.ys.push_back(L.b(first + i));
    }
    return morphism_from_frame(src, dst, fr);
}

/** Restriction of a morphism out of W^k to the blocks [first, first + count). */
inline WallMorphism restrict_blocks(const WallMorphism& f, std::size_t first, std::size_t count) {
    Frame all = frame_of(f);
    Frame fr;
    for (std::size_t i = first; i < first + count; ++i) {
        fr.xs.push_back(all.xs[i]);
        fr.ys.push_back(all.ys[i]);
    }
    return morphism_from_frame(count, f.target_ref(), fr);
}

/** f (+) g : W^(k+l) -> M for morphisms out of standard forms with orthogonal images. */
inline WallMorphism join_frames(const WallMorphism& f, const WallMorphism& g) {
    if (!(f.target() == g.target())) throw InvalidInput("joined morphisms need a common target");
    Frame a = frame_of(f), b = frame_of(g);
    a.xs.insert(a.xs.end(), b.xs.begin(), b.xs.end());
    a.ys.insert(a.ys.end(), b.ys.begin(), b.ys.end());
    return morphism_from_frame(a.xs.size(), f.target_ref(), a);
}

}  // namespace wallform
