#pragma once

/** @file sampling.hpp
 *  @brief Element-level spot checks of the axioms on seeded random samples.
 */

#include <random>

#include "wallform/wall_form.hpp"

namespace wallform {

/** Random coordinate vectors with entries in [-radius, radius]; representatives are not reduced. */
class ElementSampler {
public:
    explicit ElementSampler(std::uint64_t seed, long radius = 5) : rng_(seed), dist_(-radius, radius) {}

    Coords operator()(std::size_t n) {
        Coords v(n);
        for (auto& c : v) c = dist_(rng_);
        return v;
    }
    long scalar() { return dist_(rng_); }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::uniform_int_distribution<long> dist_;
};

/** Each identity is evaluated on `samples` random tuples; failures carry the sample number. */
inline AxiomReport sample_axioms(const WallForm& W, std::uint64_t seed, std::size_t samples) {
    AxiomReport report;
    ElementSampler draw(seed);
    const FormParameter& P = W.param();
    const FgAbGroup& H = W.H();
    const FgAbGroup& Gm = P.G.minus();
    const FgAbGroup& Gp = P.G.plus();
    const std::size_t nm = W.minus().size(), np = W.plus().size(), nh = H.size();

    // shift by a relation: same class, different representative
    auto shifted = [&](const FgAbGroup& G, Coords v) {
        for (std::size_t i = 0; i < G.size(); ++i)
            if (!G.is_free(i)) v[i] += draw.scalar() * G.factor(i);
        return v;
    };

    for (std::size_t s = 0; s < samples; ++s) {
        Coords x = draw(nm), x2 = draw(nm), y = draw(np), z = draw(np), h = draw(nh);
        auto fail = [&](Axiom a, const std::string& what) {
            report.failures.push_back({a, what + " on sample " + std::to_string(s)});
        };

        if (W.lambda(shifted(W.minus(), x), shifted(W.plus(), y)) != W.lambda(x, y) ||
            !H.equal(W.mu(shifted(W.plus(), y), shifted(W.plus(), z)), W.mu(y, z)) ||
            !Gm.equal(W.alpha_minus(shifted(W.minus(), x)), W.alpha_minus(x)) ||
            !Gp.equal(W.alpha_plus(shifted(W.plus(), y)), W.alpha_plus(y)))
            fail(Axiom::WellDefinedness, "representative change");
        if (!H.equal(W.mu(z, y), H.scale(W.epsilon(), W.mu(y, z)))) fail(Axiom::Symmetry, "mu(z, y)");
        Coords t = W.tau(x2, h);
        if (W.lambda(x, t) != 0) fail(Axiom::I, "lambda(x, tau(x', h))");
        if (!H.equal(W.mu(W.tau(x, h), y), H.scale(W.lambda(x, y), h))) fail(Axiom::II, "mu(tau(x, h), y)");
        if (!Gm.equal(W.alpha_minus(W.minus().add(x, x2)), Gm.add(W.alpha_minus(x), W.alpha_minus(x2))))
            fail(Axiom::III, "alpha_minus(x + x')");
        Coords sum = Gp.add(Gp.add(W.alpha_plus(y), W.alpha_plus(z)), P.partial(W.mu(y, z)));
        if (!Gp.equal(W.alpha_plus(W.plus().add(y, z)), sum)) fail(Axiom::IV, "alpha_plus(y + z)");
        if (!H.equal(W.mu(y, y), P.pi(W.alpha_plus(y)))) fail(Axiom::V, "mu(y, y)");
        if (!Gp.equal(W.alpha_plus(W.tau(x, h)), P.G.tau(W.alpha_minus(x), h))) fail(Axiom::VI, "alpha_plus(tau(x, h))");
        if (!H.equal(P.pi(P.partial(W.mu(y, z))), H.scale(1 + W.epsilon(), W.mu(y, z))))
            fail(Axiom::Polarization, "pi(partial(mu(y, z)))");
    }
    return report;
}

}  // namespace wallform
