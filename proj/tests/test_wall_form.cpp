#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace wallform;
using testing_support::standard;

namespace {

Axiom first_failure(const WallFormData& d) {
    AxiomReport r = check_axioms(WallForm::unchecked(d));
    REQUIRE_FALSE(r.ok());
    return r.first().axiom;
}

}  // namespace

TEST_CASE("standard forms") {
    FormParameter P = trivial_parameter(FgAbGroup{2}, -1);
    SECTION("W^1 passes") { REQUIRE(check_axioms(standard_form(1, P)).ok()); }
    SECTION("shape of W^2 over Z/2") {
        WallForm W = standard_form(2, P);
        StandardLayout L(2, W.H());
        REQUIRE(W.minus() == FgAbGroup{0, 0});
        REQUIRE(W.plus() == FgAbGroup{2, 2, 0, 0});
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) REQUIRE(W.lambda(L.a(i), L.b(j)) == (i == j ? 1 : 0));
        REQUIRE(is_standard(W));
    }
    SECTION("mu(b, b) = h is caught by axiom v") {
        WallFormData d = standard_form_data(1, P);
        std::size_t b = StandardLayout(1, P.H()).b_index(0);
        d.mu[b * 2 + b] = Coords{1};
        REQUIRE(first_failure(d) == Axiom::V);
        REQUIRE_THROWS_AS(make_wall_form(d), AxiomViolation);
    }
    SECTION("zero form") {
        WallForm Z = zero_form(P);
        REQUIRE(Z.minus().is_trivial());
        REQUIRE(Z.plus().is_trivial());
    }
    SECTION("symmetric parameter over Z/6 cannot carry W^1") {
        REQUIRE_THROWS_AS(standard_form(1, trivial_parameter(FgAbGroup{6}, 1)), AxiomViolation);
    }
}

TEST_CASE("the mutation catalogue is rejected with the expected labels") {
    for (const auto& m : testing_support::mutation_catalogue()) {
        INFO(m.name);
        REQUIRE(first_failure(m.data) == m.expected);
        AxiomReport sampled = sample_axioms(WallForm::unchecked(m.data), 1, 200);
        REQUIRE_FALSE(sampled.ok());
    }
}

TEST_CASE("alpha_plus evaluation") {
    WallForm W = standard_form(2, testing_support::mixed_parameter());
    StandardLayout L(2, W.H());
    const FgAbGroup& Gp = W.param().G.plus();
    REQUIRE(Gp.is_zero(W.alpha_plus(W.plus().zero())));
    REQUIRE(Gp.is_zero(W.alpha_plus(L.b(0))));
    Coords y = W.plus().add(L.b(0), L.b(1));
    REQUIRE(Gp.is_zero(W.alpha_plus(y)));
    // tau(a1, h) + b1: defect partial(mu(tau, b1)) = partial(h) = 1
    Coords t = W.tau(L.a(0), Coords{1});
    REQUIRE(Gp.equal(W.alpha_plus(W.plus().add(t, L.b(0))), Coords{1}));
    REQUIRE(sample_axioms(W, 9, 300).ok());
}

TEST_CASE("sampled axioms on standard forms") {
    std::vector<FormParameter> params{trivial_parameter(FgAbGroup(), -1), trivial_parameter(FgAbGroup{2}, -1),
                                      trivial_parameter(FgAbGroup{6}, -1), trivial_parameter(FgAbGroup{2, 4}, -1),
                                      z2_parameter(), testing_support::mixed_parameter(),
                                      testing_support::quadratic_parameter(), trivial_parameter(FgAbGroup{0}, -1)};
    for (const auto& P : params)
        for (std::size_t g = 0; g <= 3; ++g) {
            WallForm W = standard_form(g, P);
            REQUIRE(check_axioms(W).ok());
            REQUIRE(sample_axioms(W, g + 1, 50).ok());
        }
}

TEST_CASE("duality maps") {
    FgAbGroup H{2};
    WallForm W = standard_form(1, trivial_parameter(H, -1));
    StandardLayout L(1, H);
    SECTION("T1(b)") {
        HMap f = dual_of_plus(W, L.b(0));
        REQUIRE(f.minus()(L.a(0)) == Coords{1});
        REQUIRE(H.is_zero(f.plus()(L.b(0))));
    }
    SECTION("T0(0) is zero") {
        HMap f = dual_of_minus(W, W.minus().zero());
        REQUIRE(f.plus().matrix().is_zero());
    }
    SECTION("T1(tau(a, h)) sends b to h") {
        HMap f = dual_of_plus(W, W.tau(L.a(0), Coords{1}));
        REQUIRE(f.plus()(L.b(0)) == Coords{1});
        REQUIRE(f.minus()(L.a(0)) == Coords{0});
    }
}

TEST_CASE("non-singularity") {
    for (const auto& H : {FgAbGroup(), FgAbGroup{2}, FgAbGroup{6}, FgAbGroup{2, 4}})
        for (std::size_t g = 0; g <= 2; ++g) REQUIRE(is_nonsingular(standard_form(g, trivial_parameter(H, -1))).nonsingular);

    SECTION("zero pairing on a nonzero pair") {
        FormParameter P = trivial_parameter(FgAbGroup(), -1);
        WallFormData d{P, HPair(FgAbGroup(), FgAbGroup{0}, FgAbGroup{0}, {}), IntMatrix(1, 1), {Coords{}}, {Coords{}}, {Coords{}}};
        REQUIRE_FALSE(is_nonsingular(make_wall_form(d)).nonsingular);
    }
    SECTION("lambda = 2 has cokernel Z/2") {
        WallFormData d = standard_form_data(1, trivial_parameter(FgAbGroup(), -1));
        d.lambda(0, 0) = 2;
        NonsingularityReport r = is_nonsingular(make_wall_form(d));
        REQUIRE_FALSE(r.nonsingular);
        REQUIRE(r.minus_side.kernel.empty());
        REQUIRE(r.minus_side.cokernel == FgAbGroup{2});
    }
}

TEST_CASE("morphism validation") {
    FgAbGroup H{2};
    FormRef W1 = standard(1, H), W2 = standard(2, H);
    StandardLayout L(2, H);
    SECTION("standard inclusion") { REQUIRE_NOTHROW(block_inclusion(W1, W2)); }
    SECTION("a -> a1 + a2, b -> b1") {
        Frame fr{{W2->minus().add(L.a(0), L.a(1))}, {L.b(0)}};
        WallMorphism f = morphism_from_frame(W1, W2, fr);
        REQUIRE(W2->lambda(fr.xs[0], fr.ys[0]) == 1);
        REQUIRE(H.is_zero(W2->mu(fr.ys[0], fr.ys[0])));
        REQUIRE(f.apply_minus(Coords{1}) == Coords{1, 1});
    }
    SECTION("a -> a1, b -> 2 b1 breaks lambda") {
        Frame fr{{L.a(0)}, {W2->plus().scale(2, L.b(0))}};
        try {
            morphism_from_frame(W1, W2, fr);
            FAIL("expected a preservation violation");
        } catch (const PreservationViolation& e) {
            REQUIRE(e.which() == "lambda");
        }
    }
    SECTION("generator checks agree with element-level evaluation") {
        std::mt19937_64 rng(21);
        std::uniform_int_distribution<long> d(-1, 1);
        ElementSampler sample(4, 3);
        int accepted = 0;
        for (int t = 0; t < 300; ++t) {
            Coords x(2), y(L.plus_size());
            for (auto& c : x) c = d(rng);
            for (auto& c : y) c = d(rng);
            bool valid = true;
            try {
                WallMorphism f = morphism_from_frame(W1, W2, Frame{{x}, {y}});
                ++accepted;
                for (int s = 0; s < 10; ++s) {
                    Coords u = sample(1), v = sample(W1->plus().size()), w = sample(W1->plus().size());
                    REQUIRE(W2->lambda(f.apply_minus(u), f.apply_plus(v)) == W1->lambda(u, v));
                    REQUIRE(H.equal(W2->mu(f.apply_plus(v), f.apply_plus(w)), W1->mu(v, w)));
                }
            } catch (const PreservationViolation&) {
                valid = false;
            }
            bool expected = W2->lambda(x, y) == 1 && H.is_zero(W2->mu(y, y));
            REQUIRE(valid == expected);
        }
        REQUIRE(accepted > 0);
    }
    SECTION("inverse of an automorphism") {
        testing_support::AutomorphismSampler gen(W2, 3);
        for (int t = 0; t < 20; ++t) {
            WallMorphism f = gen.automorphism(6);
            REQUIRE(is_isomorphism(f));
            REQUIRE(compose(inverse(f), f) == identity_morphism(W2));
        }
    }
}

TEST_CASE("orthogonal complements") {
    FgAbGroup H{2};
    FormRef W1 = standard(1, H), W2 = standard(2, H);
    StandardLayout L(2, H);
    SECTION("of a block inclusion") {
        SubWallForm c = orthogonal_complement(image(block_inclusion(W1, W2)));
        SubWallForm expected = image(block_inclusion(W1, W2, 1));
        REQUIRE(same_subform(c, expected));
    }
    SECTION("of the zero sub-form") {
        SubWallForm zero{W2, {}};
        REQUIRE(same_subform(orthogonal_complement(zero), whole_form(W2)));
    }
    SECTION("membership agrees with direct evaluation on a box") {
        Frame fr{{W2->minus().add(L.a(0), L.a(1))}, {L.b(0)}};
        SubWallForm N = image(morphism_from_frame(W1, W2, fr));
        SubWallForm C = orthogonal_complement(N);
        for (long p = -2; p <= 2; ++p)
            for (long q = -2; q <= 2; ++q) {
                Coords x{p, q};
                bool perp = true;
                for (const auto& y : N.gens.plus) perp = perp && W2->lambda(x, y) == 0;
                REQUIRE(contains_minus(C, x) == perp);
            }
        for (long t1 = 0; t1 < 2; ++t1)
            for (long t2 = 0; t2 < 2; ++t2)
                for (long u = -2; u <= 2; ++u)
                    for (long v = -2; v <= 2; ++v) {
                        Coords y(4);
                        y[L.tau_index(0, 0)] = t1;
                        y[L.tau_index(1, 0)] = t2;
                        y[L.b_index(0)] = u;
                        y[L.b_index(1)] = v;
                        bool perp = true;
                        for (const auto& x : N.gens.minus) perp = perp && W2->lambda(x, y) == 0;
                        for (const auto& z : N.gens.plus) perp = perp && H.is_zero(W2->mu(y, z));
                        REQUIRE(contains_plus(C, y) == perp);
                    }
    }
    SECTION("a sub-form and its complement rebuild the ambient form") {
        FormRef W3 = standard(3, H);
        testing_support::AutomorphismSampler gen(W3, 8);
        for (int t = 0; t < 10; ++t) {
            WallMorphism f = compose(gen.automorphism(5), block_inclusion(W1, W3));
            SubFormStructure c = as_form(orthogonal_complement(image(f)));
            REQUIRE(c.form->minus().size() == 2);
            REQUIRE(are_orthogonal(image(f), image(c.inclusion)));
        }
    }
}

TEST_CASE("orthogonal sums") {
    for (const auto& H : {FgAbGroup(), FgAbGroup{2}, FgAbGroup{2, 4}}) {
        FormRef W1 = standard(1, H);
        PerpSum s = perp_sum(W1, W1);
        REQUIRE(*s.form == standard_form(2, W1->param()));
        PerpSum z = perp_sum(W1, share(zero_form(W1->param())));
        REQUIRE(*z.form == *W1);
        REQUIRE(are_orthogonal(image(s.inj_first), image(s.inj_second)));
    }
    SECTION("sums of sub-forms stay valid") {
        FgAbGroup H{2};
        FormRef W3 = standard(3, H);
        testing_support::AutomorphismSampler gen(W3, 12);
        for (int t = 0; t < 5; ++t) {
            WallMorphism f = compose(gen.automorphism(4), block_inclusion(standard(1, H), W3));
            FormRef A = as_form(image(f)).form;
            FormRef B = as_form(orthogonal_complement(image(f))).form;
            PerpSum s = perp_sum(A, B);
            REQUIRE(check_axioms(*s.form).ok());
            REQUIRE(is_nonsingular(*s.form).nonsingular);
        }
    }
    SECTION("parameter mismatch") {
        REQUIRE_THROWS_AS(perp_sum(standard(1, FgAbGroup{2}), share(standard_form(1, z2_parameter()))), ParameterMismatch);
    }
}
