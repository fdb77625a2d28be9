#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace wallform;

TEST_CASE("probe pairs") {
    FgAbGroup H{2};
    HPair p0 = probe_zero(H);
    REQUIRE(p0.minus().is_trivial());
    REQUIRE(p0.plus() == FgAbGroup{0});
    HPair p1 = probe_one(H);
    REQUIRE(p1.minus() == FgAbGroup{0});
    REQUIRE(p1.plus() == H);
    REQUIRE(p1.tau(Coords{1}, Coords{1}) == Coords{1});
    REQUIRE(p1.tau(Coords{2}, Coords{1}) == Coords{0});

    HPair trivial = probe_one(FgAbGroup());
    REQUIRE(trivial.plus().is_trivial());
    REQUIRE(probe(H, 0) == p0);
    REQUIRE(probe(H, 1) == p1);
}

TEST_CASE("pairs reject non-bilinear tau tables") {
    // Z/3 (x) Z/2 = 0, so tau must vanish
    REQUIRE_THROWS_AS(make_hpair(FgAbGroup{2}, FgAbGroup{3}, FgAbGroup{2}, {Coords{1}}), BilinearityViolation);
    REQUIRE_NOTHROW(make_hpair(FgAbGroup{2}, FgAbGroup{3}, FgAbGroup{2}, {Coords{0}}));
    REQUIRE_THROWS_AS(make_hpair(FgAbGroup{2}, FgAbGroup{0}, FgAbGroup{2}, {}), InvalidInput);
}

TEST_CASE("direct sums of pairs") {
    for (const auto& H : {FgAbGroup(), FgAbGroup{2}, FgAbGroup{2, 4}}) {
        HPair A = probe_one(H);
        HPairSum s0 = hpair_direct_sum(A, HPair::zero(H));
        REQUIRE(s0.pair == A);

        // P0 (+) P1 is the pair underlying W^1 when the torsion of H comes first
        HPairSum s = hpair_direct_sum(probe_zero(H), probe_one(H));
        HPair W1 = standard_form(1, trivial_parameter(H, -1)).pair();
        REQUIRE(s.pair.minus() == W1.minus());
        REQUIRE(s.pair.plus() == W1.plus());
    }
    SECTION("free H: equal up to reordering of the plus generators") {
        FgAbGroup H{0};
        HPairSum s = hpair_direct_sum(probe_zero(H), probe_one(H));
        HPair W1 = standard_form(1, trivial_parameter(H, -1)).pair();
        REQUIRE(s.pair.plus() == W1.plus());
        REQUIRE(s.pair.tau(Coords{1}, Coords{1}) == Coords{0, 1});
        REQUIRE(W1.tau(Coords{1}, Coords{1}) == Coords{1, 0});
    }
    SECTION("associative") {
        FgAbGroup H{2};
        HPair a = probe_one(H), b = probe_zero(H), c = make_hpair(H, FgAbGroup{4}, FgAbGroup{2}, {Coords{1}});
        HPair left = hpair_direct_sum(hpair_direct_sum(a, b).pair, c).pair;
        HPair right = hpair_direct_sum(a, hpair_direct_sum(b, c).pair).pair;
        REQUIRE(left.minus() == right.minus());
        REQUIRE(left.plus() == right.plus());
    }
    SECTION("different H") { REQUIRE_THROWS_AS(hpair_direct_sum(probe_one(FgAbGroup{2}), probe_one(FgAbGroup{3})), HMismatch); }
}

TEST_CASE("H-maps") {
    FgAbGroup H{2};
    HPair P1 = probe_one(H);
    SECTION("identity and zero") {
        HMap id = make_hmap(P1, P1, IntMatrix{{1}}, IntMatrix{{1}});
        SubHPair k = hmap_kernel(id);
        REQUIRE(k.minus.empty());
        REQUIRE(k.plus.empty());
        HMap zero = make_hmap(P1, P1, IntMatrix{{0}}, IntMatrix{{0}});
        SubHPair kz = hmap_kernel(zero);
        REQUIRE(kz.minus.size() == 1);
        REQUIRE(kz.plus.size() == 1);
        REQUIRE(is_sub_hpair(P1, kz));
    }
    SECTION("reduction Z -> Z/2 on the plus side") {
        HPair src(FgAbGroup(), FgAbGroup(), FgAbGroup{0}, {});
        HPair dst(FgAbGroup(), FgAbGroup(), FgAbGroup{2}, {});
        HMap f = make_hmap(src, dst, IntMatrix(0, 0), IntMatrix{{1}});
        SubHPair k = hmap_kernel(f);
        REQUIRE(k.plus.size() == 1);
        REQUIRE(abs(k.plus[0][0]) == 2);
    }
    SECTION("square must commute") {
        // (1, 0): tau(1, h) = h, but f+ kills it
        REQUIRE_THROWS_AS(make_hmap(P1, P1, IntMatrix{{1}}, IntMatrix{{0}}), InvalidInput);
    }
    SECTION("make_hmap agrees with the element-level square") {
        HPair W = standard_form(2, trivial_parameter(H, -1)).pair();
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<long> d(-2, 2);
        int accepted = 0;
        for (int t = 0; t < 200; ++t) {
            IntMatrix fm(1, 2), fp(1, W.plus().size());
            for (std::size_t i = 0; i < 2; ++i) fm(0, i) = d(rng);
            for (std::size_t i = 0; i < W.plus().size(); ++i) fp(0, i) = d(rng);
            bool square = true;
            for (long x0 = -1; x0 <= 1; ++x0)
                for (long x1 = -1; x1 <= 1; ++x1) {
                    Coords x{x0, x1};
                    Coords lhs = (fp * W.tau(x, Coords{1}));
                    Coords rhs = P1.tau(fm * x, Coords{1});
                    if (!H.equal(lhs, rhs)) square = false;
                }
            bool ok = true;
            try {
                make_hmap(W, P1, fm, fp);
            } catch (const InvalidInput&) {
                ok = false;
            }
            REQUIRE(ok == square);
            accepted += ok;
        }
        REQUIRE(accepted > 0);
    }
}

TEST_CASE("homomorphisms into probes") {
    FgAbGroup H{2};
    SECTION("Hom(P0, P0) = Z") {
        REQUIRE(hom_to_probe(probe_zero(H), 0).group() == FgAbGroup{0});
    }
    SECTION("Hom((0, Z/2), P0) = 0") {
        HPair M(FgAbGroup(), FgAbGroup(), FgAbGroup{2}, {});
        REQUIRE(hom_to_probe(M, 0).group().is_trivial());
    }
    SECTION("Hom(W^1, P1) matches exhaustive search") {
        HPair W = standard_form(1, trivial_parameter(H, -1)).pair();
        ProbeHomGroup homs = hom_to_probe(W, 1);
        // f-(a) = c free, f+(tau) forced to c mod 2, f+(b) free in Z/2
        REQUIRE(homs.group() == FgAbGroup{2, 0});
        HPair P1 = probe_one(H);
        int valid = 0;
        for (long c = -3; c <= 3; ++c)
            for (long t = 0; t < 2; ++t)
                for (long b = 0; b < 2; ++b) {
                    IntMatrix fm{{c}}, fp{{t, b}};
                    try {
                        HMap f = make_hmap(W, P1, fm, fp);
                        ++valid;
                        auto co = homs.coordinates(f);
                        REQUIRE(co);
                        REQUIRE(homs.element(*co) == f);
                    } catch (const InvalidInput&) {
                    }
                }
        REQUIRE(valid == 14);
    }
    SECTION("every group element is an H-map") {
        HPair W = standard_form(2, trivial_parameter(FgAbGroup{2, 4}, -1)).pair();
        for (int nu = 0; nu <= 1; ++nu) {
            ProbeHomGroup homs = hom_to_probe(W, nu);
            HPair P = probe(W.H(), nu);
            for (std::size_t k = 0; k < homs.group().size(); ++k) {
                HMap f = homs.element(homs.group().generator(k));
                REQUIRE_NOTHROW(make_hmap(W, P, f.minus().matrix(), f.plus().matrix()));
            }
        }
    }
}
