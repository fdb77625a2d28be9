#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace wallform;
using testing_support::standard;

namespace {

CliqueComplex full_simplex(std::size_t n, std::size_t max_dim) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return CliqueComplex::from_edges(n, e, max_dim);
}

CliqueComplex hexagon(std::size_t max_dim) {
    // a flag complex fills every triangle, so the circle needs at least four vertices
    return CliqueComplex::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}, max_dim);
}

}  // namespace

TEST_CASE("vertices of bounded windows") {
    SECTION("W^1 over 0 at bound 1, against the brute-force box") {
        FormRef W1 = standard(1, FgAbGroup());
        auto v = enumerate_vertices(W1, 1);
        REQUIRE(v.size() == 2);
        int count = 0;
        for (long x = -1; x <= 1; ++x)
            for (long y = -1; y <= 1; ++y)
                if (x * y == 1) ++count;
        REQUIRE(count == 2);
        REQUIRE(frame_of(v[0]).xs[0] == Coords{-1});
        REQUIRE(frame_of(v[1]).xs[0] == Coords{1});
    }
    SECTION("zero form") {
        REQUIRE(enumerate_vertices(share(zero_form(trivial_parameter(FgAbGroup(), -1))), 1).empty());
    }
    SECTION("monotone in the bound") {
        FormRef W2 = standard(2, FgAbGroup());
        auto v1 = enumerate_vertices(W2, 1);
        auto v2 = enumerate_vertices(W2, 2);
        REQUIRE(v1.size() <= v2.size());
        for (const auto& f : v1) REQUIRE(std::find(v2.begin(), v2.end(), f) != v2.end());
    }
    SECTION("bound below 1") { REQUIRE_THROWS_AS(enumerate_vertices(standard(1, FgAbGroup()), 0), InvalidInput); }
}

TEST_CASE("complexes of morphisms") {
    SECTION("two isolated points for W^1") {
        LComplex L = build_window(standard(1, FgAbGroup()), 1, 1);
        REQUIRE(L.vertices.size() == 2);
        REQUIRE(L.complex.adjacency().edge_count() == 0);
        REQUIRE(homology(L.complex, 0).betti[0] == 2);
    }
    SECTION("block inclusions span a simplex") {
        FormRef W3 = standard(3, FgAbGroup{2});
        FormRef W1 = standard(1, FgAbGroup{2});
        std::vector<WallMorphism> v;
        for (std::size_t i = 0; i < 3; ++i) v.push_back(block_inclusion(W1, W3, i));
        LComplex L = build_complex(W3, v, 2);
        REQUIRE(L.complex.count(2) == 1);
    }
    SECTION("single vertex") {
        FormRef W1 = standard(1, FgAbGroup());
        LComplex L = build_complex(W1, {identity_morphism(W1)}, 1);
        REQUIRE(L.complex.count(0) == 1);
        REQUIRE(L.complex.count(1) == 0);
    }
    SECTION("adjacency agrees with direct evaluation of the pairings") {
        FormRef W2 = standard(2, FgAbGroup());
        LComplex L = build_window(W2, 1, 1);
        const auto& V = L.vertices;
        for (std::size_t i = 0; i < V.size(); ++i)
            for (std::size_t j = i + 1; j < V.size(); ++j) {
                Frame a = frame_of(V[i]), b = frame_of(V[j]);
                bool perp = W2->lambda(a.xs[0], b.ys[0]) == 0 && W2->lambda(b.xs[0], a.ys[0]) == 0;
                // over H = 0 the complement condition is lambda only, and perpendicular pairs are independent
                REQUIRE(L.complex.adjacent(i, j) == perp);
            }
    }
    SECTION("edges at a smaller bound embed at a larger one") {
        FormRef W2 = standard(2, FgAbGroup());
        LComplex a = build_window(W2, 1, 1), b = build_window(W2, 2, 1);
        std::vector<std::size_t> where;
        for (const auto& f : a.vertices) where.push_back(std::find(b.vertices.begin(), b.vertices.end(), f) - b.vertices.begin());
        for (std::size_t i = 0; i < a.vertices.size(); ++i)
            for (std::size_t j = i + 1; j < a.vertices.size(); ++j)
                REQUIRE(a.complex.adjacent(i, j) == b.complex.adjacent(where[i], where[j]));
    }
}

TEST_CASE("homology") {
    SECTION("circle") {
        auto h = homology(hexagon(2), 1);
        REQUIRE(h.betti == std::vector<long>{1, 1});
    }
    SECTION("full simplex on 4 vertices") {
        auto h = homology(full_simplex(4, 4), 3);
        REQUIRE(h.betti == std::vector<long>{1, 0, 0, 0});
    }
    SECTION("two points") {
        auto h = homology(CliqueComplex::from_edges(2, {}, 1), 0);
        REQUIRE(h.betti[0] == 2);
    }
    SECTION("octahedron is a 2-sphere") {
        std::vector<std::pair<std::size_t, std::size_t>> e;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i + 1; j < 6; ++j)
                if (j != i + 3) e.emplace_back(i, j);
        auto h = homology(CliqueComplex::from_edges(6, e, 3), 2);
        REQUIRE(h.betti == std::vector<long>{1, 0, 1});
        REQUIRE(h.torsion[1].empty());
    }
    SECTION("degree must sit below the ceiling") { REQUIRE_THROWS_AS(homology(full_simplex(3, 1), 1), InvalidInput); }
    SECTION("euler characteristic matches the simplex census") {
        std::mt19937_64 rng(31);
        for (int t = 0; t < 40; ++t) {
            std::size_t n = 4 + t % 6;
            CliqueComplex X = testing_support::random_graph(rng, n, 0.5, n);
            auto h = homology(X, n - 1);
            long chi = 0, alt = 0;
            for (std::size_t k = 0; k < n; ++k) {
                long sign = k % 2 ? -1 : 1;
                chi += sign * static_cast<long>(h.simplex_counts[k]);
                alt += sign * h.betti[k];
            }
            REQUIRE(chi == alt);
            REQUIRE(h.betti[0] >= 1);
        }
    }
}

TEST_CASE("flag property and links") {
    SECTION("fixed links") {
        auto full = full_simplex(4, 3);
        REQUIRE(link(full, {0}).count(2) == 1);
        REQUIRE(link(full, {0, 1}).count(1) == 1);
        CliqueComplex tri = CliqueComplex::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, 1);
        REQUIRE(link(tri, {0}).count(0) == 2);
        REQUIRE_THROWS_AS(link(tri, {0, 5}), SimplexNotFound);
        REQUIRE_THROWS_AS(link(hexagon(2), {0, 2}), SimplexNotFound);
    }
    SECTION("random graphs against brute force") {
        std::mt19937_64 rng(13);
        for (int t = 0; t < 40; ++t) {
            std::size_t n = 1 + t % 12;
            REQUIRE(testing_support::flag_and_link_agree(testing_support::random_graph(rng, n, 0.6, 4)));
        }
    }
    SECTION("simplex limit") {
        REQUIRE_THROWS_AS(full_simplex(8, 3).simplices(2, 10), BudgetExhausted);
    }
}

TEST_CASE("Cohen-Macaulay reports") {
    SECTION("full simplex on 5 vertices") {
        auto r = lcm_report(full_simplex(5, 4), 2);
        REQUIRE(r.weakly_cm);
        REQUIRE(r.locally_cm);
    }
    SECTION("two disjoint edges") {
        auto r = lcm_report(CliqueComplex::from_edges(4, {{0, 1}, {2, 3}}, 1), 1);
        REQUIRE_FALSE(r.weakly_cm);
        REQUIRE(r.levels[0].level == -1);
        REQUIRE(r.levels[0].failures == 1);
    }
    SECTION("circle is weakly Cohen-Macaulay of dimension 1 but not 2") {
        REQUIRE(lcm_report(hexagon(2), 1).weakly_cm);
        REQUIRE_FALSE(lcm_report(hexagon(2), 2).weakly_cm);
    }
}

TEST_CASE("connectivity reports") {
    SECTION("W^1 over 0") {
        ConnectivityReport r = connectivity_report(standard(1, FgAbGroup()), 1, 0, 1, 2);
        REQUIRE(r.nonempty);
        REQUIRE(r.homology.betti[0] == 2);
        REQUIRE_FALSE(r.connected_expected);
        REQUIRE(r.label() == "EVIDENCE-AT-BOUND-1");
    }
    SECTION("W^2 over Z/2") {
        ConnectivityReport r = connectivity_report(standard(2, FgAbGroup{2}), 2, 1, 1, 2);
        REQUIRE(r.nonempty);
        REQUIRE_FALSE(r.nonempty_expected);
    }
}
