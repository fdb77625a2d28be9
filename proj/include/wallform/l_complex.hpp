#pragma once

/** @file l_complex.hpp
 *  @brief Bounded windows of the complex of morphisms W^1 -> M with pairwise orthogonal images.
 */

#include <cstdlib>
#include <thread>

#include "wallform/complement.hpp"
#include "wallform/homology.hpp"
#include "wallform/rank.hpp"

namespace wallform {

/** Every morphism W^1 -> M with a and b sent into the coordinate box of radius bound, ordered
 *  lexicographically by the images (x, y). */
inline std::vector<WallMorphism> enumerate_vertices(const FormRef& M, long bound) {
    if (bound < 1) throw InvalidInput("bound must be at least 1");
    const WallForm& W = *M;
    std::vector<WallMorphism> out;
    if (W.minus().size() == 0) return out;
    SearchBudget unlimited{UINT64_MAX, 0};
    NormShells xshells(W.minus().factors(), bound), yshells(W.plus().factors(), bound);
    auto collect = [&](NormShells& shells, auto&& keep) {
        std::vector<Coords> all;
        for (long t = 0; t <= shells.max_norm(); ++t)
            for (const auto& v : *shells.shell(t, unlimited))
                if (keep(v)) all.push_back(v);
        std::sort(all.begin(), all.end());
        return all;
    };
    auto xs = collect(xshells, [&](const Coords& x) { return W.param().G.minus().is_zero(W.alpha_minus(x)); });
    auto ys = collect(yshells, [&](const Coords& y) {
        return W.H().is_zero(W.mu(y, y)) && W.param().G.plus().is_zero(W.alpha_plus(y));
    });
    FormRef W1 = share(standard_form(1, W.param()));
    for (const auto& x : xs)
        for (const auto& y : ys)
            if (W.lambda(x, y) == 1) out.push_back(morphism_from_frame(W1, M, Frame{{x}, {y}}));
    return out;
}

inline std::size_t thread_cap() {
    std::size_t n = std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WALLFORM_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
    }
    return n;
}

struct LComplex {
    FormRef form;
    long bound = 0;
    std::vector<WallMorphism> vertices;
    CliqueComplex complex;
};

/** Joins two vertices when their images are orthogonal sub-forms. */
inline LComplex build_complex(const FormRef& M, std::vector<WallMorphism> vertices, std::size_t max_dim, long bound = 0) {
    const std::size_t n = vertices.size();
    std::vector<SubWallForm> images;
    for (const auto& v : vertices) {
        if (!(v.target() == *M) || v.source().minus().size() != 1) throw InvalidInput("vertex is not a morphism W^1 -> M");
        images.push_back(image(v));
    }
    std::vector<std::vector<char>> rows(n, std::vector<char>(n, 0));
    auto work = [&](std::size_t start, std::size_t step) {
        for (std::size_t i = start; i < n; i += step)
            for (std::size_t j = i + 1; j < n; ++j) rows[i][j] = are_orthogonal(images[i], images[j]);
    };
    const std::size_t threads = std::min(thread_cap(), std::max<std::size_t>(n, 1));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    }
    AdjacencyMatrix adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rows[i][j]) adj.set(i, j);
    return LComplex{M, bound, std::move(vertices), CliqueComplex(std::move(adj), max_dim)};
}

inline LComplex build_window(const FormRef& M, long bound, std::size_t max_dim) {
    return build_complex(M, enumerate_vertices(M, bound), max_dim, bound);
}

struct ConnectivityReport {
    long bound = 0;
    std::size_t g = 0;
    std::size_t d = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    bool nonempty = false;
    long target_degree = -1;  // floor((g - 4 - d) / 2)
    HomologyReport homology;  // degrees 0 .. max(0, min(max_degree, target_degree))
    bool nonempty_expected = false;   // g >= 2 + d
    bool connected_expected = false;  // g >= 4 + d
    bool degrees_vanish = false;      // H_i = 0 for 1 <= i <= computed degree

    std::string label() const { return "EVIDENCE-AT-BOUND-" + std::to_string(bound); }
};

inline long floor_half(long v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

inline ConnectivityReport connectivity_report(const FormRef& M, std::size_t g, std::size_t d, long bound,
                                              std::size_t max_degree, std::size_t simplex_limit = SIZE_MAX) {
    ConnectivityReport r;
    r.bound = bound;
    r.g = g;
    r.d = d;
    r.target_degree = floor_half(static_cast<long>(g) - 4 - static_cast<long>(d));
    r.nonempty_expected = g >= 2 + d;
    r.connected_expected = g >= 4 + d;
    long top = std::max(0L, std::min(static_cast<long>(max_degree), r.target_degree));
    LComplex L = build_window(M, bound, static_cast<std::size_t>(top) + 1);
    r.vertices = L.vertices.size();
    r.edges = L.complex.adjacency().edge_count();
    r.nonempty = r.vertices > 0;
    r.homology = homology(L.complex, static_cast<std::size_t>(top), simplex_limit);
    r.degrees_vanish = true;
    for (std::size_t i = 1; i <= static_cast<std::size_t>(top); ++i) r.degrees_vanish = r.degrees_vanish && r.homology.vanishes(i);
    return r;
}

}  // namespace wallform
