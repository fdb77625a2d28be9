#pragma once

/** @file homology.hpp
 *  @brief Integral simplicial homology of clique complexes and Cohen-Macaulay style reports.
 */

#include <map>
#include <numeric>
#include <set>

#include "wallform/complex.hpp"
#include "wallform/smith.hpp"

namespace wallform {

struct BoundaryReduction {
    std::size_t rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1
};

/** Rank and torsion of a sparse integer matrix (columns of row -> value). Unit pivots are
 *  eliminated sparsely; whatever is left goes through a dense Smith form. */
inline BoundaryReduction reduce_sparse(std::vector<std::map<std::size_t, Int>> cols, std::size_t row_count) {
    BoundaryReduction out;
    std::vector<std::set<std::size_t>> rows(row_count);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : cols[c]) rows[r].insert(c);

    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].empty()) continue;
            std::size_t best = row_count;
            for (const auto& [r, v] : cols[c])
                if (abs(v) == 1 && (best == row_count || rows[r].size() < rows[best].size())) best = r;
            if (best == row_count) continue;
            const std::size_t r = best;
            const Int pivot = cols[c][r];
            std::vector<std::size_t> others(rows[r].begin(), rows[r].end());
            for (std::size_t j : others) {
                if (j == c) continue;
                Int factor = cols[j][r] * pivot;
                for (const auto& [rr, v] : cols[c]) {
                    Int& e = cols[j][rr];
                    e -= factor * v;
                    if (e == 0) {
                        cols[j].erase(rr);
                        rows[rr].erase(j);
                    } else {
                        rows[rr].insert(j);
                    }
                }
            }
            for (const auto& [rr, v] : cols[c]) rows[rr].erase(c);
            cols[c].clear();
            ++out.rank;
            progress = true;
        }
    }

    std::vector<std::size_t> live_cols;
    std::map<std::size_t, std::size_t> live_rows;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].empty()) continue;
        live_cols.push_back(c);
        for (const auto& [r, v] : cols[c]) live_rows.emplace(r, 0);
    }
    if (live_cols.empty()) return out;
    std::size_t idx = 0;
    for (auto& [r, i] : live_rows) i = idx++;
    IntMatrix dense(live_rows.size(), live_cols.size());
    for (std::size_t j = 0; j < live_cols.size(); ++j)
        for (const auto& [r, v] : cols[live_cols[j]]) dense(live_rows[r], j) = v;
    for (const auto& d : nonzero_invariant_factors(dense)) {
        ++out.rank;
        if (d > 1) out.torsion.push_back(d);
    }
    return out;
}

namespace detail {

inline std::size_t face_index(const std::vector<Simplex>& faces, const Simplex& f) {
    auto it = std::lower_bound(faces.begin(), faces.end(), f);
    if (it == faces.end() || *it != f) throw std::logic_error("face missing from the simplex list");
    return static_cast<std::size_t>(it - faces.begin());
}

// rank of the vertex-edge boundary: vertices minus components
inline std::size_t edge_boundary_rank(std::size_t n, const std::vector<Simplex>& edges) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::size_t rank = 0;
    for (const auto& e : edges) {
        std::size_t a = find(e[0]), b = find(e[1]);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
            ++rank;
        }
    }
    return rank;
}

}  // namespace detail

inline BoundaryReduction boundary_reduction(const std::vector<Simplex>& cells, const std::vector<Simplex>& faces) {
    std::vector<std::map<std::size_t, Int>> cols(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const Simplex& s = cells[c];
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex f;
            for (std::size_t j = 0; j < s.size(); ++j)
                if (j != i) f.push_back(s[j]);
            cols[c][detail::face_index(faces, f)] = (i % 2 == 0) ? 1 : -1;
        }
    }
    return reduce_sparse(std::move(cols), faces.size());
}

struct HomologyReport {
    std::size_t max_degree = 0;
    std::vector<std::size_t> simplex_counts;  // dimensions 0 .. max_degree + 1
    std::vector<long> betti;
    std::vector<std::vector<Int>> torsion;

    bool vanishes(std::size_t i) const { return betti[i] == 0 && torsion[i].empty(); }
};

/** H_0 .. H_max_degree over Z. Needs simplices up to max_degree + 1, so max_degree < X.max_dim(). */
inline HomologyReport homology(const CliqueComplex& X, std::size_t max_degree, std::size_t simplex_limit = SIZE_MAX) {
    if (max_degree >= X.max_dim())
        throw InvalidInput("homology in degree " + std::to_string(max_degree) + " needs a build ceiling above it");
    HomologyReport h;
    h.max_degree = max_degree;
    std::vector<std::vector<Simplex>> cells;
    for (std::size_t k = 0; k <= max_degree + 1; ++k) {
        cells.push_back(X.simplices(k, simplex_limit));
        h.simplex_counts.push_back(cells.back().size());
    }
    // boundary[k] is the boundary from dimension k to k - 1
    std::vector<BoundaryReduction> boundary(max_degree + 2);
    if (max_degree + 1 >= 1) boundary[1].rank = detail::edge_boundary_rank(X.vertex_count(), cells[1]);
    for (std::size_t k = 2; k <= max_degree + 1; ++k) boundary[k] = boundary_reduction(cells[k], cells[k - 1]);
    for (std::size_t k = 0; k <= max_degree; ++k) {
        long b = static_cast<long>(cells[k].size()) - static_cast<long>(boundary[k].rank) -
                 static_cast<long>(boundary[k + 1].rank);
        h.betti.push_back(b);
        h.torsion.push_back(boundary[k + 1].torsion);
    }
    return h;
}

/** Homological k-connectivity: vacuous for k <= -2, nonempty for k = -1, else H_0 = Z and H_i = 0 for 1 <= i <= k. */
inline bool homology_connected(const CliqueComplex& X, long k, std::size_t simplex_limit = SIZE_MAX) {
    if (k <= -2) return true;
    if (X.vertex_count() == 0) return false;
    if (k == -1) return true;
    CliqueComplex full(X.adjacency(), static_cast<std::size_t>(k) + 1, X.labels());
    HomologyReport h = homology(full, static_cast<std::size_t>(k), simplex_limit);
    if (h.betti[0] != 1) return false;
    for (std::size_t i = 1; i <= static_cast<std::size_t>(k); ++i)
        if (!h.vanishes(i)) return false;
    return true;
}

struct LevelReport {
    long level = 0;         // simplex dimension l, -1 for the complex itself
    long connectivity = 0;  // n - l - 2
    bool vacuous = false;
    std::size_t simplices = 0;
    std::size_t failures = 0;
    std::vector<Simplex> failing;  // first few, in vertex labels
};

struct LcmReport {
    std::size_t n = 0;
    std::vector<LevelReport> levels;
    bool weakly_cm = true;    // every level including l = -1
    bool locally_cm = true;   // levels l >= 0

    static constexpr std::size_t kept_failures = 5;
};

/** Checks that the link of every l-simplex is (n - l - 2)-connected in homology, l = -1 .. n - 1.
 *  X is read as the flag complex of its graph. */
inline LcmReport lcm_report(const CliqueComplex& X, std::size_t n, std::size_t simplex_limit = SIZE_MAX) {
    LcmReport r;
    r.n = n;
    CliqueComplex full(X.adjacency(), n, X.labels());
    std::size_t visited = 0;
    for (long l = -1; l <= static_cast<long>(n) - 1; ++l) {
        LevelReport lv;
        lv.level = l;
        lv.connectivity = static_cast<long>(n) - l - 2;
        lv.vacuous = lv.connectivity <= -2;
        auto check = [&](const Simplex& s) {
            ++lv.simplices;
            if (++visited > simplex_limit) throw BudgetExhausted("simplex budget of " + std::to_string(simplex_limit) + " exhausted");
            CliqueComplex lk = X.induced(common_neighbours(X, s), static_cast<std::size_t>(std::max(lv.connectivity, 0L)) + 1);
            if (homology_connected(lk, lv.connectivity, simplex_limit)) return true;
            ++lv.failures;
            if (lv.failing.size() < LcmReport::kept_failures) {
                Simplex named;
                for (auto v : s) named.push_back(X.labels()[v]);
                lv.failing.push_back(std::move(named));
            }
            return true;
        };
        if (!lv.vacuous) {
            if (l == -1) {
                check(Simplex{});
            } else {
                full.for_each_simplex(static_cast<std::size_t>(l), check);
            }
        }
        bool pass = lv.failures == 0;
        r.weakly_cm = r.weakly_cm && pass;
        if (l >= 0) r.locally_cm = r.locally_cm && pass;
        r.levels.push_back(std::move(lv));
    }
    return r;
}

}  // namespace wallform
