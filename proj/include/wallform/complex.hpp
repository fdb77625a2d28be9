#pragma once

/** @file complex.hpp
 *  @brief Flag (clique) complexes of finite graphs and their links.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wallform/errors.hpp"

namespace wallform {

using Simplex = std::vector<std::size_t>;

/** Dense bitset rows; enough for the vertex counts a bounded window produces. */
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;
    explicit AdjacencyMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    std::size_t size() const { return n_; }
    bool operator()(std::size_t i, std::size_t j) const { return (row(i)[j / 64] >> (j % 64)) & 1U; }
    void set(std::size_t i, std::size_t j) {
        if (i == j) throw InvalidInput("a vertex cannot be adjacent to itself");
        bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
        bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
    }
    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
    std::size_t words() const { return words_; }

    std::size_t degree(std::size_t i) const {
        std::size_t d = 0;
        for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(__builtin_popcountll(row(i)[w]));
        return d;
    }
    std::size_t edge_count() const {
        std::size_t e = 0;
        for (std::size_t i = 0; i < n_; ++i) e += degree(i);
        return e / 2;
    }

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/** The flag complex of a graph, simplices up to dimension max_dim. */
class CliqueComplex {
public:
    CliqueComplex() = default;
    CliqueComplex(AdjacencyMatrix adjacency, std::size_t max_dim, std::vector<std::size_t> labels = {})
        : adj_(std::move(adjacency)), max_dim_(max_dim), labels_(std::move(labels)) {
        if (labels_.empty())
            for (std::size_t i = 0; i < adj_.size(); ++i) labels_.push_back(i);
        if (labels_.size() != adj_.size()) throw InvalidInput("one label per vertex");
    }

    static CliqueComplex from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                    std::size_t max_dim) {
        AdjacencyMatrix a(n);
        for (auto [i, j] : edges) a.set(i, j);
        return CliqueComplex(std::move(a), max_dim);
    }

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t max_dim() const { return max_dim_; }
    const AdjacencyMatrix& adjacency() const { return adj_; }
    bool adjacent(std::size_t i, std::size_t j) const { return adj_(i, j); }
    // index of each vertex in the complex it was cut from
    const std::vector<std::size_t>& labels() const { return labels_; }

    bool contains(const Simplex& s) const {
        if (s.empty() || s.size() > max_dim_ + 1) return false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] >= vertex_count()) return false;
            for (std::size_t j = i + 1; j < s.size(); ++j)
                if (s[i] == s[j] || !adj_(s[i], s[j])) return false;
        }
        return true;
    }

    /** Visits the dim-simplices in lexicographic order; the visitor returns false to stop. */
    void for_each_simplex(std::size_t dim, const std::function<bool(const Simplex&)>& visit) const {
        if (dim > max_dim_) return;
        const std::size_t W = adj_.words();
        std::vector<std::uint64_t> all(W, 0);
        for (std::size_t v = 0; v < vertex_count(); ++v) all[v / 64] |= std::uint64_t{1} << (v % 64);
        Simplex cur;
        // candidates at each depth: common neighbours of cur that come after its last vertex
        std::vector<std::vector<std::uint64_t>> cand(dim + 1, std::vector<std::uint64_t>(W, 0));
        cand[0] = all;
        bool stop = false;
        std::function<void()> rec = [&]() {
            const std::size_t depth = cur.size();
            if (depth == dim + 1) {
                if (!visit(cur)) stop = true;
                return;
            }
            for (std::size_t w = 0; w < W && !stop; ++w) {
                std::uint64_t bits = cand[depth][w];
                while (bits && !stop) {
                    std::size_t v = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
                    bits &= bits - 1;
                    if (depth < dim) {
                        auto& next = cand[depth + 1];
                        const std::uint64_t* r = adj_.row(v);
                        std::fill(next.begin(), next.end(), 0);
                        for (std::size_t u = v / 64; u < W; ++u) next[u] = cand[depth][u] & r[u];
                        next[v / 64] &= (v % 64 == 63) ? 0 : ~((std::uint64_t{2} << (v % 64)) - 1);
                    }
                    cur.push_back(v);
                    rec();
                    cur.pop_back();
                }
            }
        };
        rec();
    }

    std::vector<Simplex> simplices(std::size_t dim, std::size_t limit = SIZE_MAX) const {
        std::vector<Simplex> out;
        bool over = false;
        for_each_simplex(dim, [&](const Simplex& s) {
            if (out.size() >= limit) {
                over = true;
                return false;
            }
            out.push_back(s);
            return true;
        });
        if (over) throw BudgetExhausted("more than " + std::to_string(limit) + " simplices in dimension " + std::to_string(dim));
        return out;
    }

    std::size_t count(std::size_t dim) const {
        std::size_t c = 0;
        for_each_simplex(dim, [&](const Simplex&) {
            ++c;
            return true;
        });
        return c;
    }

    /** Induced flag complex on the given vertices, relabelled 0..k-1. */
    CliqueComplex induced(const std::vector<std::size_t>& keep, std::size_t max_dim) const {
        AdjacencyMatrix a(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = i + 1; j < keep.size(); ++j)
                if (adj_(keep[i], keep[j])) a.set(i, j);
        std::vector<std::size_t> labels;
        for (auto v : keep) labels.push_back(labels_[v]);
        return CliqueComplex(std::move(a), max_dim, std::move(labels));
    }

private:
    AdjacencyMatrix adj_;
    std::size_t max_dim_ = 0;
    std::vector<std::size_t> labels_;
};

inline std::vector<std::size_t> common_neighbours(const CliqueComplex& X, const Simplex& s) {
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < X.vertex_count(); ++v) {
        bool all = true;
        for (auto u : s)
            if (u == v || !X.adjacent(u, v)) {
                all = false;
                break;
            }
        if (all) keep.push_back(v);
    }
    return keep;
}

/** Link of a simplex in a flag complex: the induced complex on the common neighbours. */
inline CliqueComplex link(const CliqueComplex& X, const Simplex& s) {
    if (s.empty()) return X;
    if (!X.contains(s)) throw SimplexNotFound("simplex is not in the complex");
    std::size_t dim = X.max_dim() >= s.size() ? X.max_dim() - s.size() : 0;
    return X.induced(common_neighbours(X, s), dim);
}

}  // namespace wallform
