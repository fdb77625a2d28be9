#pragma once

#include <algorithm>
#include <iterator>
#include <random>

#include "wallform/wallform.hpp"

namespace testing_support {

using namespace wallform;

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

// fraction-free Gaussian elimination
inline Int bareiss_det(IntMatrix a) {
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        choose(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

/** Invariant factors from determinantal divisors: d_k = gcd of all k x k minors. */
inline std::vector<Int> invariant_factors_by_minors(const IntMatrix& A) {
    std::vector<Int> out;
    Int prev = 1;
    for (std::size_t k = 1; k <= std::min(A.rows(), A.cols()); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        choose(A.rows(), k, 0, cur, rs);
        choose(A.cols(), k, 0, cur, cs);
        Int g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                IntMatrix m(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m(i, j) = A(r[i], c[j]);
                g = gcd(g, bareiss_det(m));
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

/** Elementary automorphisms of W^n, each a validated frame. */
class AutomorphismSampler {
public:
    explicit AutomorphismSampler(FormRef W, std::uint64_t seed) : W_(std::move(W)), L_(W_->minus().size(), W_->H()), rng_(seed) {}

    WallMorphism elementary() {
        const std::size_t n = W_->minus().size();
        Frame fr = identity_frame();
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::uniform_int_distribution<int> kind(0, 3);
        int k = n < 2 ? 1 : kind(rng_);
        std::size_t i = pick(rng_), j = pick(rng_);
        while (n >= 2 && j == i) j = pick(rng_);
        switch (k) {
            case 0:
                std::swap(fr.xs[i], fr.xs[j]);
                std::swap(fr.ys[i], fr.ys[j]);
                break;
            case 1:
                fr.xs[i] = W_->minus().neg(fr.xs[i]);
                fr.ys[i] = W_->plus().neg(fr.ys[i]);
                break;
            case 2:
                fr.xs[i] = W_->minus().add(fr.xs[i], L_.a(j));
                fr.ys[j] = W_->plus().sub(fr.ys[j], L_.b(i));
                break;
            default: {
                if (W_->H().size() == 0) return elementary();
                std::uniform_int_distribution<std::size_t> hp(0, W_->H().size() - 1);
                Coords h = W_->H().generator(hp(rng_));
                fr.ys[i] = W_->plus().add(fr.ys[i], W_->tau(L_.a(j), h));
                fr.ys[j] = W_->plus().sub(fr.ys[j], W_->plus().scale(W_->epsilon(), W_->tau(L_.a(i), h)));
                break;
            }
        }
        return morphism_from_frame(W_, W_, fr);
    }

    WallMorphism automorphism(std::size_t steps) {
        WallMorphism f = identity_morphism(W_);
        for (std::size_t s = 0; s < steps; ++s) f = compose(elementary(), f);
        return f;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    Frame identity_frame() const {
        Frame fr;
        for (std::size_t i = 0; i < W_->minus().size(); ++i) {
            fr.xs.push_back(L_.a(i));
            fr.ys.push_back(L_.b(i));
        }
        return fr;
    }

    FormRef W_;
    StandardLayout L_;
    std::mt19937_64 rng_;
};

inline FormRef standard(std::size_t g, const FgAbGroup& H, int eps = -1) {
    return share(standard_form(g, trivial_parameter(H, eps)));
}

inline CliqueComplex random_graph(std::mt19937_64& rng, std::size_t n, double p, std::size_t max_dim) {
    std::bernoulli_distribution edge(p);
    AdjacencyMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (edge(rng)) a.set(i, j);
    return CliqueComplex(std::move(a), max_dim);
}

/** Subsets of size dim + 1 with all pairs adjacent, by subset enumeration. */
inline std::vector<Simplex> brute_cliques(const CliqueComplex& X, std::size_t dim) {
    const std::size_t n = X.vertex_count();
    std::vector<Simplex> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != dim + 1) continue;
        Simplex s;
        for (std::size_t v = 0; v < n; ++v)
            if (mask >> v & 1U) s.push_back(v);
        bool clique = true;
        for (std::size_t i = 0; i < s.size() && clique; ++i)
            for (std::size_t j = i + 1; j < s.size() && clique; ++j) clique = X.adjacent(s[i], s[j]);
        if (clique) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/** Link by definition: simplices t disjoint from s with t u s a simplex. */
inline std::vector<Simplex> brute_link(const CliqueComplex& X, const Simplex& s, std::size_t dim) {
    std::vector<Simplex> out;
    for (const auto& t : brute_cliques(X, dim + s.size())) {
        if (!std::includes(t.begin(), t.end(), s.begin(), s.end())) continue;
        Simplex rest;
        std::set_difference(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(rest));
        out.push_back(std::move(rest));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/** Compares simplices() and link() of a complex on at most 20 vertices with the brute-force versions. */
inline bool flag_and_link_agree(const CliqueComplex& X) {
    for (std::size_t d = 0; d <= X.max_dim(); ++d) {
        auto got = X.simplices(d);
        std::sort(got.begin(), got.end());
        if (got != brute_cliques(X, d)) return false;
        if (X.count(d) != got.size()) return false;
        for (const auto& s : got) {
            CliqueComplex lk = link(X, s);
            for (std::size_t e = 0; e <= lk.max_dim(); ++e) {
                std::vector<Simplex> named;
                for (const auto& t : lk.simplices(e)) {
                    Simplex u;
                    for (auto v : t) u.push_back(lk.labels()[v]);
                    named.push_back(std::move(u));
                }
                std::sort(named.begin(), named.end());
                if (named != brute_link(X, s, e)) return false;
            }
        }
    }
    return true;
}

struct Mutation {
    std::string name;
    WallFormData data;
    Axiom expected;
};

// H = Z/2, G = (Z/2, Z/2) with tau_G = multiplication, partial = id, pi = 0, epsilon = -1
inline FormParameter mixed_parameter() {
    FgAbGroup H{2};
    HPair G(H, FgAbGroup{2}, FgAbGroup{2}, {Coords{1}});
    return make_form_parameter(std::move(G), IntMatrix{{1}}, IntMatrix{{0}}, -1);
}

// H = Z/2, G = (0, Z/2), partial = 0, pi = id, epsilon = +1
inline FormParameter quadratic_parameter() {
    FgAbGroup H{2};
    HPair G(H, FgAbGroup(), FgAbGroup{2}, {});
    return make_form_parameter(std::move(G), IntMatrix{{0}}, IntMatrix{{1}}, 1);
}

/** Single-entry corruptions of valid forms, each paired with the axiom that has to catch it. */
inline std::vector<Mutation> mutation_catalogue() {
    std::vector<Mutation> out;
    const WallFormData base = standard_form_data(2, mixed_parameter());
    StandardLayout L(2, FgAbGroup{2});
    const std::size_t np = L.plus_size();
    const std::size_t t1 = L.tau_index(0, 0), b1 = L.b_index(0), b2 = L.b_index(1);
    auto add = [&](std::string name, Axiom a, auto&& edit) {
        WallFormData d = base;
        edit(d);
        out.push_back({std::move(name), std::move(d), a});
    };
    add("lambda(a1,b1)=2", Axiom::II, [&](WallFormData& d) { d.lambda(0, b1) = 2; });
    add("lambda(a1,b2)=1", Axiom::II, [&](WallFormData& d) { d.lambda(0, b2) = 1; });
    add("lambda(a1,t1)=1", Axiom::WellDefinedness, [&](WallFormData& d) { d.lambda(0, t1) = 1; });
    add("mu(b1,b1)=1", Axiom::V, [&](WallFormData& d) { d.mu[b1 * np + b1] = Coords{1}; });
    add("mu(b1,b2)=1", Axiom::Symmetry, [&](WallFormData& d) { d.mu[b1 * np + b2] = Coords{1}; });
    add("alpha_minus(a1)=1", Axiom::VI, [&](WallFormData& d) { d.alpha_minus[0] = Coords{1}; });
    add("alpha_plus(t1)=1", Axiom::VI, [&](WallFormData& d) { d.alpha_plus[t1] = Coords{1}; });
    add("lambda(a2,b1)=-1", Axiom::II, [&](WallFormData& d) { d.lambda(1, b1) = -1; });

    {
        WallFormData d = standard_form_data(2, quadratic_parameter());
        d.alpha_plus[b1] = Coords{1};
        out.push_back({"alpha_plus(b1)=1", std::move(d), Axiom::V});
    }
    {
        WallFormData d = standard_form_data(2, trivial_parameter(FgAbGroup{6}, -1));
        std::size_t n = StandardLayout(2, FgAbGroup{6}).plus_size();
        std::size_t b = StandardLayout(2, FgAbGroup{6}).b_index(0);
        d.mu[b * n + b] = Coords{3};
        out.push_back({"mu(b1,b1)=3 over Z/6", std::move(d), Axiom::V});
    }
    {
        FgAbGroup H{3};
        WallFormData d{trivial_parameter(H, 1), HPair(H, FgAbGroup(), FgAbGroup{0, 0}, {}), IntMatrix(0, 2),
                       std::vector<Coords>(4, Coords{0}), {}, std::vector<Coords>(2)};
        d.mu[1] = Coords{1};
        d.mu[2] = Coords{1};
        out.push_back({"mu(y1,y2)=1 with epsilon=+1 over Z/3", std::move(d), Axiom::Polarization});
    }
    {
        FgAbGroup H{0};
        WallFormData d = standard_form_data(2, trivial_parameter(H, -1));
        StandardLayout F(2, H);
        d.lambda(0, F.tau_index(1, 0)) = 1;
        out.push_back({"lambda(a1,tau(a2,h))=1 over Z", std::move(d), Axiom::I});
    }
    return out;
}

}  // namespace testing_support
