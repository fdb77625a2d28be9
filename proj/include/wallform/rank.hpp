#pragma once

/** @file rank.hpp
 *  @brief Certified lower bounds for the rank and stable rank of a Wall form.
 */

#include <algorithm>
#include <cstdint>
#include <map>

#include "wallform/complement.hpp"

namespace wallform {

struct SearchBudget {
    std::uint64_t limit = 1000000;
    std::uint64_t used = 0;

    bool spend(std::uint64_t n = 1) {
        used += n;
        return used <= limit;
    }
    bool exhausted() const { return used > limit; }
};

/** Vectors of a coordinate box grouped by L1 norm, each group in lexicographic order. */
class NormShells {
public:
    // coordinates with a positive modulus range over canonical representatives only
    NormShells(const std::vector<Int>& moduli, long bound) {
        for (const auto& m : moduli) {
            long lo = -bound, hi = bound;
            if (m != 0) {
                lo = 0;
                hi = m.fits_slong_p() ? std::min(bound, m.get_si() - 1) : bound;
            }
            lo_.push_back(lo);
            hi_.push_back(hi);
            max_norm_ += std::max(std::abs(lo), std::abs(hi));
        }
    }

    long max_norm() const { return max_norm_; }

    // nullptr when the budget ran out while building the shell
    const std::vector<Coords>* shell(long norm, SearchBudget& budget) {
        auto it = cache_.find(norm);
        if (it != cache_.end()) return &it->second;
        std::vector<Coords> out;
        Coords cur(lo_.size());
        bool ok = fill(0, norm, cur, out, budget);
        if (!ok) return nullptr;
        return &cache_.emplace(norm, std::move(out)).first->second;
    }

private:
    bool fill(std::size_t i, long remaining, Coords& cur, std::vector<Coords>& out, SearchBudget& budget) {
        if (i == lo_.size()) {
            if (remaining != 0) return true;
            if (!budget.spend()) return false;
            out.push_back(cur);
            return true;
        }
        for (long v = lo_[i]; v <= hi_[i]; ++v) {
            if (std::abs(v) > remaining) continue;
            cur[i] = v;
            if (!fill(i + 1, remaining - std::abs(v), cur, out, budget)) return false;
        }
        cur[i] = 0;
        return true;
    }

    std::vector<long> lo_, hi_;
    long max_norm_ = 0;
    std::map<long, std::vector<Coords>> cache_;
};

struct RankCertificate {
    std::size_t k = 0;
    std::size_t upper = 0;
    bool budget_exhausted = false;
    std::uint64_t candidates = 0;
    WallMorphism witness;  // W^k -> M

    bool exact() const { return k == upper; }
};

/** Greedy hyperbolic splitting. Each new pair (x, y) has lambda(x, y) = 1, mu(y, y) = 0, alpha = 0 and
 *  lies in the orthogonal complement of the pairs found so far. Candidates are visited by increasing
 *  L1 norm of (x, y), lexicographically within a norm, coordinates in [-bound, bound]. */
inline RankCertificate rank_certificate(const FormRef& M, long bound, std::uint64_t budget_limit = 1000000) {
    const WallForm& W = *M;
    RankCertificate cert;
    cert.upper = W.minus().free_rank();
    SearchBudget budget{budget_limit, 0};
    NormShells xshells(W.minus().factors(), bound), yshells(W.plus().factors(), bound);
    Frame fr;

    auto x_ok = [&](const Coords& x) {
        if (!W.param().G.minus().is_zero(W.alpha_minus(x))) return false;
        for (const auto& y : fr.ys)
            if (W.lambda(x, y) != 0) return false;
        return true;
    };
    auto y_ok = [&](const Coords& y) {
        if (!W.H().is_zero(W.mu(y, y))) return false;
        if (!W.param().G.plus().is_zero(W.alpha_plus(y))) return false;
        for (const auto& x : fr.xs)
            if (W.lambda(x, y) != 0) return false;
        for (const auto& z : fr.ys)
            if (!W.H().is_zero(W.mu(y, z))) return false;
        return true;
    };

    enum class Step { found, none, out_of_budget };
    auto next_pair = [&]() {
        std::map<long, std::vector<const Coords*>> xs_by_norm, ys_by_norm;
        auto filtered = [&](NormShells& shells, long t, std::map<long, std::vector<const Coords*>>& cache,
                            auto&& pred) -> const std::vector<const Coords*>* {
            auto it = cache.find(t);
            if (it != cache.end()) return &it->second;
            const std::vector<Coords>* shell = shells.shell(t, budget);
            if (!shell) return nullptr;
            std::vector<const Coords*> keep;
            for (const auto& v : *shell)
                if (pred(v)) keep.push_back(&v);
            return &cache.emplace(t, std::move(keep)).first->second;
        };
        for (long s = 2; s <= xshells.max_norm() + yshells.max_norm(); ++s) {
            // lexicographic on the concatenation (x, y): x-major across every split of s
            std::vector<std::pair<const Coords*, long>> xlist;
            for (long tx = 1; tx < s; ++tx) {
                if (tx > xshells.max_norm() || s - tx > yshells.max_norm()) continue;
                auto xs = filtered(xshells, tx, xs_by_norm, x_ok);
                if (!xs) return Step::out_of_budget;
                for (auto* x : *xs) xlist.emplace_back(x, tx);
            }
            std::sort(xlist.begin(), xlist.end(), [](const auto& a, const auto& b) {
                return std::lexicographical_compare(a.first->begin(), a.first->end(), b.first->begin(), b.first->end());
            });
            for (const auto& [x, tx] : xlist) {
                auto ys = filtered(yshells, s - tx, ys_by_norm, y_ok);
                if (!ys) return Step::out_of_budget;
                for (auto* y : *ys) {
                    if (!budget.spend()) return Step::out_of_budget;
                    if (W.lambda(*x, *y) == 1) {
                        fr.xs.push_back(*x);
                        fr.ys.push_back(*y);
                        return Step::found;
                    }
                }
            }
        }
        return Step::none;
    };

    while (fr.xs.size() < cert.upper) {
        Step st = next_pair();
        if (st == Step::out_of_budget) cert.budget_exhausted = true;
        if (st != Step::found) break;
    }
    cert.k = fr.xs.size();
    cert.candidates = budget.used;
    cert.witness = morphism_from_frame(cert.k, M, fr);
    return cert;
}

struct StableRankCertificate {
    long k = 0;
    std::size_t j_used = 0;
    bool budget_exhausted = false;
    RankCertificate at_j;  // certificate for M (+) W^j_used
};

inline StableRankCertificate stable_rank_certificate(const FormRef& M, std::size_t j_max, long bound,
                                                     std::uint64_t budget_limit = 1000000) {
    StableRankCertificate best;
    bool have = false;
    for (std::size_t j = 0; j <= j_max; ++j) {
        FormRef padded = j == 0 ? M : perp_sum(M, share(standard_form(j, M->param()))).form;
        RankCertificate c = rank_certificate(padded, bound, budget_limit);
        best.budget_exhausted = best.budget_exhausted || c.budget_exhausted;
        long value = static_cast<long>(c.k) - static_cast<long>(j);
        if (!have || value > best.k) {
            best.k = value;
            best.j_used = j;
            best.at_j = c;
            have = true;
        }
    }
    return best;
}

}  // namespace wallform
