#pragma once

/** @file abelian_group.hpp
 *  @brief Finitely generated abelian groups in invariant-factor normal form, homomorphisms,
 *         subgroups and presentations.
 */

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "wallform/smith.hpp"

namespace wallform {

// Canonical representative of x in Z/m (m == 0 means Z).
inline void reduce_in_place(Coords& x, const std::vector<Int>& moduli) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (moduli[i] != 0) x[i] = floor_mod(x[i], moduli[i]);
}

inline Coords reduced(Coords x, const std::vector<Int>& moduli) {
    reduce_in_place(x, moduli);
    return x;
}

inline bool is_zero_mod(const Coords& x, const std::vector<Int>& moduli) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (moduli[i] == 0) {
            if (x[i] != 0) return false;
        } else if (!mpz_divisible_p(x[i].get_mpz_t(), moduli[i].get_mpz_t())) {
            return false;
        }
    }
    return true;
}

class FgAbGroup {
public:
    FgAbGroup() = default;
    explicit FgAbGroup(std::vector<Int> factors) : factors_(std::move(factors)) { validate(); }
    FgAbGroup(std::initializer_list<long> factors) {
        for (long f : factors) factors_.emplace_back(f);
        validate();
    }

    static FgAbGroup free_abelian(std::size_t rank) { return FgAbGroup(std::vector<Int>(rank, Int(0))); }
    static FgAbGroup trivial() { return FgAbGroup(); }

    const std::vector<Int>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    const Int& factor(std::size_t i) const { return factors_[i]; }
    bool is_trivial() const { return factors_.empty(); }
    bool is_free(std::size_t i) const { return factors_[i] == 0; }

    std::size_t free_rank() const {
        return static_cast<std::size_t>(std::count(factors_.begin(), factors_.end(), Int(0)));
    }
    std::size_t torsion_count() const { return size() - free_rank(); }

    Coords zero() const { return Coords(size()); }
    Coords generator(std::size_t i) const {
        Coords e(size());
        e[i] = 1;
        return e;
    }

    Coords canonical(Coords x) const {
        check(x);
        reduce_in_place(x, factors_);
        return x;
    }
    bool is_zero(const Coords& x) const {
        check(x);
        return is_zero_mod(x, factors_);
    }
    bool equal(const Coords& a, const Coords& b) const { return is_zero(sub(a, b)); }
    Coords add(const Coords& a, const Coords& b) const {
        check(a);
        check(b);
        Coords c(size());
        for (std::size_t i = 0; i < size(); ++i) c[i] = a[i] + b[i];
        return canonical(std::move(c));
    }
    Coords sub(const Coords& a, const Coords& b) const {
        check(a);
        check(b);
        Coords c(size());
        for (std::size_t i = 0; i < size(); ++i) c[i] = a[i] - b[i];
        reduce_in_place(c, factors_);
        return c;
    }
    Coords scale(const Int& k, const Coords& a) const {
        check(a);
        Coords c(size());
        for (std::size_t i = 0; i < size(); ++i) c[i] = k * a[i];
        return canonical(std::move(c));
    }
    Coords neg(const Coords& a) const { return scale(-1, a); }

    friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) { return a.factors_ == b.factors_; }
    friend bool operator!=(const FgAbGroup& a, const FgAbGroup& b) { return !(a == b); }

    std::string to_string() const {
        if (factors_.empty()) return "0";
        std::ostringstream os;
        for (std::size_t i = 0; i < size(); ++i) {
            if (i) os << " + ";
            if (factors_[i] == 0)
                os << "Z";
            else
                os << "Z/" << factors_[i];
        }
        return os.str();
    }

    void check(const Coords& x) const {
        if (x.size() != size())
            throw InvalidInput("element has " + std::to_string(x.size()) + " coordinates, group " +
                               to_string() + " has " + std::to_string(size()) + " generators");
    }

private:
    void validate() const {
        bool seen_free = false;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const Int& f = factors_[i];
            if (f < 0 || f == 1) throw InvalidInput("invariant factors must be 0 or at least 2");
            if (f == 0) {
                seen_free = true;
                continue;
            }
            if (seen_free) throw InvalidInput("finite invariant factors must precede free ones");
            if (i > 0 && !mpz_divisible_p(f.get_mpz_t(), factors_[i - 1].get_mpz_t()))
                throw InvalidInput("finite invariant factors must form a divisibility chain");
        }
    }

    std::vector<Int> factors_;
};

inline std::ostream& operator<<(std::ostream& os, const FgAbGroup& g) { return os << g.to_string(); }

/** Homomorphism given by the images of the domain generators (column j = image of generator j). */
class GroupHom {
public:
    GroupHom() = default;
    GroupHom(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != codomain_.size() || matrix_.cols() != domain_.size())
            throw InvalidInput("homomorphism matrix has the wrong shape");
        for (std::size_t j = 0; j < matrix_.cols(); ++j) {
            Coords col = codomain_.canonical(matrix_.column(j));
            if (!domain_.is_free(j) && !codomain_.is_zero(codomain_.scale(domain_.factor(j), col)))
                throw InvalidInput("homomorphism is not well defined on generator " + std::to_string(j));
            matrix_.set_column(j, col);
        }
    }

    static GroupHom zero(FgAbGroup domain, FgAbGroup codomain) {
        IntMatrix m(codomain.size(), domain.size());
        return GroupHom(std::move(domain), std::move(codomain), std::move(m));
    }
    static GroupHom identity(const FgAbGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.size())); }

    const FgAbGroup& domain() const { return domain_; }
    const FgAbGroup& codomain() const { return codomain_; }
    const IntMatrix& matrix() const { return matrix_; }

    Coords operator()(const Coords& x) const {
        domain_.check(x);
        return codomain_.canonical(matrix_ * x);
    }

    friend GroupHom compose(const GroupHom& g, const GroupHom& f) {
        if (f.codomain_ != g.domain_) throw InvalidInput("composition of incompatible homomorphisms");
        return GroupHom(f.domain_, g.codomain_, g.matrix_ * f.matrix_);
    }

    friend bool operator==(const GroupHom& a, const GroupHom& b) {
        return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.matrix_ == b.matrix_;
    }

private:
    FgAbGroup domain_;
    FgAbGroup codomain_;
    IntMatrix matrix_;
};

/** Normal form of Z^n / (column span of relations), with coordinate maps both ways. */
struct Presentation {
    FgAbGroup group;
    IntMatrix quotient;  // group.size() x n: coordinates of the images of the original generators
    IntMatrix section;   // n x group.size(): each normal-form generator in original generators

    Coords to_normal(const Coords& x) const { return group.canonical(quotient * x); }
    Coords from_normal(const Coords& y) const { return section * y; }
};

inline Presentation group_from_presentation(const IntMatrix& relations) {
    const std::size_t n = relations.rows();
    SmithForm s = smith_normal_form(relations);
    std::vector<std::size_t> kept;
    std::vector<Int> factors;
    for (std::size_t i = 0; i < n; ++i) {
        Int d = s.diagonal(i);
        if (d == 1) continue;
        kept.push_back(i);
        factors.push_back(d);
    }
    Presentation p{FgAbGroup(factors), IntMatrix(kept.size(), n), IntMatrix(n, kept.size())};
    for (std::size_t k = 0; k < kept.size(); ++k) {
        for (std::size_t j = 0; j < n; ++j) p.quotient(k, j) = floor_mod(s.U(kept[k], j), factors[k]);
        for (std::size_t j = 0; j < n; ++j) p.section(j, k) = s.U_inv(j, kept[k]);
    }
    return p;
}

// Group isomorphic to the direct sum of cyclic groups Z/m_i (any m_i >= 0, units allowed).
// When the factors can be sorted into normal form the coordinate change is a permutation.
inline Presentation normalize_cyclic_sum(const std::vector<Int>& moduli) {
    const std::size_t n = moduli.size();
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
        if (moduli[i] != 1) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Int& x = moduli[a];
        const Int& y = moduli[b];
        if ((x == 0) != (y == 0)) return y == 0;
        return x != 0 && x < y;
    });
    bool chain = true;
    for (std::size_t k = 1; k < order.size(); ++k) {
        const Int& prev = moduli[order[k - 1]];
        const Int& cur = moduli[order[k]];
        if (cur != 0 && !mpz_divisible_p(cur.get_mpz_t(), prev.get_mpz_t())) chain = false;
    }
    if (chain) {
        std::vector<Int> factors;
        for (auto i : order) factors.push_back(moduli[i]);
        Presentation p{FgAbGroup(factors), IntMatrix(order.size(), n), IntMatrix(n, order.size())};
        for (std::size_t k = 0; k < order.size(); ++k) {
            p.quotient(k, order[k]) = 1;
            p.section(order[k], k) = 1;
        }
        return p;
    }
    IntMatrix rel(n, n);
    for (std::size_t i = 0; i < n; ++i) rel(i, i) = moduli[i];
    return group_from_presentation(rel);
}

inline std::size_t generating_set_length(const FgAbGroup& g) { return g.size(); }

/** Generators of {x in (+)Z/dom_i : M x == 0 in (+)Z/cod_j}, canonical and nonzero. */
inline std::vector<Coords> kernel_generators(const IntMatrix& M, const std::vector<Int>& dom_moduli,
                                             const std::vector<Int>& cod_moduli) {
    const std::size_t n = M.cols(), p = M.rows();
    std::size_t extra = 0;
    for (const auto& c : cod_moduli)
        if (c != 0) ++extra;
    IntMatrix big(p, n + extra);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < n; ++j) big(i, j) = M(i, j);
    std::size_t col = n;
    for (std::size_t i = 0; i < p; ++i)
        if (cod_moduli[i] != 0) big(i, col++) = cod_moduli[i];
    std::vector<Coords> gens;
    for (const auto& k : kernel_basis(big)) gens.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        if (dom_moduli[i] != 0) {
            Coords e(n);
            e[i] = dom_moduli[i];
            gens.push_back(e);
        }
    if (gens.empty()) return {};
    std::vector<Coords> out;
    for (auto& g : hermite_basis(n, gens)) {
        reduce_in_place(g, dom_moduli);
        if (!is_zero_vector(g)) out.push_back(g);
    }
    return out;
}

/** Some x with M x == target in (+)Z/cod_j, reduced mod dom_moduli. */
inline std::optional<Coords> preimage(const IntMatrix& M, const std::vector<Int>& dom_moduli,
                                      const std::vector<Int>& cod_moduli, const Coords& target) {
    const std::size_t n = M.cols(), p = M.rows();
    std::size_t extra = 0;
    for (const auto& c : cod_moduli)
        if (c != 0) ++extra;
    IntMatrix big(p, n + extra);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < n; ++j) big(i, j) = M(i, j);
    std::size_t col = n;
    for (std::size_t i = 0; i < p; ++i)
        if (cod_moduli[i] != 0) big(i, col++) = cod_moduli[i];
    auto sol = solve_integer(big, target);
    if (!sol) return std::nullopt;
    Coords x(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(n));
    reduce_in_place(x, dom_moduli);
    return x;
}

inline std::optional<Coords> preimage(const GroupHom& f, const Coords& target) {
    return preimage(f.matrix(), f.domain().factors(), f.codomain().factors(), f.codomain().canonical(target));
}

inline std::vector<Coords> kernel_generators(const GroupHom& f) {
    return kernel_generators(f.matrix(), f.domain().factors(), f.codomain().factors());
}

inline bool is_injective(const GroupHom& f) { return kernel_generators(f).empty(); }

inline bool is_surjective(const GroupHom& f) {
    const auto& cod = f.codomain();
    IntMatrix rel(cod.size(), f.domain().size() + cod.size());
    for (std::size_t i = 0; i < cod.size(); ++i) {
        for (std::size_t j = 0; j < f.domain().size(); ++j) rel(i, j) = f.matrix()(i, j);
        rel(i, f.domain().size() + i) = cod.factor(i);
    }
    return group_from_presentation(rel).group.is_trivial();
}

inline bool is_bijective(const GroupHom& f) { return is_injective(f) && is_surjective(f); }

inline GroupHom inverse(const GroupHom& f) {
    if (!is_bijective(f)) throw InvalidInput("homomorphism is not invertible");
    IntMatrix m(f.domain().size(), f.codomain().size());
    for (std::size_t k = 0; k < f.codomain().size(); ++k) {
        auto x = preimage(f, f.codomain().generator(k));
        if (!x) throw InvalidInput("homomorphism is not invertible");
        m.set_column(k, *x);
    }
    return GroupHom(f.codomain(), f.domain(), std::move(m));
}

/** Subgroup of (+)Z/m_i given by generators, with its own normal form and basis. */
class Subgroup {
public:
    Subgroup(std::vector<Int> ambient_moduli, const std::vector<Coords>& generators)
        : ambient_(std::move(ambient_moduli)) {
        const std::size_t n = ambient_.size();
        std::vector<Coords> rows;
        for (const auto& g : generators) {
            if (g.size() != n) throw InvalidInput("subgroup generator has the wrong length");
            rows.push_back(reduced(g, ambient_));
        }
        for (std::size_t i = 0; i < n; ++i)
            if (ambient_[i] != 0) {
                Coords e(n);
                e[i] = ambient_[i];
                rows.push_back(e);
            }
        lattice_ = rows.empty() ? std::vector<Coords>{} : hermite_basis(n, rows);
        const std::size_t r = lattice_.size();
        lattice_matrix_ = IntMatrix::from_columns(n, lattice_);
        lattice_smith_ = smith_normal_form(lattice_matrix_);
        std::vector<Coords> relation_columns;
        for (std::size_t i = 0; i < n; ++i)
            if (ambient_[i] != 0) {
                Coords e(n);
                e[i] = ambient_[i];
                auto c = solve_integer(lattice_smith_, e);
                relation_columns.push_back(*c);
            }
        presentation_ = group_from_presentation(IntMatrix::from_columns(r, relation_columns));
        for (std::size_t k = 0; k < presentation_.group.size(); ++k) {
            Coords b = lattice_matrix_ * presentation_.section.column(k);
            basis_.push_back(reduced(b, ambient_));
        }
    }

    const FgAbGroup& group() const { return presentation_.group; }
    const std::vector<Int>& ambient_moduli() const { return ambient_; }
    // basis()[k] is normal-form generator k in ambient coordinates
    const std::vector<Coords>& basis() const { return basis_; }
    bool is_trivial() const { return basis_.empty(); }

    std::optional<Coords> coordinates(const Coords& x) const {
        auto c = solve_integer(lattice_smith_, reduced(x, ambient_));
        if (!c) return std::nullopt;
        return presentation_.to_normal(*c);
    }
    bool contains(const Coords& x) const { return coordinates(x).has_value(); }

    Coords embed(const Coords& y) const {
        Coords x(ambient_.size());
        for (std::size_t k = 0; k < basis_.size(); ++k)
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[k] * basis_[k][i];
        return reduced(x, ambient_);
    }

    // canonical key: Hermite basis of the preimage lattice
    const std::vector<Coords>& lattice() const { return lattice_; }

private:
    std::vector<Int> ambient_;
    std::vector<Coords> lattice_;
    IntMatrix lattice_matrix_;
    SmithForm lattice_smith_;
    Presentation presentation_;
    std::vector<Coords> basis_;
};

inline bool same_subgroup(const Subgroup& a, const Subgroup& b) {
    return a.ambient_moduli() == b.ambient_moduli() && a.lattice() == b.lattice();
}

/** Intersection of two subgroups of the same ambient group, as generators. */
inline std::vector<Coords> intersection_generators(const std::vector<Int>& moduli, const std::vector<Coords>& a,
                                                   const std::vector<Coords>& b) {
    const std::size_t n = moduli.size();
    std::size_t extra = 0;
    for (const auto& m : moduli)
        if (m != 0) ++extra;
    IntMatrix big(n, a.size() + b.size() + extra);
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) big(i, j) = a[j][i];
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) big(i, a.size() + j) = -b[j][i];
    std::size_t col = a.size() + b.size();
    for (std::size_t i = 0; i < n; ++i)
        if (moduli[i] != 0) big(i, col++) = moduli[i];
    std::vector<Coords> out;
    for (const auto& k : kernel_basis(big)) {
        Coords x(n);
        for (std::size_t j = 0; j < a.size(); ++j)
            if (k[j] != 0)
                for (std::size_t i = 0; i < n; ++i) x[i] += k[j] * a[j][i];
        reduce_in_place(x, moduli);
        if (!is_zero_vector(x)) out.push_back(x);
    }
    return out;
}

/** Tensor product with the bilinear embedding: embedding[i * b.size() + j] = image of e_i (x) f_j. */
struct TensorProduct {
    FgAbGroup group;
    std::vector<Coords> embedding;

    Coords operator()(const Coords& x, const Coords& y, std::size_t b_size) const {
        Coords out(group.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < b_size; ++j) {
                if (y[j] == 0) continue;
                const Coords& e = embedding[i * b_size + j];
                for (std::size_t k = 0; k < out.size(); ++k) out[k] += x[i] * y[j] * e[k];
            }
        }
        return group.canonical(std::move(out));
    }
};

inline TensorProduct tensor_product(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Int> moduli;
    for (const auto& x : a.factors())
        for (const auto& y : b.factors()) moduli.push_back(gcd(x, y));
    Presentation p = normalize_cyclic_sum(moduli);
    TensorProduct t{p.group, {}};
    for (std::size_t k = 0; k < moduli.size(); ++k) {
        Coords e(moduli.size());
        e[k] = 1;
        t.embedding.push_back(p.to_normal(e));
    }
    return t;
}

/** Direct sum A (+) B in normal form; inj_*, proj_* are the coordinate maps. */
struct DirectSum {
    FgAbGroup group;
    GroupHom inj_first, inj_second, proj_first, proj_second;
};

inline DirectSum direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Int> moduli = a.factors();
    moduli.insert(moduli.end(), b.factors().begin(), b.factors().end());
    Presentation p = normalize_cyclic_sum(moduli);
    const std::size_t na = a.size(), nb = b.size();
    IntMatrix ia(p.group.size(), na), ib(p.group.size(), nb), pa(na, p.group.size()), pb(nb, p.group.size());
    for (std::size_t j = 0; j < na; ++j) ia.set_column(j, p.quotient.column(j));
    for (std::size_t j = 0; j < nb; ++j) ib.set_column(j, p.quotient.column(na + j));
    for (std::size_t k = 0; k < p.group.size(); ++k) {
        for (std::size_t i = 0; i < na; ++i) pa(i, k) = p.section(i, k);
        for (std::size_t i = 0; i < nb; ++i) pb(i, k) = p.section(na + i, k);
    }
    return {p.group, GroupHom(a, p.group, ia), GroupHom(b, p.group, ib), GroupHom(p.group, a, pa),
            GroupHom(p.group, b, pb)};
}

}  // namespace wallform
