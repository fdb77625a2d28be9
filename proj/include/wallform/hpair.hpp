#pragma once

/** @file hpair.hpp
 *  @brief Pairs (M-, M+) with a bilinear action of H, their maps, sub-pairs and probes.
 */

#include "wallform/abelian_group.hpp"

namespace wallform {

class HPair {
public:
    HPair() = default;
    // tau[i * H.size() + j] is tau(minus generator i, H generator j) in M+
    HPair(FgAbGroup H, FgAbGroup minus, FgAbGroup plus, std::vector<Coords> tau)
        : H_(std::move(H)), minus_(std::move(minus)), plus_(std::move(plus)), tau_(std::move(tau)) {
        if (tau_.size() != minus_.size() * H_.size())
            throw InvalidInput("tau table needs one entry per (minus generator, H generator)");
        for (std::size_t i = 0; i < minus_.size(); ++i)
            for (std::size_t j = 0; j < H_.size(); ++j) {
                Coords& t = tau_[i * H_.size() + j];
                t = plus_.canonical(t);
                const std::string where = "tau(x" + std::to_string(i) + ", h" + std::to_string(j) + ")";
                if (!minus_.is_free(i) && !plus_.is_zero(plus_.scale(minus_.factor(i), t)))
                    throw BilinearityViolation(where + " is not killed by the order of x" + std::to_string(i));
                if (!H_.is_free(j) && !plus_.is_zero(plus_.scale(H_.factor(j), t)))
                    throw BilinearityViolation(where + " is not killed by the order of h" + std::to_string(j));
            }
    }

    static HPair zero(const FgAbGroup& H) { return HPair(H, FgAbGroup(), FgAbGroup(), {}); }

    const FgAbGroup& H() const { return H_; }
    const FgAbGroup& minus() const { return minus_; }
    const FgAbGroup& plus() const { return plus_; }
    const std::vector<Coords>& tau_table() const { return tau_; }
    const Coords& tau_generator(std::size_t i, std::size_t j) const { return tau_[i * H_.size() + j]; }

    Coords tau(const Coords& x, const Coords& h) const {
        minus_.check(x);
        H_.check(h);
        Coords out(plus_.size());
        for (std::size_t i = 0; i < minus_.size(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < H_.size(); ++j) {
                if (h[j] == 0) continue;
                const Coords& t = tau_generator(i, j);
                Int k = x[i] * h[j];
                for (std::size_t p = 0; p < out.size(); ++p)
                    if (t[p] != 0) out[p] += k * t[p];
            }
        }
        return plus_.canonical(std::move(out));
    }

    friend bool operator==(const HPair& a, const HPair& b) {
        return a.H_ == b.H_ && a.minus_ == b.minus_ && a.plus_ == b.plus_ && a.tau_ == b.tau_;
    }

private:
    FgAbGroup H_;
    FgAbGroup minus_;
    FgAbGroup plus_;
    std::vector<Coords> tau_;
};

inline HPair make_hpair(FgAbGroup H, FgAbGroup minus, FgAbGroup plus, std::vector<Coords> tau) {
    return HPair(std::move(H), std::move(minus), std::move(plus), std::move(tau));
}

// (0, Z) with the zero action.
inline HPair probe_zero(const FgAbGroup& H) { return HPair(H, FgAbGroup(), FgAbGroup{0}, {}); }

// (Z, H) with tau(t, h) = t h.
inline HPair probe_one(const FgAbGroup& H) {
    std::vector<Coords> tau;
    for (std::size_t j = 0; j < H.size(); ++j) tau.push_back(H.generator(j));
    return HPair(H, FgAbGroup{0}, H, std::move(tau));
}

inline HPair probe(const FgAbGroup& H, int nu) {
    if (nu == 0) return probe_zero(H);
    if (nu == 1) return probe_one(H);
    throw InvalidInput("probe index must be 0 or 1");
}

class HMap {
public:
    HMap() = default;
    HMap(GroupHom minus, GroupHom plus) : minus_(std::move(minus)), plus_(std::move(plus)) {}

    const GroupHom& minus() const { return minus_; }
    const GroupHom& plus() const { return plus_; }

    friend HMap compose(const HMap& g, const HMap& f) {
        return HMap(compose(g.minus_, f.minus_), compose(g.plus_, f.plus_));
    }
    friend bool operator==(const HMap& a, const HMap& b) { return a.minus_ == b.minus_ && a.plus_ == b.plus_; }

private:
    GroupHom minus_;
    GroupHom plus_;
};

// Empty string when f+ tau(x, h) == tau(f- x, h) on all generator pairs, else the first failing pair.
inline std::string square_failure(const HPair& src, const HPair& dst, const GroupHom& fm, const GroupHom& fp) {
    for (std::size_t i = 0; i < src.minus().size(); ++i)
        for (std::size_t j = 0; j < src.H().size(); ++j) {
            Coords lhs = fp(src.tau_generator(i, j));
            Coords rhs = dst.tau(fm(src.minus().generator(i)), src.H().generator(j));
            if (!dst.plus().equal(lhs, rhs)) return "(x" + std::to_string(i) + ", h" + std::to_string(j) + ")";
        }
    return {};
}

inline HMap make_hmap(const HPair& src, const HPair& dst, const IntMatrix& minus, const IntMatrix& plus) {
    if (src.H() != dst.H()) throw HMismatch("source and target have different H");
    GroupHom fm(src.minus(), dst.minus(), minus);
    GroupHom fp(src.plus(), dst.plus(), plus);
    auto bad = square_failure(src, dst, fm, fp);
    if (!bad.empty()) throw InvalidInput("action square does not commute at " + bad);
    return HMap(std::move(fm), std::move(fp));
}

/** Sub-pair of an ambient pair, given by generators in ambient coordinates. */
struct SubHPair {
    std::vector<Coords> minus;
    std::vector<Coords> plus;
};

inline bool is_sub_hpair(const HPair& ambient, const SubHPair& s) {
    Subgroup plus(ambient.plus().factors(), s.plus);
    for (const auto& x : s.minus)
        for (std::size_t j = 0; j < ambient.H().size(); ++j)
            if (!plus.contains(ambient.tau(x, ambient.H().generator(j)))) return false;
    return true;
}

inline SubHPair hmap_kernel(const HMap& f) {
    return SubHPair{kernel_generators(f.minus()), kernel_generators(f.plus())};
}

struct HPairSum {
    HPair pair;
    HMap inj_first, inj_second;
};

inline HPairSum hpair_direct_sum(const HPair& a, const HPair& b) {
    if (a.H() != b.H()) throw HMismatch("direct sum of pairs over different H");
    const FgAbGroup& H = a.H();
    DirectSum m = direct_sum(a.minus(), b.minus());
    DirectSum p = direct_sum(a.plus(), b.plus());
    std::vector<Coords> tau;
    for (std::size_t k = 0; k < m.group.size(); ++k) {
        Coords xa = m.proj_first(m.group.generator(k));
        Coords xb = m.proj_second(m.group.generator(k));
        for (std::size_t j = 0; j < H.size(); ++j) {
            Coords h = H.generator(j);
            tau.push_back(p.group.add(p.inj_first(a.tau(xa, h)), p.inj_second(b.tau(xb, h))));
        }
    }
    HPair sum(H, m.group, p.group, std::move(tau));
    HMap ia = make_hmap(a, sum, m.inj_first.matrix(), p.inj_first.matrix());
    HMap ib = make_hmap(b, sum, m.inj_second.matrix(), p.inj_second.matrix());
    return {std::move(sum), std::move(ia), std::move(ib)};
}

/** The group of H-maps M -> P(nu), with explicit coordinates. */
class ProbeHomGroup {
public:
    ProbeHomGroup(const HPair& M, int nu) : source_(M), target_(probe(M.H(), nu)), nu_(nu) {
        const FgAbGroup& H = M.H();
        const std::size_t nm = M.minus().size(), np = M.plus().size(), nh = H.size();
        std::vector<Coords> rows;
        std::vector<Int> row_moduli;
        auto add_row = [&](Coords row, const Int& modulus) {
            rows.push_back(std::move(row));
            row_moduli.push_back(modulus);
        };
        if (nu == 0) {
            unknown_moduli_.assign(np, Int(0));
            for (std::size_t k = 0; k < np; ++k)
                if (!M.plus().is_free(k)) {
                    Coords r(np);
                    r[k] = M.plus().factor(k);
                    add_row(r, 0);
                }
            for (std::size_t i = 0; i < nm; ++i)
                for (std::size_t l = 0; l < nh; ++l) add_row(M.tau_generator(i, l), 0);
        } else {
            unknown_moduli_.assign(nm, Int(0));
            for (std::size_t j = 0; j < nh; ++j)
                for (std::size_t k = 0; k < np; ++k) unknown_moduli_.push_back(H.factor(j));
            const std::size_t n = unknown_moduli_.size();
            auto f_index = [&](std::size_t j, std::size_t k) { return nm + j * np + k; };
            for (std::size_t i = 0; i < nm; ++i)
                if (!M.minus().is_free(i)) {
                    Coords r(n);
                    r[i] = M.minus().factor(i);
                    add_row(r, 0);
                }
            for (std::size_t k = 0; k < np; ++k)
                if (!M.plus().is_free(k))
                    for (std::size_t j = 0; j < nh; ++j) {
                        Coords r(n);
                        r[f_index(j, k)] = M.plus().factor(k);
                        add_row(r, H.factor(j));
                    }
            for (std::size_t i = 0; i < nm; ++i)
                for (std::size_t l = 0; l < nh; ++l)
                    for (std::size_t j = 0; j < nh; ++j) {
                        Coords r(n);
                        const Coords& t = M.tau_generator(i, l);
                        for (std::size_t k = 0; k < np; ++k) r[f_index(j, k)] = t[k];
                        if (j == l) r[i] = -1;
                        add_row(r, H.factor(j));
                    }
        }
        const std::size_t n = unknown_moduli_.size();
        IntMatrix C = IntMatrix::from_rows(n, rows);
        auto gens = kernel_generators(C, unknown_moduli_, row_moduli);
        solutions_.emplace(unknown_moduli_, gens);
    }

    int nu() const { return nu_; }
    const HPair& source() const { return source_; }
    const HPair& target() const { return target_; }
    const FgAbGroup& group() const { return solutions_->group(); }

    HMap element(const Coords& coords) const { return from_unknowns(solutions_->embed(group().canonical(coords))); }

    std::optional<Coords> coordinates(const HMap& f) const { return solutions_->coordinates(to_unknowns(f)); }

private:
    HMap from_unknowns(const Coords& u) const {
        const std::size_t nm = source_.minus().size(), np = source_.plus().size(), nh = source_.H().size();
        IntMatrix fm(target_.minus().size(), nm), fp(target_.plus().size(), np);
        if (nu_ == 0) {
            for (std::size_t k = 0; k < np; ++k) fp(0, k) = u[k];
        } else {
            for (std::size_t i = 0; i < nm; ++i) fm(0, i) = u[i];
            for (std::size_t j = 0; j < nh; ++j)
                for (std::size_t k = 0; k < np; ++k) fp(j, k) = u[nm + j * np + k];
        }
        return make_hmap(source_, target_, fm, fp);
    }

    Coords to_unknowns(const HMap& f) const {
        const std::size_t nm = source_.minus().size(), np = source_.plus().size(), nh = source_.H().size();
        Coords u(unknown_moduli_.size());
        if (nu_ == 0) {
            for (std::size_t k = 0; k < np; ++k) u[k] = f.plus().matrix()(0, k);
        } else {
            for (std::size_t i = 0; i < nm; ++i) u[i] = f.minus().matrix()(0, i);
            for (std::size_t j = 0; j < nh; ++j)
                for (std::size_t k = 0; k < np; ++k) u[nm + j * np + k] = f.plus().matrix()(j, k);
        }
        return u;
    }

    HPair source_;
    HPair target_;
    int nu_;
    std::vector<Int> unknown_moduli_;
    std::optional<Subgroup> solutions_;
};

inline ProbeHomGroup hom_to_probe(const HPair& M, int nu) { return ProbeHomGroup(M, nu); }

}  // namespace wallform
