#pragma once

/** @file wall_form.hpp
 *  @brief Form parameters, Wall forms, the axiom checker and the standard forms.
 */

#include <memory>

#include "wallform/hpair.hpp"

namespace wallform {

struct FormParameter {
    HPair G;           // G.H() is the coefficient group H
    GroupHom partial;  // H -> G+
    GroupHom pi;       // G+ -> H
    int epsilon = 1;

    const FgAbGroup& H() const { return G.H(); }

    friend bool operator==(const FormParameter& a, const FormParameter& b) {
        return a.G == b.G && a.partial == b.partial && a.pi == b.pi && a.epsilon == b.epsilon;
    }
};

inline FormParameter make_form_parameter(HPair G, const IntMatrix& partial, const IntMatrix& pi, int epsilon) {
    if (epsilon != 1 && epsilon != -1) throw InvalidInput("epsilon must be +1 or -1");
    GroupHom d(G.H(), G.plus(), partial);
    GroupHom p(G.plus(), G.H(), pi);
    return FormParameter{std::move(G), std::move(d), std::move(p), epsilon};
}

// G = 0, partial = pi = 0.
inline FormParameter trivial_parameter(const FgAbGroup& H, int epsilon) {
    return make_form_parameter(HPair::zero(H), IntMatrix(0, H.size()), IntMatrix(H.size(), 0), epsilon);
}

// H = Z/2, G+ = Z/2, partial = id, pi = 0, epsilon = -1.
inline FormParameter z2_parameter() {
    FgAbGroup H{2};
    HPair G(H, FgAbGroup(), FgAbGroup{2}, {});
    return make_form_parameter(std::move(G), IntMatrix{{1}}, IntMatrix{{0}}, -1);
}

enum class Axiom { WellDefinedness, Symmetry, I, II, III, IV, V, VI, Polarization };

inline std::string to_string(Axiom a) {
    switch (a) {
        case Axiom::WellDefinedness: return "well-definedness";
        case Axiom::Symmetry: return "symmetry";
        case Axiom::I: return "i";
        case Axiom::II: return "ii";
        case Axiom::III: return "iii";
        case Axiom::IV: return "iv";
        case Axiom::V: return "v";
        case Axiom::VI: return "vi";
        case Axiom::Polarization: return "polarization";
    }
    return "?";
}

struct AxiomFailure {
    Axiom axiom;
    std::string witness;
};

struct AxiomReport {
    std::vector<AxiomFailure> failures;

    bool ok() const { return failures.empty(); }
    bool has(Axiom a) const {
        for (const auto& f : failures)
            if (f.axiom == a) return true;
        return false;
    }
    // failures are recorded in checking order, so the first one names the primary label
    const AxiomFailure& first() const { return failures.front(); }
};

class AxiomViolation : public Error {
public:
    explicit AxiomViolation(AxiomReport report)
        : Error("axiom " + to_string(report.first().axiom) + " fails at " + report.first().witness),
          report_(std::move(report)) {}
    Axiom axiom() const { return report_.first().axiom; }
    const std::string& witness() const { return report_.first().witness; }
    const AxiomReport& report() const { return report_; }

private:
    AxiomReport report_;
};

/** Raw data of a Wall form, indexed by generators. mu[i * plus.size() + j] = mu(y_i, y_j). */
struct WallFormData {
    FormParameter param;
    HPair pair;
    IntMatrix lambda;
    std::vector<Coords> mu;
    std::vector<Coords> alpha_minus;
    std::vector<Coords> alpha_plus;
};

class WallForm {
public:
    // Shape checks and canonicalization only; see make_wall_form for the axioms.
    static WallForm unchecked(WallFormData data) { return WallForm(std::move(data)); }

    const WallFormData& data() const { return data_; }
    const FormParameter& param() const { return data_.param; }
    const HPair& pair() const { return data_.pair; }
    const FgAbGroup& H() const { return data_.pair.H(); }
    const FgAbGroup& minus() const { return data_.pair.minus(); }
    const FgAbGroup& plus() const { return data_.pair.plus(); }
    int epsilon() const { return data_.param.epsilon; }

    const Int& lambda_value(std::size_t i, std::size_t k) const { return data_.lambda(i, k); }
    const Coords& mu_value(std::size_t i, std::size_t k) const { return data_.mu[i * plus().size() + k]; }
    const Coords& alpha_minus_value(std::size_t i) const { return data_.alpha_minus[i]; }
    const Coords& alpha_plus_value(std::size_t k) const { return data_.alpha_plus[k]; }
    const Coords& partial_mu_value(std::size_t i, std::size_t k) const { return partial_mu_[i * plus().size() + k]; }

    Coords tau(const Coords& x, const Coords& h) const { return pair().tau(x, h); }

    Int lambda(const Coords& x, const Coords& y) const {
        minus().check(x);
        plus().check(y);
        Int acc = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t k = 0; k < y.size(); ++k)
                if (y[k] != 0) acc += x[i] * data_.lambda(i, k) * y[k];
        }
        return acc;
    }

    Coords mu(const Coords& y, const Coords& z) const {
        plus().check(y);
        plus().check(z);
        Coords out(H().size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] == 0) continue;
            for (std::size_t k = 0; k < z.size(); ++k) {
                if (z[k] == 0) continue;
                Int c = y[i] * z[k];
                const Coords& m = mu_value(i, k);
                for (std::size_t p = 0; p < out.size(); ++p)
                    if (m[p] != 0) out[p] += c * m[p];
            }
        }
        return H().canonical(std::move(out));
    }

    Coords alpha_minus(const Coords& x) const {
        minus().check(x);
        const FgAbGroup& G = param().G.minus();
        Coords out(G.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0)
                for (std::size_t p = 0; p < out.size(); ++p) out[p] += x[i] * data_.alpha_minus[i][p];
        return G.canonical(std::move(out));
    }

    // quadratic extension of the generator values along axiom iv
    Coords alpha_plus(const Coords& y) const {
        plus().check(y);
        const FgAbGroup& G = param().G.plus();
        Coords out(G.size());
        auto accumulate = [&](const Int& c, const Coords& v) {
            if (c == 0) return;
            for (std::size_t p = 0; p < out.size(); ++p)
                if (v[p] != 0) out[p] += c * v[p];
        };
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] == 0) continue;
            accumulate(y[i], data_.alpha_plus[i]);
            accumulate(binom2(y[i]), partial_mu_value(i, i));
            for (std::size_t k = i + 1; k < y.size(); ++k)
                if (y[k] != 0) accumulate(y[i] * y[k], partial_mu_value(i, k));
        }
        return G.canonical(std::move(out));
    }

    friend bool operator==(const WallForm& a, const WallForm& b) {
        return a.data_.param == b.data_.param && a.data_.pair == b.data_.pair && a.data_.lambda == b.data_.lambda &&
               a.data_.mu == b.data_.mu && a.data_.alpha_minus == b.data_.alpha_minus &&
               a.data_.alpha_plus == b.data_.alpha_plus;
    }

private:
    explicit WallForm(WallFormData data) : data_(std::move(data)) {
        const FormParameter& P = data_.param;
        if (P.H() != data_.pair.H()) throw ParameterMismatch("parameter H differs from the pair's H");
        const std::size_t nm = minus().size(), np = plus().size();
        if (data_.lambda.rows() != nm || data_.lambda.cols() != np)
            throw InvalidInput("lambda needs one row per minus generator and one column per plus generator");
        if (data_.mu.size() != np * np) throw InvalidInput("mu needs one entry per pair of plus generators");
        if (data_.alpha_minus.size() != nm) throw InvalidInput("alpha_minus needs one value per minus generator");
        if (data_.alpha_plus.size() != np) throw InvalidInput("alpha_plus needs one value per plus generator");
        for (auto& m : data_.mu) m = H().canonical(m);
        for (auto& a : data_.alpha_minus) a = P.G.minus().canonical(a);
        for (auto& a : data_.alpha_plus) a = P.G.plus().canonical(a);
        partial_mu_.reserve(np * np);
        for (const auto& m : data_.mu) partial_mu_.push_back(P.partial(m));
    }

    WallFormData data_;
    std::vector<Coords> partial_mu_;
};

using FormRef = std::shared_ptr<const WallForm>;

inline FormRef share(WallForm w) { return std::make_shared<const WallForm>(std::move(w)); }

inline std::string gen_name(char side, std::size_t i) { return std::string(1, side) + std::to_string(i); }

/** Checks every generator-level condition; failures are listed in checking order. */
inline AxiomReport check_axioms(const WallForm& W) {
    AxiomReport report;
    auto fail = [&](Axiom a, std::string witness) { report.failures.push_back({a, std::move(witness)}); };
    const FormParameter& P = W.param();
    const FgAbGroup& H = W.H();
    const FgAbGroup& Gm = P.G.minus();
    const FgAbGroup& Gp = P.G.plus();
    const FgAbGroup& Mm = W.minus();
    const FgAbGroup& Mp = W.plus();
    const std::size_t nm = Mm.size(), np = Mp.size(), nh = H.size();
    const int eps = W.epsilon();

    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t k = 0; k < np; ++k) {
            if (W.lambda_value(i, k) == 0) continue;
            if (!Mm.is_free(i) || !Mp.is_free(k))
                fail(Axiom::WellDefinedness, "lambda(" + gen_name('x', i) + ", " + gen_name('y', k) + ")");
        }
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t k = 0; k < np; ++k) {
            const Coords& m = W.mu_value(i, k);
            bool bad = (!Mp.is_free(i) && !H.is_zero(H.scale(Mp.factor(i), m))) ||
                       (!Mp.is_free(k) && !H.is_zero(H.scale(Mp.factor(k), m)));
            if (bad) fail(Axiom::WellDefinedness, "mu(" + gen_name('y', i) + ", " + gen_name('y', k) + ")");
        }

    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t k = i; k < np; ++k)
            if (!H.equal(W.mu_value(k, i), H.scale(eps, W.mu_value(i, k))))
                fail(Axiom::Symmetry, "mu(" + gen_name('y', i) + ", " + gen_name('y', k) + ")");

    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t k = 0; k < nm; ++k)
            for (std::size_t l = 0; l < nh; ++l)
                if (W.lambda(Mm.generator(i), W.pair().tau_generator(k, l)) != 0)
                    fail(Axiom::I, "lambda(" + gen_name('x', i) + ", tau(" + gen_name('x', k) + ", " +
                                       gen_name('h', l) + "))");

    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t l = 0; l < nh; ++l) {
            const Coords& t = W.pair().tau_generator(i, l);
            for (std::size_t k = 0; k < np; ++k) {
                Coords lhs = W.mu(t, Mp.generator(k));
                Coords rhs = H.scale(W.lambda_value(i, k), H.generator(l));
                if (!H.equal(lhs, rhs))
                    fail(Axiom::II, "mu(tau(" + gen_name('x', i) + ", " + gen_name('h', l) + "), " +
                                        gen_name('y', k) + ")");
            }
        }

    for (std::size_t i = 0; i < nm; ++i)
        if (!Mm.is_free(i) && !Gm.is_zero(Gm.scale(Mm.factor(i), W.alpha_minus_value(i))))
            fail(Axiom::III, "alpha_minus(" + gen_name('x', i) + ") against the relation on " + gen_name('x', i));

    for (std::size_t k = 0; k < np; ++k) {
        if (Mp.is_free(k)) continue;
        const Int& d = Mp.factor(k);
        Coords v = Gp.add(Gp.scale(d, W.alpha_plus_value(k)), Gp.scale(binom2(d), W.partial_mu_value(k, k)));
        if (!Gp.is_zero(v)) fail(Axiom::IV, "alpha_plus(" + gen_name('y', k) + ") against the relation on " + gen_name('y', k));
    }
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t k = i + 1; k < np; ++k)
            if (!Gp.equal(W.partial_mu_value(i, k), W.partial_mu_value(k, i)))
                fail(Axiom::IV, "partial(mu) asymmetric at (" + gen_name('y', i) + ", " + gen_name('y', k) + ")");

    for (std::size_t k = 0; k < np; ++k)
        if (!H.equal(W.mu_value(k, k), P.pi(W.alpha_plus_value(k))))
            fail(Axiom::V, "mu(" + gen_name('y', k) + ", " + gen_name('y', k) + ")");

    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t l = 0; l < nh; ++l) {
            Coords lhs = W.alpha_plus(W.pair().tau_generator(i, l));
            Coords rhs = P.G.tau(W.alpha_minus_value(i), H.generator(l));
            if (!Gp.equal(lhs, rhs))
                fail(Axiom::VI, "alpha_plus(tau(" + gen_name('x', i) + ", " + gen_name('h', l) + "))");
        }

    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t k = i; k < np; ++k) {
            Coords lhs = P.pi(W.partial_mu_value(i, k));
            Coords rhs = H.scale(1 + eps, W.mu_value(i, k));
            if (!H.equal(lhs, rhs))
                fail(Axiom::Polarization, "(" + gen_name('y', i) + ", " + gen_name('y', k) + ")");
        }
    return report;
}

inline WallForm make_wall_form(WallFormData data) {
    WallForm w = WallForm::unchecked(std::move(data));
    AxiomReport r = check_axioms(w);
    if (!r.ok()) throw AxiomViolation(std::move(r));
    return w;
}

/** Coordinates of the standard form W^g. Plus generators: torsion tau(a_i, h_j) grouped by equal
 *  H-factor (block-major inside a group), then per block the free tau(a_i, h_j) followed by b_i.
 *  This is the order produced by summing W^1 g times. */
class StandardLayout {
public:
    StandardLayout(std::size_t g, FgAbGroup H) : g_(g), H_(std::move(H)), tau_(g * H_.size()), b_(g) {
        const std::size_t nh = H_.size();
        std::size_t j = 0;
        while (j < nh && !H_.is_free(j)) {
            std::size_t end = j;
            while (end < nh && !H_.is_free(end) && H_.factor(end) == H_.factor(j)) ++end;
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t jj = j; jj < end; ++jj) {
                    tau_[i * nh + jj] = factors_.size();
                    factors_.push_back(H_.factor(jj));
                    block_.push_back(i);
                }
            j = end;
        }
        const std::size_t first_free = j;
        for (std::size_t i = 0; i < g; ++i) {
            for (std::size_t jj = first_free; jj < nh; ++jj) {
                tau_[i * nh + jj] = factors_.size();
                factors_.push_back(0);
                block_.push_back(i);
            }
            b_[i] = factors_.size();
            factors_.push_back(0);
            block_.push_back(i);
        }
    }

    std::size_t rank() const { return g_; }
    const FgAbGroup& H() const { return H_; }
    std::size_t b_index(std::size_t i) const { return b_[i]; }
    std::size_t tau_index(std::size_t i, std::size_t j) const { return tau_[i * H_.size() + j]; }
    std::size_t block_of_plus(std::size_t p) const { return block_[p]; }
    FgAbGroup plus_group() const { return FgAbGroup(factors_); }
    std::size_t plus_size() const { return factors_.size(); }

    Coords a(std::size_t i) const {
        Coords e(g_);
        e[i] = 1;
        return e;
    }
    Coords b(std::size_t i) const {
        Coords e(plus_size());
        e[b_[i]] = 1;
        return e;
    }

    // (0)-part coordinates: coefficient of b_i
    Coords isotropic_part(const Coords& y) const {
        Coords out(g_);
        for (std::size_t i = 0; i < g_; ++i) out[i] = y[b_[i]];
        return out;
    }
    Coords from_isotropic(const Coords& coeffs) const {
        Coords y(plus_size());
        for (std::size_t i = 0; i < g_; ++i) y[b_[i]] = coeffs[i];
        return y;
    }
    // tau-part coefficients: entry j is the minus element x_j with y_(1) = sum_j tau(x_j, h_j)
    std::vector<Coords> tau_part(const Coords& y) const {
        std::vector<Coords> xs(H_.size(), Coords(g_));
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t j = 0; j < H_.size(); ++j) xs[j][i] = y[tau_index(i, j)];
        return xs;
    }

private:
    std::size_t g_;
    FgAbGroup H_;
    std::vector<std::size_t> tau_;
    std::vector<std::size_t> b_;
    std::vector<Int> factors_;
    std::vector<std::size_t> block_;
};

inline WallFormData standard_form_data(std::size_t g, const FormParameter& param) {
    const FgAbGroup& H = param.H();
    StandardLayout L(g, H);
    FgAbGroup plus = L.plus_group();
    const std::size_t np = plus.size(), nh = H.size();
    std::vector<Coords> tau;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < nh; ++j) {
            Coords t(np);
            t[L.tau_index(i, j)] = 1;
            tau.push_back(t);
        }
    HPair pair(H, FgAbGroup::free_abelian(g), plus, std::move(tau));
    IntMatrix lambda(g, np);
    for (std::size_t i = 0; i < g; ++i) lambda(i, L.b_index(i)) = 1;
    std::vector<Coords> mu(np * np, H.zero());
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < nh; ++j) {
            std::size_t t = L.tau_index(i, j), b = L.b_index(i);
            mu[t * np + b] = H.generator(j);
            mu[b * np + t] = H.scale(param.epsilon, H.generator(j));
        }
    return WallFormData{param,
                        std::move(pair),
                        std::move(lambda),
                        std::move(mu),
                        std::vector<Coords>(g, param.G.minus().zero()),
                        std::vector<Coords>(np, param.G.plus().zero())};
}

/** W^g. Throws AxiomViolation when the parameter cannot carry it (pi o partial != 1 + epsilon on H). */
inline WallForm standard_form(std::size_t g, const FormParameter& param) {
    return make_wall_form(standard_form_data(g, param));
}

inline bool is_standard(const WallForm& W) {
    if (W.minus().free_rank() != W.minus().size()) return false;
    return W == WallForm::unchecked(standard_form_data(W.minus().size(), W.param()));
}

inline WallForm zero_form(const FormParameter& param) { return standard_form(0, param); }

}  // namespace wallform
