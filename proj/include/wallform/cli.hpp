#pragma once

/** @file cli.hpp
 *  @brief Batch driver behind the wallform executable.
 */

#include <iomanip>
#include <map>
#include <ostream>

#include "wallform/json_io.hpp"
#include "wallform/lemmas.hpp"
#include "wallform/sampling.hpp"

namespace wallform {

enum class Command {
    validate,
    rank,
    stable_rank,
    complement,
    complex,
    homology,
    lcm,
    connectivity,
    transitivity,
    kernel_witness,
    cancel,
    standard_form,
};

inline const std::vector<std::pair<std::string, Command>>& command_names() {
    static const std::vector<std::pair<std::string, Command>> names{
        {"validate", Command::validate},         {"rank", Command::rank},
        {"stable-rank", Command::stable_rank},   {"complement", Command::complement},
        {"complex", Command::complex},           {"homology", Command::homology},
        {"lcm", Command::lcm},                   {"connectivity", Command::connectivity},
        {"transitivity", Command::transitivity}, {"kernel-witness", Command::kernel_witness},
        {"cancel", Command::cancel},             {"standard-form", Command::standard_form},
    };
    return names;
}

inline Command parse_command(const std::string& s) {
    for (const auto& [name, c] : command_names())
        if (name == s) return c;
    throw UnsupportedCommand("unknown command \"" + s + "\"");
}

inline std::string command_name(Command c) {
    for (const auto& [name, cc] : command_names())
        if (cc == c) return name;
    return "?";
}

enum class OutputFormat { json, table };

struct RunConfig {
    Command command = Command::validate;
    std::vector<std::string> args;  // input path, or lcm's n, or standard-form's g H param
    long bound = 1;
    std::size_t j_max = 2;
    std::size_t max_degree = 2;
    std::uint64_t budget = 1000000;
    OutputFormat format = OutputFormat::json;
    std::uint64_t seed = 0;
    std::string emit;
};

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_budget = 2 };

/** "0", "Z", "Z/2+Z/4", ... normalized to invariant factors. */
inline FgAbGroup parse_group(const std::string& text) {
    std::vector<Int> moduli;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "0" || s.empty()) return FgAbGroup();
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '+')) {
        if (part == "Z") {
            moduli.push_back(0);
        } else if (part.rfind("Z/", 0) == 0) {
            Int m;
            if (m.set_str(part.substr(2), 10) != 0 || m < 1) throw ParseError("bad cyclic factor \"" + part + "\"");
            if (m > 1) moduli.push_back(m);
        } else {
            throw ParseError("bad group summand \"" + part + "\"");
        }
    }
    return normalize_cyclic_sum(moduli).group;
}

/** "trivial" (epsilon -1), "trivial:1", "trivial:-1", "z2", optionally prefixed by "param:". */
inline FormParameter parse_parameter(std::string name, const FgAbGroup& H) {
    if (name.rfind("param:", 0) == 0) name = name.substr(6);
    Json spec;
    if (name == "trivial" || name == "trivial:-1") {
        spec = Json{{"builtin", "trivial"}, {"epsilon", -1}};
    } else if (name == "trivial:1" || name == "trivial:+1") {
        spec = Json{{"builtin", "trivial"}, {"epsilon", 1}};
    } else {
        spec = Json{{"builtin", name}};
    }
    return JsonReader::parameter(spec, H, "parameter");
}

namespace detail {

inline std::string error_type(const std::exception& e) {
    if (dynamic_cast<const AxiomViolation*>(&e)) return "AxiomViolation";
    if (dynamic_cast<const PreservationViolation*>(&e)) return "PreservationViolation";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const UnsupportedCommand*>(&e)) return "UnsupportedCommand";
    if (dynamic_cast<const BudgetExhausted*>(&e)) return "BudgetExhausted";
    if (dynamic_cast<const RankTooSmall*>(&e)) return "RankTooSmall";
    if (dynamic_cast<const NotSupported*>(&e)) return "NotSupported";
    if (dynamic_cast<const SimplexNotFound*>(&e)) return "SimplexNotFound";
    if (dynamic_cast<const ParameterMismatch*>(&e)) return "ParameterMismatch";
    if (dynamic_cast<const BilinearityViolation*>(&e)) return "BilinearityViolation";
    if (dynamic_cast<const HMismatch*>(&e)) return "HMismatch";
    if (dynamic_cast<const InvalidInput*>(&e)) return "InvalidInput";
    return "Error";
}

inline std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline void render_table(const Json& report, std::ostream& out) {
    std::size_t width = 0;
    for (auto it = report.begin(); it != report.end(); ++it) width = std::max(width, it.key().size());
    for (auto it = report.begin(); it != report.end(); ++it) {
        const Json& v = it.value();
        bool rows = v.is_array() && !v.empty() && v.front().is_object();
        if (!rows) {
            out << std::left << std::setw(static_cast<int>(width)) << it.key() << "  " << scalar_text(v) << "\n";
            continue;
        }
        out << it.key() << "\n";
        std::vector<std::string> cols;
        for (auto c = v.front().begin(); c != v.front().end(); ++c) cols.push_back(c.key());
        std::vector<std::size_t> w;
        for (const auto& c : cols) {
            std::size_t m = c.size();
            for (const auto& r : v) m = std::max(m, r.contains(c) ? scalar_text(r[c]).size() : 0);
            w.push_back(m);
        }
        for (std::size_t i = 0; i < cols.size(); ++i) out << "  " << std::left << std::setw(static_cast<int>(w[i])) << cols[i];
        out << "\n";
        for (const auto& r : v) {
            for (std::size_t i = 0; i < cols.size(); ++i)
                out << "  " << std::left << std::setw(static_cast<int>(w[i])) << (r.contains(cols[i]) ? scalar_text(r[cols[i]]) : "");
            out << "\n";
        }
    }
}

struct Outcome {
    Json report;
    int code = exit_ok;
    std::string text;  // replaces the table rendering when set
};

inline const std::string& input_path(const RunConfig& c) {
    if (c.args.empty()) throw ParseError("missing input file");
    return c.args.front();
}

inline FormRef load_form(const Json& root, const std::string& key = "form") {
    return share(make_wall_form(JsonReader::form_data(root, "", key)));
}

inline std::string evidence(long bound) { return "EVIDENCE-AT-BOUND-" + std::to_string(bound); }

inline std::string betti_text(const HomologyReport& h) {
    std::string s = "(";
    for (std::size_t i = 0; i < h.betti.size(); ++i) s += (i ? ", " : "") + std::to_string(h.betti[i]);
    return s + ")";
}

inline Outcome do_validate(const RunConfig& c) {
    WallFormData data = JsonReader::form_data(read_json_file(input_path(c)), "");
    WallForm W = WallForm::unchecked(std::move(data));
    AxiomReport gen = check_axioms(W);
    AxiomReport sampled = sample_axioms(W, c.seed, 200);
    Outcome o;
    o.report["summary"] = gen.ok() ? "axioms i–vi: pass"
                                   : "axiom " + to_string(gen.first().axiom) + " fails at " + gen.first().witness;
    o.report["generators"] = to_json(gen);
    o.report["samples"] = to_json(sampled);
    o.report["seed"] = c.seed;
    if (gen.ok()) o.report["nonsingular"] = is_nonsingular(W).nonsingular;
    if (!gen.ok() || !sampled.ok()) o.code = exit_failure;
    return o;
}

inline Outcome do_rank(const RunConfig& c) {
    FormRef W = load_form(read_json_file(input_path(c)));
    RankCertificate cert = rank_certificate(W, c.bound, c.budget);
    Outcome o;
    std::string s = "r ≥ " + std::to_string(cert.k) + ", upper " + std::to_string(cert.upper) + ", " +
                    (cert.exact() ? "EXACT" : "LOWER-BOUND");
    if (cert.budget_exhausted) s += ", BUDGET-EXHAUSTED";
    o.report["summary"] = s;
    o.report["bound"] = c.bound;
    o.report["certificate"] = to_json(cert);
    if (cert.budget_exhausted) o.code = exit_budget;
    return o;
}

inline Outcome do_stable_rank(const RunConfig& c) {
    FormRef W = load_form(read_json_file(input_path(c)));
    StableRankCertificate s = stable_rank_certificate(W, c.j_max, c.bound, c.budget);
    Outcome o;
    std::string text = "stable r ≥ " + std::to_string(s.k) + " (padding j = " + std::to_string(s.j_used) + ")";
    if (s.budget_exhausted) text += ", BUDGET-EXHAUSTED";
    o.report["summary"] = text;
    o.report["bound"] = c.bound;
    o.report["j_max"] = c.j_max;
    o.report["k"] = s.k;
    o.report["j_used"] = s.j_used;
    o.report["certificate"] = to_json(s.at_j);
    if (s.budget_exhausted) o.code = exit_budget;
    return o;
}

inline Outcome do_complement(const RunConfig& c) {
    Json root = read_json_file(input_path(c));
    FormRef W = load_form(root);
    Outcome o;
    SubWallForm N{W, {}};
    std::optional<WallMorphism> f;
    if (root.contains("morphism")) {
        f = JsonReader::morphism(root["morphism"], W, "/morphism");
        N = image(*f);
    } else if (root.contains("subform")) {
        const Json& s = root["subform"];
        N.gens.minus = JsonReader::elements(JsonReader::field(s, "minus", "/subform"), "/subform/minus", W->minus().size());
        N.gens.plus = JsonReader::elements(JsonReader::field(s, "plus", "/subform"), "/subform/plus", W->plus().size());
        if (!is_sub_hpair(W->pair(), N.gens)) throw InvalidInput("subform is not closed under tau");
    } else {
        throw ParseError("complement needs a \"morphism\" or a \"subform\"");
    }
    SubWallForm perp = orthogonal_complement(N);
    Subgroup pm(W->minus().factors(), perp.gens.minus), pp(W->plus().factors(), perp.gens.plus);
    o.report["summary"] = "complement: minus " + pm.group().to_string() + ", plus " + pp.group().to_string();
    o.report["complement"] = to_json(SubHPair{pm.basis(), pp.basis()});
    if (f && is_standard(f->source()) && is_standard(*W)) {
        WallMorphism cs = complement_standardize(*f);
        o.report["summary"] = o.report["summary"].get<std::string>() + ", standardized as W^" +
                              std::to_string(cs.source().minus().size());
        o.report["standardization"] = to_json(cs);
    }
    return o;
}

inline Outcome do_complex(const RunConfig& c) {
    FormRef W = load_form(read_json_file(input_path(c)));
    LComplex L = build_window(W, c.bound, c.max_degree + 1);
    Outcome o;
    o.report["summary"] = std::to_string(L.vertices.size()) + " vertices, " +
                          std::to_string(L.complex.adjacency().edge_count()) + " edges (" + evidence(c.bound) + ")";
    o.report["label"] = evidence(c.bound);
    o.report["vertex_count"] = L.vertices.size();
    o.report["edge_count"] = L.complex.adjacency().edge_count();
    o.report["complex"] = to_json(L);
    o.text = edge_list(L.complex);
    return o;
}

inline Outcome do_homology(const RunConfig& c) {
    FormRef W = load_form(read_json_file(input_path(c)));
    LComplex L = build_window(W, c.bound, c.max_degree + 1);
    HomologyReport h = homology(L.complex, c.max_degree, c.budget);
    Outcome o;
    o.report["summary"] = "betti = " + betti_text(h) + " (" + evidence(c.bound) + ")";
    o.report["label"] = evidence(c.bound);
    o.report["vertex_count"] = L.vertices.size();
    Json rows = Json::array();
    for (std::size_t i = 0; i <= h.max_degree; ++i)
        rows.push_back(Json{{"degree", i}, {"simplices", h.simplex_counts[i]}, {"betti", h.betti[i]}, {"torsion", to_json(h.torsion[i], 0)}});
    o.report["degrees"] = rows;
    return o;
}

inline Outcome do_lcm(const RunConfig& c) {
    if (c.args.size() < 2) throw ParseError("lcm needs an input file and n");
    FormRef W = load_form(read_json_file(c.args[0]));
    long n = std::stol(c.args[1]);
    if (n < 0) throw ParseError("n must be non-negative");
    LComplex L = build_window(W, c.bound, static_cast<std::size_t>(n) + 1);
    LcmReport r = lcm_report(L.complex, static_cast<std::size_t>(n), c.budget);
    Outcome o;
    o.report["summary"] = std::string("weakly CM: ") + (r.weakly_cm ? "pass" : "fail") +
                          ", locally weakly CM: " + (r.locally_cm ? "pass" : "fail") + " (" + evidence(c.bound) + ")";
    o.report["label"] = evidence(c.bound);
    o.report["vertex_count"] = L.vertices.size();
    Json j = to_json(r);
    for (auto it = j.begin(); it != j.end(); ++it) o.report[it.key()] = it.value();
    return o;
}

inline Outcome do_connectivity(const RunConfig& c) {
    FormRef W = load_form(read_json_file(input_path(c)));
    RankCertificate cert = rank_certificate(W, c.bound, c.budget);
    ConnectivityReport r = connectivity_report(W, cert.k, W->H().size(), c.bound, c.max_degree, c.budget);
    Outcome o;
    std::string s = r.nonempty ? "nonempty" : "empty";
    if (r.nonempty) s += ", betti0 = " + std::to_string(r.homology.betti[0]);
    o.report["summary"] = s + " (" + r.label() + ")";
    o.report["rank_certificate"] = Json{{"k", cert.k}, {"exact", cert.exact()}, {"budget_exhausted", cert.budget_exhausted}};
    Json j = to_json(r);
    for (auto it = j.begin(); it != j.end(); ++it) o.report[it.key()] = it.value();
    if (cert.budget_exhausted) o.code = exit_budget;
    return o;
}

inline Outcome do_transitivity(const RunConfig& c) {
    Json root = read_json_file(input_path(c));
    FormRef W = load_form(root);
    WallMorphism f1 = JsonReader::morphism(JsonReader::field(root, "f1", ""), W, "/f1");
    WallMorphism f2 = JsonReader::morphism(JsonReader::field(root, "f2", ""), W, "/f2");
    WallMorphism phi = transitivity_witness(f1, f2);
    Outcome o;
    o.report["summary"] = "automorphism with phi o f2 = f1";
    o.report["automorphism"] = to_json(phi);
    return o;
}

inline Outcome do_kernel_witness(const RunConfig& c) {
    Json root = read_json_file(input_path(c));
    FormRef W = load_form(root);
    const Json& fj = JsonReader::field(root, "functional", "");
    Int nu_v = JsonReader::integer(JsonReader::field(fj, "nu", "/functional"), "/functional/nu");
    if (nu_v != 0 && nu_v != 1) throw ParseError("/functional/nu: must be 0 or 1");
    const int nu = static_cast<int>(nu_v.get_si());
    HMap phi;
    if (fj.contains("dual_of")) {
        phi = nu == 0 ? dual_of_minus(*W, JsonReader::element(fj["dual_of"], "/functional/dual_of", W->minus().size()))
                      : dual_of_plus(*W, JsonReader::element(fj["dual_of"], "/functional/dual_of", W->plus().size()));
    } else {
        HPair P = probe(W->H(), nu);
        IntMatrix fm = JsonReader::matrix(JsonReader::field(fj, "minus", "/functional"), "/functional/minus", P.minus().size(), W->minus().size());
        IntMatrix fp = JsonReader::matrix(JsonReader::field(fj, "plus", "/functional"), "/functional/plus", P.plus().size(), W->plus().size());
        phi = make_hmap(W->pair(), P, fm, fp);
    }
    Outcome o;
    WallMorphism start;
    if (is_standard(*W)) {
        start = identity_morphism(W);
    } else {
        RankCertificate cert = rank_certificate(W, c.bound, c.budget);
        if (cert.budget_exhausted) o.code = exit_budget;
        start = cert.witness;
    }
    WallMorphism k = kernel_rank_witness(start, phi, nu);
    o.report["summary"] = "kernel witness of rank " + std::to_string(k.source().minus().size()) + " from rank " +
                          std::to_string(start.source().minus().size());
    o.report["nu"] = nu;
    o.report["rank"] = k.source().minus().size();
    o.report["witness"] = to_json(k);
    return o;
}

inline Outcome do_cancel(const RunConfig& c) {
    Json root = read_json_file(input_path(c));
    FormRef M = load_form(root, "form");
    FormRef N = load_form(root, "other_form");
    FormRef W1 = share(standard_form(1, M->param()));
    FormRef SM = perp_sum(M, W1).form, SN = perp_sum(N, W1).form;
    WallMorphism iso = JsonReader::morphism_between(JsonReader::field(root, "iso", ""), SM, SN, "/iso");
    WallMorphism out = cancel_standard(M, N, iso);
    Outcome o;
    o.report["summary"] = "isomorphism M -> N";
    o.report["isomorphism"] = to_json(out);
    return o;
}

inline Outcome do_standard_form(const RunConfig& c) {
    if (c.args.size() < 2) throw ParseError("standard-form needs g and H");
    long g = std::stol(c.args[0]);
    if (g < 0) throw ParseError("g must be non-negative");
    FgAbGroup H = parse_group(c.args[1]);
    FormParameter P = parse_parameter(c.args.size() > 2 ? c.args[2] : "trivial", H);
    WallFormData data = standard_form(static_cast<std::size_t>(g), P).data();
    Json file = form_file_json(data);
    Outcome o;
    o.report["summary"] = "W^" + std::to_string(g) + " over " + H.to_string();
    if (!c.emit.empty()) {
        std::ofstream f(c.emit);
        if (!f) throw InvalidInput("cannot write " + c.emit);
        f << file.dump(2) << "\n";
        o.report["emitted"] = c.emit;
    }
    o.report["form_file"] = file;
    return o;
}

inline Outcome failure(const std::exception& e) {
    Outcome o;
    Json err{{"type", error_type(e)}, {"message", e.what()}};
    if (auto* av = dynamic_cast<const AxiomViolation*>(&e)) {
        err["axiom"] = to_string(av->axiom());
        err["witness"] = av->witness();
    }
    if (auto* pv = dynamic_cast<const PreservationViolation*>(&e)) {
        err["which"] = pv->which();
        err["witness"] = pv->witness();
    }
    o.report["summary"] = std::string(e.what());
    o.report["error"] = err;
    o.code = dynamic_cast<const BudgetExhausted*>(&e) ? exit_budget : exit_failure;
    return o;
}

inline int print_report(const std::string& command, const Outcome& o, OutputFormat format, std::ostream& out) {
    Json report{{"command", command}};
    for (auto it = o.report.begin(); it != o.report.end(); ++it) report[it.key()] = it.value();
    report["exit"] = o.code;
    if (format == OutputFormat::json) {
        out << report.dump(2) << "\n";
    } else if (!o.text.empty()) {
        out << "# " << report["summary"].get<std::string>() << "\n" << o.text;
    } else {
        render_table(report, out);
    }
    return o.code;
}

}  // namespace detail

/** Runs one command; the report goes to `out` and the return value is the exit status. */
inline int run(const RunConfig& c, std::ostream& out) {
    if (c.budget == 0) throw InvalidInput("budget must be positive");
    detail::Outcome o;
    try {
        switch (c.command) {
            case Command::validate: o = detail::do_validate(c); break;
            case Command::rank: o = detail::do_rank(c); break;
            case Command::stable_rank: o = detail::do_stable_rank(c); break;
            case Command::complement: o = detail::do_complement(c); break;
            case Command::complex: o = detail::do_complex(c); break;
            case Command::homology: o = detail::do_homology(c); break;
            case Command::lcm: o = detail::do_lcm(c); break;
            case Command::connectivity: o = detail::do_connectivity(c); break;
            case Command::transitivity: o = detail::do_transitivity(c); break;
            case Command::kernel_witness: o = detail::do_kernel_witness(c); break;
            case Command::cancel: o = detail::do_cancel(c); break;
            case Command::standard_form: o = detail::do_standard_form(c); break;
        }
    } catch (const std::exception& e) {
        o = detail::failure(e);
    }
    return detail::print_report(command_name(c.command), o, c.format, out);
}

/** As run(), with the command given by name; unknown names produce an error report. */
inline int run(const std::string& command, RunConfig c, std::ostream& out) {
    try {
        c.command = parse_command(command);
    } catch (const UnsupportedCommand& e) {
        return detail::print_report(command, detail::failure(e), c.format, out);
    }
    return run(c, out);
}

}  // namespace wallform
