#pragma once

/** @file json_io.hpp
 *  @brief JSON reading and writing for groups, pairs, forms, morphisms and reports.
 */

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wallform/homology.hpp"
#include "wallform/l_complex.hpp"
#include "wallform/rank.hpp"

namespace wallform {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- writing

inline Json to_json(const Int& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

inline Json to_json(const Coords& v) {
    Json a = Json::array();
    for (const auto& c : v) a.push_back(to_json(c));
    return a;
}

inline Json to_json(const std::vector<Int>& v, int) { return to_json(Coords(v)); }

inline Json to_json(const FgAbGroup& g) { return Json{{"invariant_factors", to_json(g.factors(), 0)}}; }

inline Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
    return rows;
}

inline Json to_json(const GroupHom& f) {
    return Json{{"domain", to_json(f.domain())}, {"codomain", to_json(f.codomain())}, {"matrix", to_json(f.matrix())}};
}

inline Json to_json(const HPair& p) {
    Json tau = Json::array();
    for (std::size_t i = 0; i < p.minus().size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < p.H().size(); ++j) row.push_back(to_json(p.tau_generator(i, j)));
        tau.push_back(row);
    }
    return Json{{"H", to_json(p.H())}, {"minus", to_json(p.minus())}, {"plus", to_json(p.plus())}, {"tau", tau}};
}

inline Json to_json(const FormParameter& P) {
    Json tau = to_json(P.G)["tau"];
    return Json{{"G_minus", to_json(P.G.minus())}, {"G_plus", to_json(P.G.plus())}, {"tau_G", tau},
                {"partial", to_json(P.partial.matrix())}, {"pi", to_json(P.pi.matrix())}, {"epsilon", P.epsilon}};
}

inline Json form_json(const WallFormData& d) {
    Json f = to_json(d.pair);
    f["lambda"] = to_json(d.lambda);
    const std::size_t np = d.pair.plus().size();
    Json mu = Json::array();
    for (std::size_t i = 0; i < np; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < np; ++k) row.push_back(to_json(d.mu[i * np + k]));
        mu.push_back(row);
    }
    f["mu"] = mu;
    Json am = Json::array(), ap = Json::array();
    for (const auto& a : d.alpha_minus) am.push_back(to_json(a));
    for (const auto& a : d.alpha_plus) ap.push_back(to_json(a));
    f["alpha_minus"] = am;
    f["alpha_plus"] = ap;
    return f;
}

inline Json form_file_json(const WallFormData& d) { return Json{{"parameter", to_json(d.param)}, {"form", form_json(d)}}; }

inline Json to_json(const WallMorphism& f) {
    Json j = Json::object();
    if (f.source().minus().free_rank() == f.source().minus().size() && is_standard(f.source())) {
        Frame fr = frame_of(f);
        Json xs = Json::array(), ys = Json::array();
        for (const auto& x : fr.xs) xs.push_back(to_json(x));
        for (const auto& y : fr.ys) ys.push_back(to_json(y));
        j["source_rank"] = fr.xs.size();
        j["frame"] = Json{{"x", xs}, {"y", ys}};
    }
    j["minus"] = to_json(f.minus());
    j["plus"] = to_json(f.plus());
    return j;
}

inline Json to_json(const SubHPair& s) {
    Json m = Json::array(), p = Json::array();
    for (const auto& x : s.minus) m.push_back(to_json(x));
    for (const auto& y : s.plus) p.push_back(to_json(y));
    return Json{{"minus", m}, {"plus", p}};
}

inline Json to_json(const AxiomReport& r) {
    Json fs = Json::array();
    for (const auto& f : r.failures) fs.push_back(Json{{"axiom", to_string(f.axiom)}, {"witness", f.witness}});
    return Json{{"ok", r.ok()}, {"failures", fs}};
}

inline Json to_json(const HomologyReport& h) {
    Json t = Json::array();
    for (const auto& row : h.torsion) t.push_back(to_json(row, 0));
    Json counts = Json::array();
    for (auto c : h.simplex_counts) counts.push_back(c);
    return Json{{"max_degree", h.max_degree}, {"simplex_counts", counts}, {"betti", h.betti}, {"torsion", t}};
}

inline Json to_json(const LcmReport& r) {
    Json levels = Json::array();
    for (const auto& l : r.levels) {
        Json failing = Json::array();
        for (const auto& s : l.failing) failing.push_back(s);
        levels.push_back(Json{{"level", l.level},
                              {"connectivity", l.connectivity},
                              {"vacuous", l.vacuous},
                              {"simplices", l.simplices},
                              {"failures", l.failures},
                              {"failing", failing}});
    }
    return Json{{"n", r.n}, {"weakly_cm", r.weakly_cm}, {"locally_cm", r.locally_cm}, {"levels", levels}};
}

inline Json to_json(const ConnectivityReport& r) {
    return Json{{"label", r.label()},
                {"bound", r.bound},
                {"g", r.g},
                {"d", r.d},
                {"vertices", r.vertices},
                {"edges", r.edges},
                {"nonempty", r.nonempty},
                {"nonempty_expected", r.nonempty_expected},
                {"connected_expected", r.connected_expected},
                {"target_degree", r.target_degree},
                {"degrees_vanish", r.degrees_vanish},
                {"homology", to_json(r.homology)}};
}

inline Json to_json(const RankCertificate& c) {
    return Json{{"k", c.k},
                {"upper", c.upper},
                {"exact", c.exact()},
                {"budget_exhausted", c.budget_exhausted},
                {"candidates", c.candidates},
                {"witness", to_json(c.witness)}};
}

inline Json to_json(const LComplex& L) {
    Json vs = Json::array();
    for (const auto& v : L.vertices) {
        Frame fr = frame_of(v);
        vs.push_back(Json{{"x", to_json(fr.xs[0])}, {"y", to_json(fr.ys[0])}});
    }
    Json rows = Json::array();
    const auto& A = L.complex.adjacency();
    for (std::size_t i = 0; i < A.size(); ++i) {
        std::string r(A.size(), '0');
        for (std::size_t j = 0; j < A.size(); ++j)
            if (A(i, j)) r[j] = '1';
        rows.push_back(r);
    }
    return Json{{"bound", L.bound}, {"vertices", vs}, {"adjacency", rows}};
}

inline std::string edge_list(const CliqueComplex& X) {
    std::ostringstream os;
    os << X.vertex_count() << " " << X.adjacency().edge_count() << "\n";
    for (std::size_t i = 0; i < X.vertex_count(); ++i)
        for (std::size_t j = i + 1; j < X.vertex_count(); ++j)
            if (X.adjacent(i, j)) os << i << " " << j << "\n";
    return os.str();
}

// ---------------------------------------------------------------- reading

/** Reads values out of a parsed document, reporting failures with their JSON path. */
class JsonReader {
public:
    [[noreturn]] static void fail(const std::string& path, const std::string& what) {
        throw ParseError(path + ": " + what);
    }

    static const Json& field(const Json& j, const std::string& key, const std::string& path) {
        if (!j.is_object()) fail(path, "expected an object");
        auto it = j.find(key);
        if (it == j.end()) fail(path, "missing field \"" + key + "\"");
        return *it;
    }

    static Int integer(const Json& j, const std::string& path) {
        if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
        if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
        if (j.is_string()) {
            Int v;
            if (v.set_str(j.get<std::string>(), 10) != 0) fail(path, "not an integer");
            return v;
        }
        fail(path, "expected an integer");
    }

    static Coords element(const Json& j, const std::string& path, std::size_t size) {
        if (!j.is_array()) fail(path, "expected an array of integers");
        if (j.size() != size) fail(path, "expected " + std::to_string(size) + " coordinates, got " + std::to_string(j.size()));
        Coords v;
        for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer(j[i], path + "/" + std::to_string(i)));
        return v;
    }

    static std::vector<Coords> elements(const Json& j, const std::string& path, std::size_t size) {
        if (!j.is_array()) fail(path, "expected an array of elements");
        std::vector<Coords> out;
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(element(j[i], path + "/" + std::to_string(i), size));
        return out;
    }

    static FgAbGroup group(const Json& j, const std::string& path) {
        const Json& f = field(j, "invariant_factors", path);
        if (!f.is_array()) fail(path + "/invariant_factors", "expected an array");
        std::vector<Int> fs;
        for (std::size_t i = 0; i < f.size(); ++i) fs.push_back(integer(f[i], path + "/invariant_factors/" + std::to_string(i)));
        try {
            return FgAbGroup(std::move(fs));
        } catch (const InvalidInput& e) {
            fail(path, e.what());
        }
    }

    static IntMatrix matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols) {
        const Json& m = j.is_object() ? field(j, "matrix", path) : j;
        const std::string p = j.is_object() ? path + "/matrix" : path;
        if (!m.is_array()) fail(p, "expected a matrix");
        if (m.size() != rows) fail(p, "expected " + std::to_string(rows) + " rows, got " + std::to_string(m.size()));
        IntMatrix out(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            Coords r = element(m[i], p + "/" + std::to_string(i), cols);
            for (std::size_t k = 0; k < cols; ++k) out(i, k) = r[k];
        }
        return out;
    }

    static HPair hpair(const Json& j, const std::string& path) {
        FgAbGroup H = group(field(j, "H", path), path + "/H");
        FgAbGroup minus = group(field(j, "minus", path), path + "/minus");
        FgAbGroup plus = group(field(j, "plus", path), path + "/plus");
        std::vector<Coords> tau = tau_table(field(j, "tau", path), path + "/tau", minus.size(), H.size(), plus.size());
        try {
            return HPair(std::move(H), std::move(minus), std::move(plus), std::move(tau));
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }

    static std::vector<Coords> tau_table(const Json& j, const std::string& path, std::size_t rows, std::size_t cols,
                                         std::size_t size) {
        if (!j.is_array() || j.size() != rows) fail(path, "expected " + std::to_string(rows) + " rows");
        std::vector<Coords> out;
        for (std::size_t i = 0; i < rows; ++i) {
            auto row = elements(j[i], path + "/" + std::to_string(i), size);
            if (row.size() != cols) fail(path + "/" + std::to_string(i), "expected " + std::to_string(cols) + " entries");
            for (auto& e : row) out.push_back(std::move(e));
        }
        return out;
    }

    static int epsilon(const Json& j, const std::string& path) {
        Int e = integer(j, path);
        if (e != 1 && e != -1) fail(path, "epsilon must be 1 or -1");
        return static_cast<int>(e.get_si());
    }

    /** "param:trivial" (epsilon -1), "param:z2", {"builtin": ..., "epsilon": ...} or an explicit parameter. */
    static FormParameter parameter(const Json& j, const FgAbGroup& H, const std::string& path) {
        std::string builtin;
        int eps = -1;
        if (j.is_string()) {
            builtin = j.get<std::string>();
            if (builtin.rfind("param:", 0) != 0) fail(path, "named parameters are written param:<name>");
            builtin = builtin.substr(6);
        } else if (j.is_object() && j.contains("builtin")) {
            if (!j["builtin"].is_string()) fail(path + "/builtin", "expected a name");
            builtin = j["builtin"].get<std::string>();
            if (j.contains("epsilon")) eps = epsilon(j["epsilon"], path + "/epsilon");
        }
        try {
            if (builtin == "trivial") return trivial_parameter(H, eps);
            if (builtin == "z2") {
                FormParameter P = z2_parameter();
                if (P.H() != H) fail(path, "the z2 parameter needs H = Z/2");
                return P;
            }
            if (!builtin.empty()) fail(path, "unknown built-in parameter \"" + builtin + "\"");
            FgAbGroup Gm = group(field(j, "G_minus", path), path + "/G_minus");
            FgAbGroup Gp = group(field(j, "G_plus", path), path + "/G_plus");
            auto tau = tau_table(field(j, "tau_G", path), path + "/tau_G", Gm.size(), H.size(), Gp.size());
            HPair G(H, Gm, Gp, std::move(tau));
            IntMatrix partial = matrix(field(j, "partial", path), path + "/partial", Gp.size(), H.size());
            IntMatrix pi = matrix(field(j, "pi", path), path + "/pi", H.size(), Gp.size());
            return make_form_parameter(std::move(G), partial, pi, epsilon(field(j, "epsilon", path), path + "/epsilon"));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }

    /** A form file: {"parameter": ..., "form": {...}}; the form is not checked against the axioms. */
    static WallFormData form_data(const Json& root, const std::string& path, const std::string& key = "form") {
        const Json& f = field(root, key, path);
        const std::string fp = path + "/" + key;
        HPair pair = hpair(f, fp);
        FormParameter P = parameter(field(root, "parameter", path), pair.H(), path + "/parameter");
        const std::size_t nm = pair.minus().size(), np = pair.plus().size();
        IntMatrix lambda = matrix(field(f, "lambda", fp), fp + "/lambda", nm, np);
        std::vector<Coords> mu = tau_table(field(f, "mu", fp), fp + "/mu", np, np, pair.H().size());
        auto am = elements(field(f, "alpha_minus", fp), fp + "/alpha_minus", P.G.minus().size());
        auto ap = elements(field(f, "alpha_plus", fp), fp + "/alpha_plus", P.G.plus().size());
        if (am.size() != nm) fail(fp + "/alpha_minus", "expected one value per minus generator");
        if (ap.size() != np) fail(fp + "/alpha_plus", "expected one value per plus generator");
        return WallFormData{std::move(P), std::move(pair), std::move(lambda), std::move(mu), std::move(am), std::move(ap)};
    }

    /** A morphism out of W^k: {"frame": {"x": [...], "y": [...]}} or {"source_rank": k, "minus": ..., "plus": ...}. */
    static WallMorphism morphism(const Json& j, const FormRef& target, const std::string& path) {
        try {
            if (j.is_object() && j.contains("frame")) {
                const Json& fr = j["frame"];
                Frame frame{elements(field(fr, "x", path + "/frame"), path + "/frame/x", target->minus().size()),
                            elements(field(fr, "y", path + "/frame"), path + "/frame/y", target->plus().size())};
                if (frame.xs.size() != frame.ys.size()) fail(path + "/frame", "x and y need the same length");
                return morphism_from_frame(frame.xs.size(), target, frame);
            }
            Int k = integer(field(j, "source_rank", path), path + "/source_rank");
            if (k < 0) fail(path + "/source_rank", "rank must be non-negative");
            FormRef src = share(standard_form(k.get_ui(), target->param()));
            return morphism_between(j, src, target, path);
        } catch (const ParseError&) {
            throw;
        } catch (const PreservationViolation&) {
            throw;
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }

    static WallMorphism morphism_between(const Json& j, const FormRef& src, const FormRef& dst, const std::string& path) {
        IntMatrix m = matrix(field(j, "minus", path), path + "/minus", dst->minus().size(), src->minus().size());
        IntMatrix p = matrix(field(j, "plus", path), path + "/plus", dst->plus().size(), src->plus().size());
        return make_morphism(src, dst, m, p);
    }
};

/** Parses a document, mapping syntax errors to ParseError with a line number. */
inline Json parse_json(const std::string& text, const std::string& name) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw ParseError(name + ":" + std::to_string(line) + ": " + e.what());
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

}  // namespace wallform
