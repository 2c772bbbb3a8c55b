#include "monoval/cli.hpp"
#include "monoval/parser.hpp"
#include <algorithm>
#include <set>
#include <sstream>

namespace monoval {

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"roots", "polygon", "qo-check", "aj", "rel", "stability", "gap", "disc"};
    return c;
}

namespace {

struct Statement {
    std::string key, value;
    int line = 0, column = 0;  // 0: given on the command line

    [[noreturn]] void fail(const std::string& m) const {
        if (line > 0) throw ParseError(m, line, column);
        throw ParseError("--" + key + ": " + m);
    }
    // errors without a position get the statement's
    template <class F>
    auto located(F&& f) const {
        try {
            return f();
        } catch (const ParseError& e) {
            if (e.line > 0 || line == 0) throw;
            fail(e.what());
        }
    }
};

const std::set<std::string> known_keys{"cmd",    "weights", "variables", "poly",   "perturb", "series",         "precision", "seed",
                                       "q",      "epsilon", "amax",      "count",  "budget",  "scale-nonmonic", "format"};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::map<std::string, Statement> collect(const std::string& text, const Overrides& overrides) {
    std::map<std::string, Statement> st;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw.substr(0, raw.find('#'));
        if (trim(s).empty()) continue;
        int first = static_cast<int>(s.find_first_not_of(" \t")) + 1;
        auto colon = s.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value'", line, first);
        std::string key = trim(s.substr(0, colon));
        if (key == "command") key = "cmd";
        if (!known_keys.count(key)) throw ParseError("unknown statement '" + key + "'", line, first);
        if (st.count(key)) throw ParseError("repeated statement '" + key + "'", line, first);
        auto vb = s.find_first_not_of(" \t", colon + 1);
        if (vb == std::string::npos) throw ParseError("empty value for '" + key + "'", line, static_cast<int>(colon) + 2);
        std::string value = s.substr(vb);
        while (!value.empty() && (value.back() == ' ' || value.back() == '\t' || value.back() == '\r')) value.pop_back();
        st[key] = {key, value, line, static_cast<int>(vb) + 1};
    }
    for (auto& [k, v] : overrides) {
        if (!known_keys.count(k)) throw ParseError("unknown option '" + k + "'");
        st[k] = {k, v, 0, 0};
    }
    return st;
}

std::uint64_t parse_unsigned(const Statement& s) {
    const std::string& v = s.value;
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 19) s.fail("expected a nonnegative integer");
    return std::stoull(v);
}

bool parse_flag(const Statement& s) {
    if (s.value == "true" || s.value == "yes" || s.value == "1") return true;
    if (s.value == "false" || s.value == "no" || s.value == "0") return false;
    s.fail("expected true or false");
}

} // namespace

InputDocument parse_document(const std::string& text, const Overrides& overrides) {
    auto st = collect(text, overrides);
    InputDocument doc;
    auto has = [&](const char* k) { return st.count(k) > 0; };

    if (has("cmd")) {
        const Statement& s = st["cmd"];
        if (std::find(commands().begin(), commands().end(), s.value) == commands().end()) s.fail("unknown command '" + s.value + "'");
        doc.command = s.value;
    }
    if (has("format")) {
        const Statement& s = st["format"];
        if (s.value != "text" && s.value != "json" && s.value != "svg") s.fail("format must be text, json or svg");
        doc.format = s.value;
    }
    if (has("scale-nonmonic")) doc.scale_nonmonic = parse_flag(st["scale-nonmonic"]);
    if (has("seed")) doc.seed = parse_unsigned(st["seed"]);
    if (has("count")) {
        doc.count = parse_unsigned(st["count"]);
        if (doc.count == 0) st["count"].fail("count must be positive");
    }
    if (has("budget")) doc.budget = parse_unsigned(st["budget"]);
    if (has("q")) doc.q = static_cast<long>(parse_unsigned(st["q"]));
    auto rational = [&](const char* k) {
        const Statement& s = st[k];
        return s.located([&] { return Rational::parse(s.value); });
    };
    if (has("precision")) {
        doc.precision = rational("precision");
        doc.precision_given = true;
        if (doc.precision.sign() <= 0) st["precision"].fail("precision must be positive");
    }
    if (has("epsilon")) {
        doc.epsilon = rational("epsilon");
        if (doc.epsilon.sign() <= 0 || doc.epsilon >= Rational(1)) st["epsilon"].fail("epsilon must lie in (0, 1)");
    }
    if (has("amax")) doc.a_max = rational("amax");

    // expressions first, so the variable count can come from them
    ExprOptions strict;
    ExprOptions laurent{false, true, true};
    std::map<std::string, Expr> exprs;
    for (const char* k : {"poly", "perturb", "series"}) {
        if (!has(k)) continue;
        const Statement& s = st[k];
        exprs[k] = parse_expr(s.value, std::string(k) == "series" ? laurent : strict, std::max(s.line, 1), std::max(s.column, 1));
    }

    std::size_t n = 0;
    if (has("variables")) {
        const Statement& s = st["variables"];
        std::istringstream vs(s.value);
        std::string name;
        while (std::getline(vs, name, ',')) {
            name = trim(name);
            if (name != "x" + std::to_string(doc.variables.size() + 1)) s.fail("variables must be x1, x2, ... in order, got '" + name + "'");
            doc.variables.push_back(name);
        }
        n = doc.variables.size();
    }
    if (has("weights")) {
        const Statement& s = st["weights"];
        doc.weights = s.located([&] { return parse_weights(s.value); });
        doc.weights_text = s.value;
        if (n && n != doc.weights->nvars())
            s.fail(std::to_string(doc.weights->nvars()) + " weights for " + std::to_string(n) + " variables");
        n = doc.weights->nvars();
    }
    if (!n) {
        for (auto& [k, e] : exprs) n = std::max(n, max_variable_index(e));
        n = std::max<std::size_t>(n, 1);
    }
    if (!doc.weights) {
        doc.weights = Weights::ones(n);
        doc.weights_text = "ord";
    }
    if (doc.variables.empty())
        for (std::size_t i = 0; i < n; ++i) doc.variables.push_back("x" + std::to_string(i + 1));

    TowerPtr base = Tower::base(n);
    auto monic = [&](const char* k) {
        const Statement& s = st[k];
        UniPoly<TowerElem> p = to_tower_poly(exprs[k], base);
        if (p.degree() < 1) s.fail("polynomial must have positive degree in Z");
        if (!p.lead().is_one()) {
            std::string lead = p.lead().str(doc.variables);
            if (!doc.scale_nonmonic || std::string(k) != "poly")
                s.fail("polynomial is not monic in Z (leading coefficient " + lead + "); use --scale-nonmonic");
            // Q(Z) = a_d^(d-1) P(Z / a_d), monic with the same coefficient ring
            int d = p.degree();
            std::vector<TowerElem> c(p.coeffs());
            TowerElem ad = p.lead();
            for (int j = 0; j < d; ++j) c[j] = c[j] * ad.pow(d - 1 - j);
            c[d] = TowerElem(base, Rational(1));
            p = UniPoly<TowerElem>(c);
            doc.scaling = Scaling{ad, Rational(1), "z = Z/(" + lead + ")"};
        }
        return MonicPoly::from_tower_poly(doc.weights, p);
    };
    if (has("poly")) {
        doc.poly = monic("poly");
        doc.poly_text = st["poly"].value;
    }
    if (has("perturb")) doc.perturb = monic("perturb");
    if (has("series")) doc.series = to_tower_elem(exprs["series"], base);

    bool needs_poly = doc.command != "rel" && doc.command != "gap";
    if (needs_poly && !doc.poly) throw ParseError("command '" + doc.command + "' needs a 'poly' statement");
    if (doc.command == "gap" && !doc.series) throw ParseError("command 'gap' needs a 'series' statement");
    return doc;
}

// ---- output ------------------------------------------------------------------

namespace {

Json coords(const GradeValue& g) {
    Json a = Json::array();
    for (auto& c : g.c) a.push_back(c.str());
    return a;
}

Json precision_json(const Series::Precision& p) { return p ? coords(*p) : Json(nullptr); }

Json series_json(const Series& s) {
    auto names = element_names(*s.tower());
    Json layers = Json::array();
    for (auto& l : s.layers()) layers.push_back({{"deg", coords(l.degree)}, {"term", l.value.str(names)}});
    return layers;
}

std::string level_minpoly(const Tower& t, std::size_t i) {
    auto names = element_names(t);
    UniPoly<TowerElem> m(t.level(i).modulus);
    return m.str([&](const TowerElem& c) { return c.str(names); }, "Z");
}

Json tower_json(const Tower& t) {
    Json a = Json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Level& L = t.level(i);
        a.push_back({{"gen", L.name}, {"kind", to_string(L.kind)}, {"deg", coords(L.degree)}, {"minpoly", level_minpoly(t, i)}});
    }
    return a;
}

Json homogeneous_json(const std::vector<HomogeneousElement>& hs, const Weights& w) {
    Json a = Json::array();
    for (auto& h : hs)
        a.push_back({{"name", h.name},
                     {"minpoly", format_rpoly(h.minpoly, w.nvars())},
                     {"deg", coords(h.degree)},
                     {"integral", h.integral},
                     {"minimal", h.minimality_certified}});
    return a;
}

Json root_json(const PuiseuxRoot& r, const Weights& w) {
    Json j;
    j["tower"] = tower_json(*r.tower());
    j["expansion"] = series_json(r.expansion);
    j["precision"] = precision_json(r.precision());
    auto v = r.expansion.valuation();
    j["valuation"] = v ? coords(*v) : Json(nullptr);
    j["conjugates"] = r.conjugates;
    j["homogeneous"] = homogeneous_json(r.homogeneous, w);
    j["notes"] = r.notes;
    return j;
}

Json roots_json(const std::vector<PuiseuxRoot>& roots, const Weights& w) {
    Json a = Json::array();
    for (auto& r : roots) a.push_back(root_json(r, w));
    return a;
}

Json exponent_json(const Exponent& e) {
    Json a = Json::array();
    for (std::size_t i = 0; i < e.size(); ++i) a.push_back(e[i].str());
    return a;
}

SolveOptions solve_options(const InputDocument& doc) {
    SolveOptions o;
    o.seed = doc.seed;
    if (doc.budget) o.layer_budget = *doc.budget;
    return o;
}

void run_command(const InputDocument& doc, OutputDocument& out) {
    const Weights& w = *doc.weights;
    GradeValue target = w.constant(doc.precision);
    Json& j = out.json;
    const std::string& cmd = doc.command;

    if (cmd == "roots") {
        out.roots = newton_puiseux_roots(*doc.poly, target, solve_options(doc));
        j["roots"] = roots_json(out.roots, w);
    } else if (cmd == "polygon") {
        NewtonPolygon np = newton_polygon(*doc.poly);
        Json pts = Json::array(), verts = Json::array(), edges = Json::array();
        for (auto& p : np.points) pts.push_back({{"index", p.index}, {"value", coords(p.value)}});
        for (auto v : np.vertices) verts.push_back({{"index", np.points[v].index}, {"value", coords(np.points[v].value)}});
        for (auto& e : np.edges) edges.push_back({{"slope", coords(e.slope)}, {"slope_text", w.format(e.slope)}, {"length", e.length}});
        j["points"] = pts;
        j["vertices"] = verts;
        j["edges"] = edges;
        out.svg = polygon_svg(np, w);
    } else if (cmd == "qo-check") {
        QuasiOrdinary qo = quasi_ordinary_test(*doc.poly);
        j["quasi_ordinary"] = qo.yes;
        if (qo.yes) {
            j["monomial"] = exponent_json(qo.monomial);
            j["unit"] = series_json(qo.unit);
        } else {
            j["obstruction"] = qo.obstruction;
        }
        j["discriminant_precision"] = precision_json(qo.precision);
        WeightedDisc wd = weighted_disc_check(*doc.poly);
        Json wj;
        wj["holds"] = wd.yes;
        wj["lowest_layer"] = wd.delta.str(doc.variables);
        if (wd.yes) wj["unit"] = series_json(wd.unit);
        else wj["reason"] = wd.reason;
        j["weighted"] = wj;
    } else if (cmd == "aj") {
        AjRoots aj = aj_roots(*doc.poly, target, solve_options(doc));
        out.roots = aj.roots;
        j["q"] = aj.q;
        j["roots"] = roots_json(out.roots, w);
    } else if (cmd == "rel") {
        Json rels = Json::array();
        for (auto& r : kernel_relations(w)) {
            Json row = Json::array();
            for (auto& x : r) row.push_back(x.str());
            rels.push_back(row);
        }
        j["relations"] = rels;
        j["rank"] = w.value_rank();
        RelApproximation ra = rel_approx(w, doc.q, doc.epsilon, doc.budget.value_or(1000000));
        j["q"] = ra.q;
        Json alpha = Json::array();
        for (auto& a : ra.alpha) alpha.push_back(a.get_str());
        j["alpha"] = alpha;
        j["max_displacement"] = ra.max_displacement.str();
        j["candidates"] = ra.candidates;
        if (doc.poly) {
            // sandwich check on the homogeneous coefficients of the input
            Json checks = Json::array();
            for (auto& c : doc.poly->coeffs()) {
                if (c.is_zero()) continue;
                for (auto& l : c.layers()) {
                    if (l.value.level() >= 0 || l.value.base().has_denominator()) continue;
                    TransferBounds tb = homogeneity_transfer_check(l.value.base().num(), w, ra, doc.epsilon);
                    checks.push_back({{"term", l.value.str(doc.variables)},
                                      {"nu_alpha'", tb.degree_prime.str()},
                                      {"lower", tb.lower.str()},
                                      {"upper", tb.upper.str()},
                                      {"holds", tb.holds}});
                }
            }
            j["sandwich"] = checks;
        }
    } else if (cmd == "stability") {
        GradeValue c = stability_threshold(*doc.poly);
        j["threshold"] = coords(c);
        out.roots = newton_puiseux_roots(*doc.poly, target, solve_options(doc));
        StableTower stw = stable_tower(*doc.poly, out.roots);
        j["stable_tower"] = homogeneous_json(stw.elements, w);
        j["roots"] = roots_json(out.roots, w);
        if (doc.perturb) {
            Transfer tr = transfer_factorization(*doc.poly, *doc.perturb, out.roots, target, solve_options(doc));
            Json t;
            t["identical"] = tr.identical;
            t["perturbation"] = tr.identical ? Json(nullptr) : coords(tr.perturbation);
            t["above_threshold"] = tr.identical || w.less(c, tr.perturbation);
            t["root_separation"] = coords(tr.root_separation);
            Json fs = Json::array();
            for (auto& f : tr.factors)
                fs.push_back({{"p_factor", f.p_factor.str()},
                              {"q_factor", f.q_factor.str()},
                              {"p_classes", f.p_classes},
                              {"q_classes", f.q_classes},
                              {"closeness", f.closeness ? coords(*f.closeness) : Json(nullptr)}});
            t["factors"] = fs;
            t["irreducible"] = tr.factors.size() == 1;
            j["transfer"] = t;
        }
    } else if (cmd == "gap") {
        Series::Precision p;
        if (doc.precision_given) p = target;
        Series z = Series::from_elem(doc.weights, *doc.series, p);
        ApproximationRecord rec = record(z, partial_sum_approximants(z));
        std::optional<int> deg;
        if (doc.poly) deg = doc.poly->degree();
        Rational a_max = doc.a_max.value_or(default_a_max(deg));
        Json samples = Json::array();
        for (auto& s : rec.samples) samples.push_back({{"denominator", coords(s.denominator)}, {"error", coords(s.error)}});
        j["samples"] = samples;
        j["notices"] = rec.notices;
        LiouvilleReport lr = liouville_flag(rec, a_max, doc.count);
        j["a_max"] = a_max.str();
        j["count"] = doc.count;
        j["used"] = lr.used;
        Json ratios = Json::array();
        for (auto& [lo, hi] : lr.ratios) ratios.push_back({lo.str(), hi.str()});
        j["ratios"] = ratios;
        j["flagged"] = lr.flagged;
        j["evidence"] = lr.evidence;
    } else if (cmd == "disc") {
        Series d = discriminant(*doc.poly);
        j["discriminant"] = series_json(d);
        j["discriminant_precision"] = precision_json(d.precision());
        WeightedDisc wd = weighted_disc_check(*doc.poly);
        j["weighted"] = wd.yes;
        j["lowest_layer"] = wd.delta.str(doc.variables);
        if (wd.yes) j["unit"] = series_json(wd.unit);
        else j["reason"] = wd.reason;
    }
}

} // namespace

OutputDocument run(const InputDocument& doc) {
    OutputDocument out;
    out.command = doc.command;
    Json& j = out.json;
    j["command"] = doc.command;
    j["weights"] = doc.weights->describe();
    j["variables"] = doc.variables;
    if (doc.poly) j["poly"] = doc.poly->str();
    if (doc.scaling)
        j["scaling"] = {{"lead", doc.scaling->lead.str(doc.variables)}, {"a", doc.scaling->a.str()},
                        {"back_substitution", doc.scaling->back_substitution}};
    if (doc.perturb) j["perturb"] = doc.perturb->str();
    if (doc.series) j["series"] = doc.series->str(doc.variables);
    j["precision"] = doc.precision.str();
    j["seed"] = std::to_string(doc.seed);
    // module errors keep their type, with the command in front
    const std::string ctx = doc.command + ": ";
    try {
        run_command(doc, out);
    } catch (const PrecisionError& e) {
        throw PrecisionError(ctx + e.what());
    } catch (const Unsupported& e) {
        throw Unsupported(ctx + e.what());
    } catch (const DomainError& e) {
        throw DomainError(ctx + e.what());
    } catch (const BudgetExhausted& e) {
        throw BudgetExhausted(ctx + e.what());
    }
    return out;
}

namespace {

void render_text(const Json& j, const std::string& indent, std::ostringstream& os) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        std::string head = j.is_object() ? indent + it.key() + ":" : indent + "-";
        bool scalar_array = v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
        if (v.is_primitive()) {
            os << head << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        } else if (scalar_array) {
            os << head << " [";
            bool first = true;
            for (auto& x : v) {
                os << (first ? "" : ", ") << (x.is_string() ? x.get<std::string>() : x.dump());
                first = false;
            }
            os << "]\n";
        } else {
            os << head << "\n";
            render_text(v, indent + "  ", os);
        }
    }
}

} // namespace

std::string serialize(const OutputDocument& out, const std::string& format) {
    if (format == "json") return out.json.dump(2) + "\n";
    if (format == "svg") {
        if (!out.svg) throw DomainError("svg output is only available for the polygon command");
        return *out.svg;
    }
    if (format == "text") {
        std::ostringstream os;
        render_text(out.json, "", os);
        return os.str();
    }
    throw DomainError("unknown format '" + format + "'");
}

namespace {

LevelKind kind_from(const std::string& s) {
    for (LevelKind k : {LevelKind::number_field, LevelKind::residue, LevelKind::homogeneous})
        if (to_string(k) == s) return k;
    throw ParseError("unknown level kind '" + s + "'");
}

GradeValue grade_from(const Json& a) {
    GradeValue g;
    for (auto& x : a) g.c.push_back(Rational::parse(x.get<std::string>()));
    return g;
}

} // namespace

std::vector<std::string> roundtrip_mismatches(const OutputDocument& out, const std::string& json_text) {
    std::vector<std::string> bad;
    Json j = Json::parse(json_text);
    if (out.roots.empty()) return bad;
    const Json& roots = j.at("roots");
    if (roots.size() != out.roots.size()) return {"root count differs"};
    for (std::size_t i = 0; i < out.roots.size(); ++i) {
        const PuiseuxRoot& r = out.roots[i];
        std::string where = "root " + std::to_string(i) + ": ";
        try {
            TowerPtr t = Tower::base(r.tower()->nvars());
            for (auto& L : roots[i].at("tower")) {
                UniPoly<TowerElem> m = parse_tower_poly(L.at("minpoly").get<std::string>(), t);
                t = Tower::adjoin(t, L.at("gen").get<std::string>(), kind_from(L.at("kind").get<std::string>()), grade_from(L.at("deg")), m,
                                  false);
            }
            if (t->size() != r.tower()->size()) {
                bad.push_back(where + "tower size differs");
                continue;
            }
            for (std::size_t k = 0; k < t->size(); ++k) {
                const Level& a = r.tower()->level(k);
                const Level& b = t->level(k);
                bool same = a.name == b.name && a.kind == b.kind && a.degree == b.degree && a.modulus.size() == b.modulus.size();
                for (std::size_t m = 0; same && m < a.modulus.size(); ++m) same = a.modulus[m].rebased(t) == b.modulus[m];
                if (!same) bad.push_back(where + "level " + a.name + " differs");
            }
            const Json& ex = roots[i].at("expansion");
            const auto& layers = r.expansion.layers();
            if (ex.size() != layers.size()) {
                bad.push_back(where + "layer count differs");
                continue;
            }
            for (std::size_t k = 0; k < layers.size(); ++k) {
                TowerElem v = parse_tower_elem(ex[k].at("term").get<std::string>(), t);
                if (grade_from(ex[k].at("deg")) != layers[k].degree || !(layers[k].value.rebased(t) == v))
                    bad.push_back(where + "layer " + std::to_string(k) + " differs");
            }
            const Json& p = roots[i].at("precision");
            if (p.is_null() != !r.precision() || (!p.is_null() && grade_from(p) != *r.precision()))
                bad.push_back(where + "precision differs");
        } catch (const Error& e) {
            bad.push_back(where + e.what());
        }
    }
    return bad;
}

} // namespace monoval
