#include "monoval/geometry.hpp"
#include <numeric>
#include <sstream>

namespace monoval {

std::optional<std::vector<Rational>> nonnegative_solution(const std::vector<std::vector<Rational>>& a,
                                                          const std::vector<Rational>& b) {
    std::size_t m = a.size(), k = m ? a[0].size() : 0;
    if (m == 0) return std::vector<Rational>(k);
    // phase one with one artificial per row, Bland's rule
    std::size_t cols = k + m;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rational sg(b[i].sign() < 0 ? -1 : 1);
        for (std::size_t j = 0; j < k; ++j) t[i][j] = a[i][j] * sg;
        t[i][k + i] = Rational(1);
        t[i][cols] = b[i] * sg;
        basis[i] = k + i;
    }
    std::vector<Rational> z(cols + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) z[j] -= t[i][j];
        z[cols] -= t[i][cols];
    }
    while (true) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (z[j].sign() < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter].sign() <= 0) continue;
            Rational r = t[i][cols] / t[i][enter];
            if (leave == m || r < best || (r == best && basis[i] < basis[leave])) {
                leave = i;
                best = r;
            }
        }
        if (leave == m) break;  // cannot happen in phase one
        Rational piv = t[leave][enter];
        for (auto& x : t[leave]) x = x / piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter].is_zero()) continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
        }
        Rational f = z[enter];
        for (std::size_t j = 0; j <= cols; ++j) z[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    if (!z[cols].is_zero()) return std::nullopt;
    std::vector<Rational> x(k);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < k) x[basis[i]] = t[i][cols];
    return x;
}

NewtonPolygon newton_polygon(const MonicPoly& p) {
    const Weights& w = *p.weights();
    NewtonPolygon np;
    np.points.push_back({0, w.zero()});
    for (int i = 1; i <= p.degree(); ++i) {
        const Series& s = p.a(i);
        if (s.is_zero()) {
            if (s.exact()) continue;
            throw PrecisionError("valuation of a_" + std::to_string(i) + " undetermined below " + w.format(*s.precision()));
        }
        np.points.push_back({i, *s.valuation()});
    }
    auto slope = [&](std::size_t a, std::size_t b) {
        return (np.points[b].value - np.points[a].value) / Rational(np.points[b].index - np.points[a].index);
    };
    for (std::size_t k = 0; k < np.points.size(); ++k) {
        auto& v = np.vertices;
        while (v.size() >= 2 && !w.less(slope(v[v.size() - 2], v.back()), slope(v.back(), k))) v.pop_back();
        v.push_back(k);
    }
    for (std::size_t k = 1; k < np.vertices.size(); ++k) {
        std::size_t a = np.vertices[k - 1], b = np.vertices[k];
        np.edges.push_back({slope(a, b), np.points[b].index - np.points[a].index});
    }
    return np;
}

std::string polygon_svg(const NewtonPolygon& np, const Weights& w) {
    double maxx = 1, maxy = 1;
    for (auto& p : np.points) {
        maxx = std::max(maxx, double(p.index));
        maxy = std::max(maxy, w.approx(p.value));
    }
    const double W = 480, H = 360, pad = 40;
    auto X = [&](double x) { return pad + x / maxx * (W - 2 * pad); };
    auto Y = [&](double y) { return H - pad - y / maxy * (H - 2 * pad); };
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    o << "<line x1=\"" << pad << "\" y1=\"" << Y(0) << "\" x2=\"" << W - pad << "\" y2=\"" << Y(0) << "\" stroke=\"#999\"/>\n";
    o << "<line x1=\"" << pad << "\" y1=\"" << Y(0) << "\" x2=\"" << pad << "\" y2=\"" << pad << "\" stroke=\"#999\"/>\n";
    o << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\" points=\"";
    for (auto v : np.vertices) o << X(np.points[v].index) << "," << Y(w.approx(np.points[v].value)) << " ";
    o << "\"/>\n";
    for (auto& p : np.points)
        o << "<circle cx=\"" << X(p.index) << "\" cy=\"" << Y(w.approx(p.value)) << "\" r=\"4\"/>\n";
    for (std::size_t k = 0; k < np.edges.size(); ++k) {
        auto& a = np.points[np.vertices[k]];
        auto& b = np.points[np.vertices[k + 1]];
        double mx = (X(a.index) + X(b.index)) / 2, my = (Y(w.approx(a.value)) + Y(w.approx(b.value))) / 2;
        o << "<text x=\"" << mx + 6 << "\" y=\"" << my - 6 << "\" font-size=\"12\">slope " << w.format(np.edges[k].slope)
          << ", length " << np.edges[k].length << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

EdgeTest single_edge_test(const MonicPoly& p, const GradeValue& target, const SolveOptions& opt) {
    NewtonPolygon np = newton_polygon(p);
    EdgeTest out;
    for (auto& e : np.edges) out.slopes.push_back(e.slope);
    if (np.edges.size() <= 1) {
        out.consistent = true;
        return out;
    }
    auto roots = newton_puiseux_roots(p, target, opt);
    for (auto& e : np.edges) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            auto v = roots[i].expansion.valuation();
            if (v && *v == e.slope) idx.push_back(i);
        }
        MonicPoly f = class_product(roots, idx, p.weights());
        if (f.degree() != e.length)
            throw DomainError("internal: roots of valuation " + p.weights()->format(e.slope) + " give a factor of degree " +
                              std::to_string(f.degree()) + ", edge length " + std::to_string(e.length));
        out.factors.push_back(std::move(f));
    }
    return out;
}

namespace {

std::string monomial_str(const Exponent& e) { return format_monomial(e, default_names(e.size())); }

// base coefficients of e, with the kinds of the levels crossed
void flatten(const TowerElem& e, std::vector<RatFunc>& out, bool& homogeneous_level) {
    if (e.level() < 0) {
        if (!e.is_zero()) out.push_back(e.base());
        return;
    }
    if (e.tower()->level(static_cast<std::size_t>(e.level())).kind == LevelKind::homogeneous) homogeneous_level = true;
    for (auto& c : e.coeffs()) flatten(c, out, homogeneous_level);
}

std::vector<RatFunc> coefficients_of(const PuiseuxRoot& r, bool& homogeneous_level) {
    std::vector<RatFunc> out;
    for (auto& l : r.expansion.layers()) flatten(l.value, out, homogeneous_level);
    return out;
}

// empty when every root is a fractional power series; q collects exponent denominators
std::string fractional_certificate(const std::vector<PuiseuxRoot>& roots, std::int64_t& q) {
    q = 1;
    for (auto& r : roots) {
        bool hom = false;
        auto cs = coefficients_of(r, hom);
        if (hom) return "a root uses a non-monomial homogeneous generator";
        for (auto& c : cs) {
            if (c.has_denominator()) return "denominator " + c.den().str(default_names(c.nvars())) + " in a root layer";
            for (auto& [e, v] : c.num().terms()) {
                if (!e.nonnegative()) return "negative exponent " + monomial_str(e);
                q = std::lcm(q, e.den());
            }
        }
    }
    return {};
}

bool clears(const SparsePoly& c, const std::vector<RatFunc>& cs) {
    RatFunc cr(c);
    for (auto& r : cs) {
        RatFunc x = r * cr;
        if (x.has_denominator() || !x.num().min_exponent().nonnegative()) return false;
    }
    return true;
}

SparsePoly normalized(const SparsePoly& p) { return p * p.lead_coefficient().inverse(); }

std::vector<Rational> primitive_direction(std::vector<Rational> v) {
    mpz_class l = 1, g = 0;
    for (auto& x : v) l = lcm(l, x.den());
    for (auto& x : v) {
        x = x * Rational(l);
        g = gcd(g, x.num());
    }
    if (g != 0)
        for (auto& x : v) x = x / Rational(g);
    return v;
}

} // namespace

QuasiOrdinary quasi_ordinary_test(const MonicPoly& p) {
    const Weights& w = *p.weights();
    QuasiOrdinary q;
    Series disc = discriminant(p);
    q.precision = disc.precision();
    if (disc.is_zero()) {
        q.obstruction = disc.exact() ? "discriminant is zero" : "discriminant vanishes below " + w.format(*disc.precision());
        return q;
    }
    TowerElem in = disc.initial_form();
    if (in.level() >= 0) {
        q.obstruction = "discriminant involves tower generators";
        return q;
    }
    const RatFunc& r = in.base();
    if (r.has_denominator() || r.num().size() != 1) {
        q.obstruction = "lowest layer is not a monomial: " + r.str(default_names(w.nvars()));
        return q;
    }
    Exponent beta = r.num().lead_exponent();
    for (auto& l : disc.layers()) {
        if (l.value.level() >= 0 || l.value.base().has_denominator()) {
            q.obstruction = "discriminant layer at " + w.format(l.degree) + " is not a polynomial";
            return q;
        }
        for (auto& [e, c] : l.value.base().num().terms())
            if (!(e - beta).nonnegative()) {
                q.obstruction = monomial_str(beta) + " does not divide the term " + monomial_str(e);
                return q;
            }
    }
    q.yes = true;
    q.monomial = beta;
    q.unit = disc.scaled(TowerElem(disc.tower(), RatFunc(SparsePoly::monomial(-beta))), -w.degree(beta));
    return q;
}

AjRoots aj_roots(const MonicPoly& p, const GradeValue& target, const SolveOptions& opt) {
    QuasiOrdinary qo = quasi_ordinary_test(p);
    if (!qo.yes) throw DomainError("not quasi-ordinary: " + qo.obstruction);
    AjRoots out;
    // characteristic exponents of a quasi-ordinary root are at most half the discriminant
    // monomial, so solving past nu(monomial) sees every denominator that contributes to q
    const Weights& w = *p.weights();
    out.roots = newton_puiseux_roots(p, w.max(target, w.degree(qo.monomial)), opt);
    std::string bad = fractional_certificate(out.roots, out.q);
    if (!bad.empty()) throw DomainError("internal: fractional power certificate failed: " + bad);
    return out;
}

WeightedDisc weighted_disc_check(const MonicPoly& p) {
    const WeightsPtr& wp = p.weights();
    const Weights& w = *wp;
    WeightedDisc out;
    Series disc = discriminant(p);
    out.precision = disc.precision();
    if (disc.is_zero()) {
        out.reason = "discriminant valuation undetermined";
        return out;
    }
    TowerElem in = disc.initial_form();
    if (in.level() >= 0 || in.base().has_denominator() || !in.base().num().min_exponent().nonnegative()) {
        out.reason = "lowest layer of the discriminant is not a polynomial";
        return out;
    }
    out.delta = in.base().num();
    auto names = default_names(w.nvars());
    auto unit_layers_ok = [&](const Series& u) {
        for (auto& l : u.layers()) {
            const TowerElem& v = l.value;
            if (v.level() >= 0 || v.base().has_denominator() || !v.base().num().min_exponent().nonnegative()) {
                out.reason = "cofactor layer " + v.str(names) + " is not a polynomial";
                return false;
            }
        }
        return true;
    };
    if (disc.exact()) {
        TowerElem s = disc.sum();
        auto q = s.level() < 0 && !s.base().has_denominator() ? SparsePoly::exact_div(s.base().num(), out.delta) : std::nullopt;
        if (!q) {
            out.reason = "discriminant is not divisible by its lowest layer " + out.delta.str(names);
            return out;
        }
        out.unit = Series::from_sparse(wp, disc.tower(), *q);
    } else {
        GradeValue v = *disc.valuation();
        out.unit = divide(disc, Series::from_sparse(wp, disc.tower(), out.delta), *disc.precision() - v);
    }
    if (!unit_layers_ok(out.unit)) return out;
    out.yes = true;
    return out;
}

DenominatorBound bounded_denominator_check(const std::vector<PuiseuxRoot>& roots, const Weights& w) {
    DenominatorBound out;
    std::size_t n = w.nvars();
    std::vector<RatFunc> cs;
    std::vector<SparsePoly> discs;
    for (auto& r : roots) {
        bool hom = false;
        auto c = coefficients_of(r, hom);
        cs.insert(cs.end(), c.begin(), c.end());
        const Tower& t = *r.tower();
        for (std::size_t lvl = r.input_levels; lvl < t.size(); ++lvl) {
            auto& m = t.level(lvl).modulus;
            bool base = true;
            for (auto& x : m) base = base && x.level() < 0;
            if (!base || m.size() < 3) continue;
            std::vector<RatFunc> mc;
            for (auto& x : m) mc.push_back(x.base());
            UniPoly<RatFunc> mp(mc);
            RatFunc d = resultant(mp, mp.derivative());
            if (d.has_denominator() || d.is_zero()) continue;
            SparsePoly dn = normalized(d.num());
            bool dup = false;
            for (auto& e : discs) dup = dup || e == dn;
            if (!dup) discs.push_back(dn);
        }
    }
    std::vector<std::pair<std::string, SparsePoly>> candidates{{"one", SparsePoly(n, Rational(1))}};
    SparsePoly all(n, Rational(1));
    for (auto& d : discs) {
        candidates.push_back({"vandermonde", d});
        all = all * d;
    }
    if (discs.size() > 1) candidates.push_back({"vandermonde", all});
    // from the observed denominators: monomial part and maximal polynomial denominators
    std::vector<Rational> lowest(n);
    std::vector<SparsePoly> dens;
    for (auto& c : cs) {
        Exponent m = c.num().min_exponent();
        for (std::size_t i = 0; i < n; ++i)
            if (m[i] < lowest[i]) lowest[i] = m[i];
        if (!c.has_denominator()) continue;
        bool covered = false;
        for (auto& d : dens)
            if (SparsePoly::exact_div(d, c.den())) covered = true;
        if (covered) continue;
        std::vector<SparsePoly> keep;
        for (auto& d : dens)
            if (!SparsePoly::exact_div(c.den(), d)) keep.push_back(d);
        keep.push_back(c.den());
        dens = keep;
    }
    for (auto& x : lowest) x = -x;
    SparsePoly observed = SparsePoly::monomial(Exponent::from_rationals(lowest));
    for (auto& d : dens) observed = observed * d;
    candidates.push_back({"denominators", observed});

    for (auto& [src, c] : candidates) {
        if (!is_homogeneous(RatFunc(c), w)) continue;
        if (clears(c, cs)) {
            out.found = true;
            out.c = c;
            out.source = src;
            out.report = "c = " + c.str(default_names(n)) + " clears " + std::to_string(cs.size()) + " layer coefficients";
            return out;
        }
    }
    out.report = "no homogeneous candidate clears the materialized layers";
    return out;
}

ConeSpec support_cone_check(const PuiseuxRoot& root, const Weights& w) {
    std::size_t n = w.nvars();
    if (w.value_rank() != n) throw DomainError("support cone needs rationally independent weights (N = n)");
    const auto& layers = root.expansion.layers();
    ConeSpec out;
    if (layers.empty()) {
        out.strictly_convex = out.positive = true;
        return out;
    }
    std::vector<std::vector<Rational>> initial, rest;
    for (std::size_t k = 0; k < layers.size(); ++k) {
        std::vector<RatFunc> cs;
        bool hom = false;
        flatten(layers[k].value, cs, hom);
        if (hom) throw Unsupported("root involves non-monomial homogeneous generators");
        for (auto& c : cs) {
            if (c.has_denominator()) throw Unsupported("root layer has a non-monomial denominator");
            for (auto& [e, v] : c.num().terms()) {
                std::vector<Rational> x;
                for (std::size_t i = 0; i < n; ++i) x.push_back(e[i]);
                (k == 0 ? initial : rest).push_back(x);
            }
        }
    }
    std::vector<std::vector<Rational>> gens;
    auto add = [&](std::vector<Rational> g) {
        bool zero = true;
        for (auto& x : g) zero = zero && x.is_zero();
        if (zero) return;
        g = primitive_direction(g);
        if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    };
    const auto& base = initial.front();
    for (auto& g : initial) {
        add(g);
        std::vector<Rational> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = g[i] - base[i];
        add(d);
    }
    for (auto& g : rest) {
        std::vector<Rational> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = g[i] - base[i];
        add(d);
    }
    // drop generators inside the cone of the others
    for (std::size_t k = gens.size(); k-- > 0;) {
        if (gens.size() == 1) break;
        std::vector<std::vector<Rational>> a(n);
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != k)
                for (std::size_t i = 0; i < n; ++i) a[i].push_back(gens[j][i]);
        if (nonnegative_solution(a, gens[k])) gens.erase(gens.begin() + static_cast<long>(k));
    }
    out.generators = gens;
    std::vector<std::vector<Rational>> a(n + 1);
    std::vector<Rational> b(n + 1);
    for (auto& g : gens) {
        for (std::size_t i = 0; i < n; ++i) a[i].push_back(g[i]);
        a[n].push_back(Rational(1));
    }
    b[n] = Rational(1);
    out.strictly_convex = !nonnegative_solution(a, b);
    out.positive = true;
    for (auto& g : gens)
        if (w.sign(w.degree(Exponent::from_rationals(g))) <= 0) {
            out.positive = false;
            std::string s;
            for (auto& x : g) s += (s.empty() ? "" : ",") + x.str();
            throw DomainError("internal: support cone generator (" + s + ") has nonpositive weight");
        }
    return out;
}

PolyhedronCheck polyhedron_cone_check(const MonicPoly& p, const GradeValue& target, const SolveOptions& opt) {
    const WeightsPtr& wp = p.weights();
    std::size_t n = wp->nvars();
    auto roots = newton_puiseux_roots(p, target, opt);
    std::int64_t q = 1;
    std::string bad = fractional_certificate(roots, q);
    if (!bad.empty()) throw DomainError("precondition fails: roots are not fractional power series (" + bad + ")");
    PolyhedronCheck out;
    for (auto& g : galois_groups(roots, *wp)) {
        MonicPoly f = class_product(roots, g, wp);
        out.factors.push_back(f);
        int d = f.degree();
        std::vector<Exponent> supp0;
        for (auto& l : f[0].layers())
            for (auto& [e, c] : l.value.base().num().terms()) supp0.push_back(e);
        // (beta, j) = (0, d) + sum lambda_k (b_k, -d) + orthant
        std::vector<std::vector<Rational>> a(n + 1);
        for (auto& e : supp0) {
            for (std::size_t i = 0; i < n; ++i) a[i].push_back(e[i]);
            a[n].push_back(Rational(-d));
        }
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t r = 0; r <= n; ++r) a[r].push_back(Rational(r == i ? 1 : 0));
        for (int j = 0; j <= d; ++j)
            for (auto& l : f[static_cast<std::size_t>(j)].layers())
                for (auto& [e, c] : l.value.base().num().terms()) {
                    std::vector<Rational> b;
                    for (std::size_t i = 0; i < n; ++i) b.push_back(e[i]);
                    b.push_back(Rational(j - d));
                    if (!nonnegative_solution(a, b)) {
                        out.holds = false;
                        out.counterexample = b;
                        out.counterexample.back() = Rational(j);
                        return out;
                    }
                }
    }
    return out;
}

} // namespace monoval
