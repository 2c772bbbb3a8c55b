#include "monoval/homog.hpp"
#include "monoval/factor.hpp"
#include "monoval/parser.hpp"
#include <algorithm>

namespace monoval {

namespace {

using BPoly = UniPoly<SparsePoly>;

SparsePoly lift(const SparsePoly& s) {
    SparsePoly r(s.nvars() + 1);
    for (auto& [e, c] : s.terms()) {
        auto v = e.numerators();
        v.push_back(0);
        r.add_term(Exponent(v, e.den()), c);
    }
    return r;
}

// clear polynomial denominators; the result has the same roots
BPoly to_bivariate(const RPoly& p, std::size_t n) {
    std::vector<SparsePoly> dens;
    for (auto& c : p.coeffs()) {
        if (!c.has_denominator()) continue;
        bool seen = false;
        for (auto& d : dens)
            if (d == c.den()) seen = true;
        if (!seen) dens.push_back(c.den());
    }
    SparsePoly D(n + 1, Rational(1));
    for (auto& d : dens) D = D * lift(d);
    std::vector<SparsePoly> out;
    for (auto& c : p.coeffs()) out.push_back(lift(c.num()) * exact_quotient(D, lift(c.den())));
    return BPoly(out);
}

SparsePoly zvar(std::size_t n) { return SparsePoly::variable(n + 1, n); }

// polynomial in (x, Z) with Z = variable n, to a monic polynomial in Z over Q(x)
RPoly from_bivariate(const SparsePoly& r, std::size_t n) {
    std::map<long, SparsePoly> by;
    for (auto& [e, c] : r.terms()) {
        if (!e[n].is_integer() || e[n].sign() < 0) throw DomainError("resultant has a non-polynomial Z power");
        long k = e[n].to_long();
        std::vector<std::int64_t> v(e.numerators().begin(), e.numerators().end() - 1);
        auto [it, _] = by.try_emplace(k, SparsePoly(n));
        it->second.add_term(Exponent(v, e.den()), c);
    }
    if (by.empty()) throw DomainError("resultant vanished identically");
    long deg = by.rbegin()->first;
    std::vector<RatFunc> c(deg + 1, RatFunc(n));
    for (auto& [k, v] : by) c[k] = RatFunc(v);
    return monic(RPoly(c));
}

// r in (x, Z) specialized at x = pt; nullopt when an exponent is fractional or the
// leading Z coefficient vanishes there
std::optional<QPoly> specialize(const SparsePoly& r, std::size_t n, const std::vector<Rational>& pt) {
    std::map<long, Rational> by;
    long top = -1;
    for (auto& [e, c] : r.terms()) {
        if (e.den() != 1) return std::nullopt;
        Rational v = c;
        for (std::size_t i = 0; i < n; ++i) {
            long k = e.numerators()[i];
            Rational b = k < 0 ? Rational(1) / pt[i] : pt[i];
            for (long j = 0; j < std::abs(k); ++j) v *= b;
        }
        long z = e.numerators()[n];
        by[z] += v;
        top = std::max(top, z);
    }
    if (top < 0 || by[top].sign() == 0) return std::nullopt;
    std::vector<Rational> c(top + 1);
    for (auto& [k, v] : by) c[k] = v;
    return QPoly(c);
}

// a squarefree specialization with the degree kept proves r squarefree over Q(x)
bool squarefree_by_specialization(const SparsePoly& r, std::size_t n, std::uint64_t seed) {
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<Rational> pt;
        for (std::size_t i = 0; i < n; ++i) pt.push_back(Rational(static_cast<long>(2 + (seed + 7 * attempt + 3 * i) % 11), static_cast<long>(1 + i + attempt)));
        auto q = specialize(r, n, pt);
        if (q && gcd(*q, q->derivative()).degree() == 0) return true;
    }
    return false;
}

// squarefree part, keeping the Yun factors
RPoly sqfree(const RPoly& p) { return squarefree_part(p); }

HomogeneousElement finish(const std::string& name, const RPoly& p, const GradeValue& d, const Weights& w, int expected) {
    HomogeneousElement h = validate(name, p, d, w);
    h.minimality_certified = expected > 0 && p.degree() == expected;
    return h;
}

} // namespace

std::string format_rpoly(const RPoly& p, std::size_t nvars) {
    auto names = default_names(nvars);
    return p.str([&](const RatFunc& r) { return r.str(names); });
}

RPoly parse_rpoly(const std::string& text, std::size_t nvars) {
    auto t = Tower::base(nvars);
    auto up = parse_tower_poly(text, t);
    std::vector<RatFunc> c;
    for (auto& e : up.coeffs()) c.push_back(e.base());
    return RPoly(c);
}

std::string HomogeneousElement::display(std::size_t branch) const {
    std::size_t n = minpoly.lead().nvars();
    return name + " := root(" + format_rpoly(minpoly, n) + ", branch " + std::to_string(branch) + ")";
}

bool is_homogeneous(const RatFunc& r, const Weights& w, GradeValue* deg) {
    if (r.is_zero()) return true;
    auto one_degree = [&](const SparsePoly& s, GradeValue& out) {
        bool first = true;
        for (auto& [e, c] : s.terms()) {
            GradeValue d = w.degree(e);
            if (first) out = d;
            else if (d != out) return false;
            first = false;
        }
        return true;
    };
    GradeValue a, b;
    if (!one_degree(r.num(), a) || !one_degree(r.den(), b)) return false;
    if (deg) *deg = a - b;
    return true;
}

HomogeneousElement validate(const std::string& name, const RPoly& p, const GradeValue& d, const Weights& w) {
    if (p.degree() < 1 || !p.lead().is_one()) throw DomainError("minimal polynomial of " + name + " must be monic of positive degree");
    int q = p.degree();
    bool integral = true;
    for (int k = 1; k <= q; ++k) {
        const RatFunc& g = p[q - k];
        if (g.is_zero()) continue;
        GradeValue dg;
        if (!is_homogeneous(g, w, &dg)) {
            // name two monomials of different degree
            std::string detail;
            const auto& terms = g.num().terms();
            GradeValue first = w.degree(terms.begin()->first);
            for (auto& [e, c] : terms)
                if (w.degree(e) != first) {
                    auto names = default_names(w.nvars());
                    detail = ": " + format_monomial(terms.begin()->first, names) + " has degree " + w.format(first) + ", " +
                             format_monomial(e, names) + " has degree " + w.format(w.degree(e));
                    break;
                }
            throw DomainError("coefficient g_" + std::to_string(k) + " of " + name + " is not homogeneous" + detail);
        }
        GradeValue want = d * Rational(k);
        if (dg != want)
            throw DomainError("coefficient g_" + std::to_string(k) + " of " + name + " has degree " + w.format(dg) + ", expected " +
                              w.format(want));
        if (g.has_denominator() || !g.num().is_polynomial()) integral = false;
    }
    return HomogeneousElement{name, d, p, integral, false};
}

MonomialForm monomial_normal_form(const HomogeneousElement& g, const Weights& w) {
    std::size_t n = w.nvars();
    if (w.value_rank() != n) throw DomainError("normal form requires N=n");
    // solve sum_i beta_i alpha_i = d
    std::vector<std::vector<Rational>> sys(w.basis_size(), std::vector<Rational>(n + 1));
    for (std::size_t j = 0; j < w.basis_size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) sys[j][i] = w.weight(i).c[j];
        sys[j][n] = -g.degree.c[j];
    }
    auto ns = nullspace(sys, n + 1);
    std::vector<Rational> beta;
    for (auto& v : ns)
        if (!v[n].is_zero()) {
            for (std::size_t i = 0; i < n; ++i) beta.push_back(v[i] / v[n]);
            break;
        }
    if (beta.size() != n) throw DomainError("degree of " + g.name + " is not in the value group");
    Exponent b = Exponent::from_rationals(beta);
    int q = g.minpoly.degree();
    std::vector<Rational> t(q + 1);
    t[q] = Rational(1);
    for (int k = 1; k <= q; ++k) {
        const RatFunc& gk = g.minpoly[q - k];
        if (gk.is_zero()) continue;
        if (gk.has_denominator() || gk.num().size() != 1) throw DomainError("coefficient of " + g.name + " is not a monomial");
        auto& [e, c] = *gk.num().terms().begin();
        if (!(e == b.scaled(static_cast<std::int64_t>(k)))) throw DomainError("coefficient of " + g.name + " has the wrong exponent");
        t[q - k] = c;
    }
    auto factors = factor_rational_univariate(QPoly(t));
    const QPoly& f = factors.front();
    MonomialForm out;
    out.beta = b;
    out.integral = b.nonnegative();
    TowerPtr base = Tower::base(n);
    if (f.degree() == 1) {
        out.tower = base;
        out.c = TowerElem(base, -f[0]);
        return out;
    }
    std::vector<TowerElem> m;
    for (auto& x : f.coeffs()) m.emplace_back(base, x);
    out.tower = Tower::adjoin(base, "c1", LevelKind::number_field, w.zero(), UniPoly<TowerElem>(m));
    out.c = TowerElem::generator(out.tower, 0);
    return out;
}

HomogeneousElement combine_power(const HomogeneousElement& g, int k, const Weights& w) {
    if (k < 1) throw DomainError("combine_power needs k >= 1");
    if (k == 1) return g;
    std::size_t n = w.nvars();
    BPoly P = to_bivariate(g.minpoly, n);
    // Z - X^k as a polynomial in X
    std::vector<SparsePoly> q(k + 1, SparsePoly(n + 1));
    q[0] = zvar(n);
    q[k] = SparsePoly(n + 1, Rational(-1));
    SparsePoly r = resultant(P, BPoly(q));
    RPoly res = sqfree(from_bivariate(r, n));
    return finish(g.name + "^" + std::to_string(k), res, g.degree * Rational(k), w,
                  g.minimality_certified ? g.minpoly.degree() : 0);
}

HomogeneousElement combine_sum(const HomogeneousElement& a0, int ea, const HomogeneousElement& b0, int eb, const Weights& w) {
    GradeValue da = a0.degree * Rational(ea), db = b0.degree * Rational(eb);
    if (da != db) throw DomainError("combine_sum needs equal degrees, got " + w.format(da) + " and " + w.format(db));
    HomogeneousElement a = combine_power(a0, ea, w), b = combine_power(b0, eb, w);
    std::size_t n = w.nvars();
    BPoly P1 = to_bivariate(a.minpoly, n), P2 = to_bivariate(b.minpoly, n);
    // P1(Z - X) by Horner in X
    BPoly lin(std::vector<SparsePoly>{zvar(n), SparsePoly(n + 1, Rational(-1))});
    BPoly shifted;
    for (int i = P1.degree(); i >= 0; --i) shifted = shifted * lin + BPoly::constant(P1[i]);
    SparsePoly r = resultant(shifted, P2);
    RPoly res = sqfree(from_bivariate(r, n));
    return finish("(" + a.name + "+" + b.name + ")", res, da, w, 0);
}

HomogeneousElement combine_product(const HomogeneousElement& a, const HomogeneousElement& b, const Weights& w) {
    std::size_t n = w.nvars();
    BPoly P1 = to_bivariate(a.minpoly, n), P2 = to_bivariate(b.minpoly, n);
    // R(X, Z) = X^q P1(Z/X) = sum_j c_j Z^j X^(q-j)
    int q = P1.degree();
    std::vector<SparsePoly> rc(q + 1, SparsePoly(n + 1));
    SparsePoly z = zvar(n);
    for (int j = 0; j <= q; ++j) rc[q - j] = P1[j] * z.pow(static_cast<unsigned>(j));
    SparsePoly r = resultant(BPoly(rc), P2);
    RPoly res = sqfree(from_bivariate(r, n));
    return finish("(" + a.name + "*" + b.name + ")", res, a.degree + b.degree, w, 0);
}

Integralized integralize(const HomogeneousElement& g, const Weights& w) {
    std::size_t n = w.nvars();
    int q = g.minpoly.degree();
    std::vector<SparsePoly> dens;
    std::vector<Rational> shift(n);
    for (int k = 1; k <= q; ++k) {
        const RatFunc& gk = g.minpoly[q - k];
        if (gk.is_zero()) continue;
        if (gk.has_denominator()) {
            bool seen = false;
            for (auto& d : dens) seen = seen || d == gk.den();
            if (!seen) dens.push_back(gk.den());
        }
        Exponent m = gk.num().min_exponent();
        for (std::size_t i = 0; i < n; ++i)
            if (m[i].sign() < 0) {
                Rational need = Rational((-m[i] / Rational(k)).ceil());
                shift[i] = max(shift[i], need);
            }
    }
    SparsePoly h = SparsePoly::monomial(Exponent::from_rationals(shift));
    for (auto& d : dens) h = h * d;
    RatFunc H(h);
    if (H.is_one()) return {g, H};
    std::vector<RatFunc> c(q + 1, RatFunc(n));
    RatFunc hp(n, Rational(1));
    for (int k = 0; k <= q; ++k) {
        c[q - k] = g.minpoly[q - k] * hp;
        hp = hp * H;
    }
    GradeValue dh;
    is_homogeneous(H, w, &dh);
    HomogeneousElement out = validate(g.name + "'", RPoly(c), g.degree + dh, w);
    out.minimality_certified = g.minimality_certified;
    if (!out.integral) throw DomainError("integralization of " + g.name + " failed");
    return {out, H};
}

HomTower tower_compress(const std::vector<HomogeneousElement>& elems, const Weights& w, std::uint64_t seed, int max_retries,
                        int max_degree) {
    HomTower out;
    std::vector<HomogeneousElement> zero_deg, pos;
    for (auto& e : elems) {
        if (e.minpoly.degree() == 1) {
            out.log.push_back("dropped " + e.name + " (degree-1 annihilator)");
            continue;
        }
        (w.sign(e.degree) == 0 ? zero_deg : pos).push_back(e);
    }
    std::size_t N = w.value_rank();
    while (pos.size() > N) {
        // a Q-relation among the first N+1 degrees
        std::vector<std::vector<Rational>> m(w.basis_size(), std::vector<Rational>(N + 1));
        for (std::size_t j = 0; j < w.basis_size(); ++j)
            for (std::size_t i = 0; i <= N; ++i) m[j][i] = pos[i].degree.c[j];
        auto ns = nullspace(m, N + 1);
        if (ns.empty()) throw DomainError("no relation among homogeneous degrees");
        std::vector<Rational> lam = ns.front();
        mpz_class den = 1;
        for (auto& x : lam) den = lcm(den, x.den());
        for (auto& x : lam) x *= Rational(den);
        mpz_class L = 1;
        for (auto& x : lam)
            if (!x.is_zero()) L = lcm(L, x.abs().num());
        std::vector<std::size_t> A, B;
        for (std::size_t i = 0; i <= N; ++i) {
            if (lam[i].sign() > 0) A.push_back(i);
            if (lam[i].sign() < 0) B.push_back(i);
        }
        if (A.empty() || B.empty()) throw DomainError("degree relation without both signs");
        // replace gamma_i by a root of order L/|lambda_i|
        std::vector<HomogeneousElement> root(N + 1);
        auto extract = [&](std::size_t i) {
            long k = Rational(mpz_class(L / lam[i].abs().num())).to_long();
            const auto& g = pos[i];
            if (k == 1) return g;
            int q = g.minpoly.degree();
            std::vector<RatFunc> c(q * k + 1, RatFunc(w.nvars()));
            for (int j = 0; j <= q; ++j) c[j * k] = g.minpoly[j];
            HomogeneousElement r = validate(g.name + "^(1/" + std::to_string(k) + ")", RPoly(c), g.degree / Rational(k), w);
            return r;
        };
        for (std::size_t i : A) root[i] = extract(i);
        for (std::size_t i : B) root[i] = extract(i);
        HomogeneousElement pa = root[A[0]], pb = root[B[0]];
        for (std::size_t k = 1; k < A.size(); ++k) pa = combine_product(pa, root[A[k]], w);
        for (std::size_t k = 1; k < B.size(); ++k) pb = combine_product(pb, root[B[k]], w);
        int merged = pa.minpoly.degree() * pb.minpoly.degree();
        if (merged > max_degree)
            throw Unsupported("merging " + pa.name + " and " + pb.name + " needs degree " + std::to_string(merged) + " > " +
                              std::to_string(max_degree));
        bool done = false;
        for (int attempt = 0; attempt < max_retries && !done; ++attempt) {
            long c = 1 + static_cast<long>((seed + attempt) % 97);
            // c * pb has annihilator c^q P(Z/c)
            int q = pb.minpoly.degree();
            std::vector<RatFunc> sc(q + 1);
            Rational cp(1);
            for (int j = q; j >= 0; --j) {
                sc[j] = pb.minpoly[j].scaled(cp);
                cp *= Rational(c);
            }
            HomogeneousElement cpb{pb.name, pb.degree, RPoly(sc), pb.integral, false};
            std::size_t n = w.nvars();
            BPoly P1 = to_bivariate(pa.minpoly, n), P2 = to_bivariate(cpb.minpoly, n);
            BPoly lin(std::vector<SparsePoly>{zvar(n), SparsePoly(n + 1, Rational(-1))});
            BPoly shifted;
            for (int i = P1.degree(); i >= 0; --i) shifted = shifted * lin + BPoly::constant(P1[i]);
            SparsePoly rb = resultant(shifted, P2);
            RPoly res = from_bivariate(rb, n);
            // primitive iff all sums of conjugates are distinct, i.e. res is squarefree
            if (!squarefree_by_specialization(rb, n, seed + attempt) && gcd(res, res.derivative()).degree() > 0) {
                out.log.push_back("c=" + std::to_string(c) + " rejected (repeated conjugate sums)");
                continue;
            }
            HomogeneousElement gamma = validate("g" + std::to_string(out.log.size() + 1), res, pa.degree, w);
            gamma.name = "(" + pa.name + "+" + std::to_string(c) + "*" + pb.name + ")";
            out.log.push_back("merged " + pa.name + " and " + pb.name + " with c=" + std::to_string(c) + ", degree " +
                              std::to_string(res.degree()));
            std::vector<HomogeneousElement> next;
            for (std::size_t i = 0; i <= N; ++i) {
                if (i == A.back() || i == B.back()) continue;
                next.push_back(lam[i].is_zero() ? pos[i] : root[i]);
            }
            next.push_back(gamma);
            for (std::size_t i = N + 1; i < pos.size(); ++i) next.push_back(pos[i]);
            pos = std::move(next);
            done = true;
        }
        if (!done) throw DomainError("primitive element search exhausted its retries");
    }
    for (auto& e : zero_deg) out.elements.push_back(e);
    for (auto& e : pos) out.elements.push_back(e);
    for (auto& e : out.elements) out.degrees.push_back(e.minpoly.degree());
    return out;
}

} // namespace monoval
