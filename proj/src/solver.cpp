#include "monoval/solver.hpp"
#include "monoval/factor.hpp"
#include <algorithm>
#include <functional>

namespace monoval {

namespace {

using TPoly = UniPoly<TowerElem>;

TowerElem one_in(const TowerPtr& t) { return TowerElem(t, Rational(1)); }

TPoly rebase(const TPoly& p, const TowerPtr& t) {
    std::vector<TowerElem> c;
    for (auto& x : p.coeffs()) c.push_back(x.rebased(t));
    return TPoly(std::move(c));
}

std::vector<Series> rebase(const std::vector<Series>& s, const TowerPtr& t) {
    std::vector<Series> r;
    for (auto& x : s) r.push_back(x.with_tower(t));
    return r;
}

TowerPtr common_tower(const std::vector<Series>& c) {
    TowerPtr t = c.back().tower();
    for (auto& x : c)
        if (x.tower()->size() > t->size()) t = x.tower();
    return t;
}

Series::Precision coeff_precision(const Weights& w, const std::vector<Series>& c) {
    Series::Precision p;
    for (auto& x : c) p = min_precision(w, p, x.precision());
    return p;
}

std::string fmt(const Weights& w, const Series::Precision& p) { return p ? w.format(*p) : std::string("exact"); }

// ---- graded Hensel lifting ---------------------------------------------------

struct Lifted {
    std::vector<Series> G, H;
};

// Q = G*H modulo bound with residues g and h; layers follow the semigroup of Q's degrees
Lifted lift(const std::vector<Series>& Q, const TPoly& g0, const TPoly& h0, const GradeValue& bound, const WeightsPtr& wp,
            std::size_t budget) {
    const Weights& w = *wp;
    TowerPtr t = common_tower(Q);
    TPoly g = rebase(g0, t), h = rebase(h0, t);
    TowerElem one = one_in(t), zero(t, Rational(0));
    std::size_t d = Q.size() - 1;

    std::map<GradeValue, std::vector<TowerElem>> qd;
    std::vector<GradeValue> gens;
    for (std::size_t j = 0; j <= d; ++j)
        for (auto& l : Q[j].layers()) {
            auto [it, fresh] = qd.try_emplace(l.degree, std::vector<TowerElem>(d + 1, zero));
            it->second[j] = l.value.rebased(t);
            if (w.sign(l.degree) < 0) throw DomainError("coefficient has negative valuation; not over the valuation ring");
            if (w.sign(l.degree) > 0 && std::find(gens.begin(), gens.end(), l.degree) == gens.end()) gens.push_back(l.degree);
        }
    auto as_poly = [&](const GradeValue& D) {
        auto it = qd.find(D);
        return it == qd.end() ? TPoly() : TPoly(it->second);
    };
    TPoly residue = as_poly(w.zero());
    if (!(g * h == residue)) throw DomainError("residue factors do not multiply to the residue polynomial");
    auto eg = ext_gcd(g, h, one);
    if (eg.g.degree() > 0) {
        auto names = element_names(*t);
        throw DomainError("residue factors are not coprime; common factor " +
                          eg.g.str([&](const TowerElem& e) { return e.str(names); }));
    }
    std::vector<std::pair<GradeValue, TPoly>> gl{{w.zero(), g}};
    std::map<GradeValue, TPoly> hl{{w.zero(), h}};
    if (w.sign(bound) > 0 && !gens.empty()) {
        for (auto& D : semigroup_elements(gens, bound, w, budget)) {
            if (D.is_zero()) continue;
            TPoly E = as_poly(D);
            for (auto& [d1, G1] : gl) {
                if (d1.is_zero()) continue;
                auto it = hl.find(D - d1);
                if (it == hl.end() || it->first.is_zero()) continue;
                E = E - G1 * it->second;
            }
            if (E.is_zero()) continue;
            TPoly dg = (E * eg.t) % g;
            TPoly dh = exact_poly_div(E - h * dg, g);
            if (!dg.is_zero()) gl.emplace_back(D, dg);
            if (!dh.is_zero()) hl.emplace(D, dh);
        }
    }
    Series::Precision prec = bound;
    auto to_series = [&](auto layers, int deg) {
        std::vector<Series> out;
        for (int j = 0; j < deg; ++j) {
            std::vector<Layer> ls;
            for (auto& [D, p] : layers)
                if (j <= p.degree() && !p[j].is_zero()) ls.push_back({D, p[j]});
            out.push_back(Series::from_layers(wp, t, std::move(ls), prec));
        }
        out.push_back(Series::constant(wp, one));
        return out;
    };
    return {to_series(gl, g.degree()), to_series(hl, h.degree())};
}

// ---- perfect powers ---------------------------------------------------------------

std::optional<Rational> rational_root(const Rational& c, int k) {
    if (c.sign() < 0 && k % 2 == 0) return std::nullopt;
    mpz_class n = abs(c.num()), d = c.den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k))) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(k))) return std::nullopt;
    Rational r{mpq_class(rn, rd)};
    return c.sign() < 0 ? -r : r;
}

std::optional<SparsePoly> exact_root(const SparsePoly& p, int k) {
    if (k == 1) return p;
    if (p.is_zero()) return p;
    auto lc = rational_root(p.lead_coefficient(), k);
    if (!lc) return std::nullopt;
    Exponent top = p.lead_exponent().scaled(Rational(1, k));
    SparsePoly lead = SparsePoly::monomial(top, *lc);
    SparsePoly denom = lead.pow(static_cast<unsigned>(k - 1)) * SparsePoly(p.nvars(), Rational(k));
    Exponent floor = p.min_exponent().scaled(Rational(1, k));
    SparsePoly r = lead;
    for (std::size_t it = 0; it < 4 * p.size() + 8; ++it) {
        SparsePoly rem = p - r.pow(static_cast<unsigned>(k));
        if (rem.is_zero()) return r;
        SparsePoly lt = SparsePoly::monomial(rem.lead_exponent(), rem.lead_coefficient());
        auto q = SparsePoly::exact_div(lt, denom);
        if (!q) return std::nullopt;
        const Exponent& e = q->lead_exponent();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] < floor[i]) return std::nullopt;
        r = r + *q;
    }
    return std::nullopt;
}

std::optional<RatFunc> exact_root(const RatFunc& r, int k) {
    auto n = exact_root(r.num(), k);
    if (!n) return std::nullopt;
    auto d = exact_root(r.den(), k);
    if (!d) return std::nullopt;
    return RatFunc(*n, *d);
}

// ---- Newton-Puiseux -----------------------------------------------------------------

struct Gamma {
    std::string name;
    GradeValue degree;
    int order = 1;
    std::optional<RPoly> minpoly;  // over Q(x) when known
};

struct Branch {
    Series root;
    std::vector<Gamma> gammas;
};

struct Ctx {
    WeightsPtr w;
    const SolveOptions& opt;
    int gammas = 0, residues = 0;
};

std::vector<Branch> solve_node(const MonicPoly& P, const GradeValue& W, Ctx& ctx);

bool same_level(const ZeroDivisorSplit& z, const TowerPtr& t, std::size_t lvl) {
    return z.level == lvl && lvl < t->size() && z.tower->size() > lvl && z.tower->level_ptr(lvl) == t->level_ptr(lvl);
}

// roots of Q whose residue is a root of f (with multiplicity k in the residue polynomial)
std::vector<Branch> process_factor(const std::vector<Series>& Q, const TPoly& S, const TPoly& f, int k, const GradeValue& WY,
                                   Ctx& ctx) {
    const Weights& w = *ctx.w;
    TowerPtr T1 = common_tower(Q);
    TowerPtr T2 = T1;
    TowerElem r;
    if (f.degree() == 1) {
        r = -f[0].rebased(T1);
    } else {
        bool rational = true;
        for (auto& c : f.coeffs()) rational = rational && c.rational_value().has_value();
        T2 = Tower::adjoin(T1, "r" + std::to_string(++ctx.residues), rational ? LevelKind::number_field : LevelKind::residue,
                           w.zero(), rebase(f, T1));
        r = TowerElem::generator(T2, T2->size() - 1);
    }
    try {
        std::vector<Series> Q2 = rebase(Q, T2);
        TPoly S2 = rebase(S, T2);
        TowerElem one = one_in(T2);
        TPoly lin(std::vector<TowerElem>{-r, one});
        TPoly g = lin.pow(static_cast<unsigned>(k), one);
        TPoly h = exact_poly_div(S2, g);
        GradeValue L = WY;
        if (auto p = coeff_precision(w, Q2)) L = w.min(L, *p);
        Lifted lf = lift(Q2, g, h, L, ctx.w, ctx.opt.layer_budget);
        if (k == 1) return {Branch{-lf.G[0], {}}};
        return solve_node(MonicPoly(ctx.w, lf.G), WY, ctx);
    } catch (const ZeroDivisorSplit& z) {
        if (T2 == T1 || !same_level(z, T2, T2->size() - 1)) throw;
        // f was reducible: treat both factors separately
        std::vector<Branch> out;
        for (const TPoly* part : {&z.factor, &z.cofactor}) {
            auto more = process_factor(Q, S, rebase(*part, T1), k, WY, ctx);
            out.insert(out.end(), more.begin(), more.end());
        }
        return out;
    }
}

std::vector<std::pair<TPoly, int>> split_residue(const TPoly& S) {
    std::vector<std::pair<TPoly, int>> parts;
    bool rational = true;
    for (auto& c : S.coeffs()) rational = rational && c.rational_value().has_value();
    TowerPtr t = S.lead().tower();
    if (rational) {
        std::vector<Rational> q;
        for (auto& c : S.coeffs()) q.push_back(*c.rational_value());
        for (auto& [f, k] : squarefree_decomposition(QPoly(q)).factors)
            for (auto& g : factor_rational_univariate(f)) {
                std::vector<TowerElem> c;
                for (auto& x : g.coeffs()) c.emplace_back(t, x);
                parts.emplace_back(TPoly(c), k);
            }
        return parts;
    }
    for (auto& [f, k] : squarefree_decomposition(S).factors) parts.emplace_back(f, k);
    return parts;
}

std::vector<Branch> solve_node(const MonicPoly& P, const GradeValue& W, Ctx& ctx) {
    const Weights& w = *ctx.w;
    int d = P.degree();
    if (d == 1) return {Branch{-P[0], {}}};
    Series s = P.a(1).scaled(Rational(1, d));
    MonicPoly Pt = s.is_zero() ? P : P.shifted(-s);

    // least slope of the Newton polygon after the shift
    std::optional<GradeValue> best;
    int i0 = 0;
    for (int i = 2; i <= d; ++i) {
        const Series& ai = Pt.a(i);
        if (ai.is_zero()) continue;
        GradeValue r = *ai.valuation() / Rational(i);
        if (!best || w.less(r, *best)) {
            best = r;
            i0 = i;
        }
    }
    if (!best) {
        if (Pt.exact()) throw DomainError("squarefree precondition violated");
        throw PrecisionError("all shifted coefficients vanish at the working precision");
    }
    for (int i = 2; i <= d; ++i) {
        const Series& ai = Pt.a(i);
        if (ai.is_zero() && !ai.exact() && w.leq(*ai.precision() / Rational(i), *best))
            throw PrecisionError("coefficient valuation undetermined at the working precision");
    }
    GradeValue lam = *best;

    TowerPtr T = Pt.tower();
    TowerElem cin = Pt.a(i0).initial_form();
    Rational kappa(1);
    if (cin.level() < 0) kappa = cin.base().num().lead_coefficient();
    TowerElem c = cin.scaled(kappa.inverse());

    Gamma info;
    info.degree = lam;
    info.order = i0;
    TowerPtr T1 = T;
    TowerElem gam, gam_inv;
    std::size_t gamma_level = 0;
    bool symbolic = false;
    if (c.level() < 0 && !c.base().has_denominator() && c.base().num().size() == 1) {
        Exponent e = c.base().num().lead_exponent().scaled(Rational(1, i0));
        gam = TowerElem(T, RatFunc(SparsePoly::monomial(e)));
        gam_inv = TowerElem(T, RatFunc(SparsePoly::monomial(-e)));
        info.name = format_monomial(e, default_names(w.nvars()));
        std::int64_t q = e.den();
        if (q > 1) {
            std::vector<RatFunc> mp(q + 1, RatFunc(w.nvars()));
            mp[0] = RatFunc(SparsePoly::monomial(e.scaled(q), Rational(-1)));
            mp[q] = RatFunc(w.nvars(), Rational(1));
            info.minpoly = RPoly(mp);
            info.order = static_cast<int>(q);
        }
    } else if (auto root = c.level() < 0 ? exact_root(c.base(), i0) : std::nullopt) {
        gam = TowerElem(T, *root);
        gam_inv = gam.inverse();
        info.name = gam.str(default_names(w.nvars()));
    } else {
        std::vector<TowerElem> mod(i0 + 1, TowerElem(T, Rational(0)));
        mod[0] = -c;
        mod[i0] = one_in(T);
        info.name = "g" + std::to_string(++ctx.gammas);
        T1 = Tower::adjoin(T, info.name, LevelKind::homogeneous, lam, TPoly(mod));
        gamma_level = T1->size() - 1;
        symbolic = true;
        if (c.level() < 0) {
            std::vector<RatFunc> mp(i0 + 1, RatFunc(w.nvars()));
            mp[0] = -c.base();
            mp[i0] = RatFunc(w.nvars(), Rational(1));
            info.minpoly = RPoly(mp);
        }
    }

    for (int attempt = 0;; ++attempt) {
        try {
            TowerElem g = gam, gi = gam_inv;
            if (symbolic) {
                g = TowerElem::generator(T1, gamma_level);
                gi = g.pow(i0 - 1) * c.rebased(T1).inverse();
            }
            MonicPoly P1 = Pt.with_tower(T1);
            // Q(Y) = P1(g Y) / g^d
            std::vector<Series> Q(d + 1);
            Q[d] = P1[d];
            TowerElem gp = one_in(T1);
            for (int i = 1; i <= d; ++i) {
                gp = gp * gi.rebased(T1);
                Q[d - i] = P1.a(i).scaled(gp, lam * Rational(-i));
            }
            std::vector<TowerElem> res(d + 1, TowerElem(T1, Rational(0)));
            for (int j = 0; j <= d; ++j) {
                if (!Q[j].exact() && w.sign(*Q[j].precision()) <= 0) throw PrecisionError("residue polynomial undetermined");
                res[j] = Q[j].layer(w.zero()).rebased(T1);
            }
            TPoly S(res);
            GradeValue WY = W - lam;
            std::vector<Branch> out;
            for (auto& [f, k] : split_residue(S)) {
                for (auto& b : process_factor(Q, S, f, k, WY, ctx)) {
                    TowerPtr tb = b.root.tower();
                    Branch nb;
                    nb.root = b.root.scaled(g.rebased(tb), lam) - s.with_tower(tb);
                    nb.gammas.push_back(info);
                    nb.gammas.insert(nb.gammas.end(), b.gammas.begin(), b.gammas.end());
                    out.push_back(std::move(nb));
                }
            }
            return out;
        } catch (const ZeroDivisorSplit& z) {
            // the gamma modulus factors: pin gamma to a root of the first factor
            if (!symbolic || attempt > 8 || !same_level(z, T1, gamma_level)) throw;
            TowerPtr base = Tower::prefix(T1, gamma_level);
            T1 = Tower::adjoin(base, info.name, LevelKind::homogeneous, lam, rebase(z.factor, base), false);
        }
    }
}

std::size_t count_conjugates(const Tower& t, std::size_t from) {
    std::size_t n = 1;
    for (std::size_t i = from; i < t.size(); ++i)
        if (t.level(i).kind != LevelKind::homogeneous) n *= t.level(i).modulus.size() - 1;
    return n;
}

std::vector<HomogeneousElement> report_gammas(const std::vector<Gamma>& gs, const Weights& w, std::uint64_t seed,
                                              std::vector<std::string>& notes) {
    std::vector<HomogeneousElement> elems;
    for (auto& g : gs) {
        if (!g.minpoly) {
            if (g.order > 1) notes.push_back(g.name + " is defined over earlier generators; kept in the construction tower");
            continue;
        }
        bool dup = false;
        for (auto& e : elems) dup = dup || e.minpoly == *g.minpoly;
        if (dup) continue;
        try {
            elems.push_back(validate(g.name, *g.minpoly, g.degree, w));
        } catch (const DomainError& e) {
            notes.push_back(std::string("could not validate ") + g.name + ": " + e.what());
        }
    }
    if (elems.size() > w.value_rank()) {
        try {
            auto t = tower_compress(elems, w, seed);
            elems = t.elements;
            for (auto& l : t.log) notes.push_back("compress: " + l);
        } catch (const DomainError& e) {
            notes.push_back(std::string("compression skipped: ") + e.what());
        }
    }
    for (auto& e : elems) {
        if (e.integral) continue;
        try {
            auto r = integralize(e, w);
            notes.push_back("integralized " + e.name + " with multiplier " + r.multiplier.str(default_names(w.nvars())));
            e = r.element;
        } catch (const DomainError& ex) {
            notes.push_back(std::string("integralization skipped: ") + ex.what());
        }
    }
    return elems;
}

} // namespace

UniPoly<TowerElem> residue_poly(const MonicPoly& p) {
    const Weights& w = *p.weights();
    std::vector<TowerElem> c;
    for (auto& s : p.coeffs()) {
        auto v = s.valuation_lower_bound();
        if (v && w.sign(*v) < 0) throw DomainError("coefficient has negative valuation; not over the valuation ring");
        if (!s.exact() && w.sign(*s.precision()) <= 0) throw PrecisionError("residue undetermined at this precision");
        c.push_back(s.layer(w.zero()).rebased(p.tower()));
    }
    return TPoly(c);
}

Series hensel_lift_root(const MonicPoly& p, const TowerElem& r0, const GradeValue& target) {
    TowerPtr t = p.tower()->size() >= r0.tower()->size() ? p.tower() : r0.tower();
    MonicPoly q = p.with_tower(t);
    TPoly S = residue_poly(q);
    TowerElem r = r0.rebased(t), one = one_in(t);
    if (!S.eval(r).is_zero()) throw DomainError("r0 is not a root of the residue polynomial");
    TPoly g(std::vector<TowerElem>{-r, one});
    TPoly h = exact_poly_div(S, g);
    if (h.eval(r).is_zero())
        throw DomainError("r0 is a multiple residue root; use hensel_split or newton_puiseux_roots for the multifactor path");
    Lifted lf = lift(q.coeffs(), g, h, target, p.weights(), SolveOptions{}.layer_budget);
    return -lf.G[0];
}

std::pair<MonicPoly, MonicPoly> hensel_split(const MonicPoly& p, const TPoly& s1, const TPoly& s2, const GradeValue& target) {
    Lifted lf = lift(p.coeffs(), s1, s2, target, p.weights(), SolveOptions{}.layer_budget);
    return {MonicPoly(p.weights(), lf.G), MonicPoly(p.weights(), lf.H)};
}

std::vector<PuiseuxRoot> newton_puiseux_roots(const MonicPoly& p, const GradeValue& target, const SolveOptions& opt) {
    const Weights& w = *p.weights();
    Series disc = discriminant(p);
    if (disc.is_zero() && disc.exact()) throw DomainError("squarefree precondition violated (discriminant is zero)");
    GradeValue bump = w.constant(Rational(1));
    if (auto v = disc.valuation(); v && w.less(bump, *v)) bump = *v;
    std::size_t input_levels = p.tower()->size();
    GradeValue W = target;
    for (int round = 0; round < opt.max_rounds; ++round) {
        Ctx ctx{p.weights(), opt};
        std::vector<Branch> branches;
        try {
            branches = solve_node(p, W, ctx);
        } catch (const PrecisionError&) {
            W = W + bump;
            continue;
        }
        std::optional<GradeValue> worst;
        for (auto& b : branches) {
            auto pr = b.root.precision();
            if (pr && w.less(*pr, target) && (!worst || w.less(*pr, *worst))) worst = *pr;
        }
        if (worst) {
            W = W + (target - *worst) + w.constant(Rational(1, 2));
            continue;
        }
        std::vector<PuiseuxRoot> out;
        std::size_t total = 0;
        for (auto& b : branches) {
            PuiseuxRoot r;
            r.input_levels = input_levels;
            r.conjugates = count_conjugates(*b.root.tower(), input_levels);
            total += r.conjugates;
            r.expansion = b.root.truncated(target);
            if (p.exact() && b.root.layers().size() <= 6) {
                Series ex = Series::from_layers(p.weights(), b.root.tower(), b.root.layers(), std::nullopt);
                if (p.eval(ex).is_zero()) r.expansion = ex;
            }
            r.homogeneous = report_gammas(b.gammas, w, opt.seed, r.notes);
            out.push_back(std::move(r));
        }
        if (total != static_cast<std::size_t>(p.degree()))
            throw DomainError("internal: root classes account for " + std::to_string(total) + " of " +
                              std::to_string(p.degree()) + " roots");
        return out;
    }
    throw PrecisionError("target precision " + w.format(target) + " not reached after " + std::to_string(opt.max_rounds) +
                         " rounds");
}

PuiseuxRoot effective_ift(const MonicPoly& p, const Series& u, const GradeValue& target) {
    const WeightsPtr& wp = p.weights();
    const Weights& w = *wp;
    MonicPoly pu = p.shifted(u);  // pu[0] = P(u), pu[1] = P'(u), pu[k] = P^(k)(u)/k!
    const Series& e = pu[0];
    const Series& dp = pu[1];
    PuiseuxRoot out;
    out.input_levels = p.tower()->size();
    TowerPtr t = pu.tower();
    if (e.is_zero() && (e.exact() || (e.precision() && !w.less(*e.precision(), target)))) {
        out.expansion = u.truncated(target);
        out.witness = DenominatorWitness{one_in(t), {}, Rational(0), w.zero()};
        return out;
    }
    if (dp.is_zero()) throw DomainError("precondition fails: P'(u) vanishes at this precision");
    GradeValue vd = *dp.valuation();
    if (e.is_zero()) throw PrecisionError("nu(P(u)) undetermined");
    GradeValue ve = *e.valuation();
    if (!w.less(vd * Rational(2), ve))
        throw DomainError("precondition fails: nu(P(u)) = " + w.format(ve) + " is not > 2 nu(P'(u)) = " +
                          w.format(vd * Rational(2)));
    TowerElem wv = dp.initial_form(), winv = wv.inverse();
    int d = p.degree();
    // S(Y) = P(u + wY)/w^2 = e/w^2 + (P'(u)/w) Y + sum_k c_k w^(k-2) Y^k
    std::vector<Series> S(d + 1);
    S[0] = e.scaled(winv * winv, vd * Rational(-2));
    S[1] = dp.scaled(winv, -vd);
    TowerElem wk = one_in(t);
    for (int k = 2; k <= d; ++k) {
        S[k] = pu[k].scaled(wk, vd * Rational(k - 2));
        wk = wk * wv;
    }
    GradeValue ty = target - vd;
    auto evalS = [&](const Series& y) {
        Series r = S[d];
        for (int k = d - 1; k >= 0; --k) r = r * y + S[k];
        return r.truncated(ty);
    };
    Series y(wp, t, ty);
    for (int it = 0;; ++it) {
        if (it > 2000) throw BudgetExhausted("implicit function iteration did not settle");
        Series next = (y - evalS(y)).truncated(ty);
        if ((next - y).is_zero()) {
            y = next;
            break;
        }
        y = next;
    }
    Series root = (u + y.scaled(wv, vd)).truncated(target);
    out.expansion = root;

    // denominator witness: delta is the primitive numerator of in(P'(u))
    if (wv.level() >= 0) {
        out.notes.push_back("in(P'(u)) involves tower generators; no denominator witness");
        return out;
    }
    SparsePoly num = wv.base().num();
    RatFunc delta_rf(num * num.lead_coefficient().inverse());
    TowerElem delta(t, delta_rf);
    auto power_needed = [&](const TowerElem& v) -> long {
        if (v.level() >= 0) return -1;
        RatFunc x = v.base();
        for (long m = 0; m <= 400; ++m) {
            if (!x.has_denominator() && x.num().is_polynomial()) return m;
            x = x * delta_rf;
        }
        return -1;
    };
    // a from the layers of S at positive degree, per the contraction argument
    Rational a(0);
    bool bounded = true;
    for (auto& sk : S)
        for (auto& l : sk.layers()) {
            long m = power_needed(l.value);
            if (m < 0) {
                bounded = false;
                continue;
            }
            if (w.sign(l.degree) == 0) {
                if (m > 0) bounded = false;
                continue;
            }
            auto [lo, hi] = w.enclose(l.degree, 64);
            Rational ratio = Rational(m) / lo;
            if (ratio > a) a = ratio;
        }
    a = Rational(a.ceil());
    if (!bounded) out.notes.push_back("some layer of S has an unbounded denominator; bound derived from observed layers");
    DenominatorWitness wit{delta, {}, a, w.zero()};
    if (root.is_zero()) {
        out.witness = wit;
        return out;
    }
    GradeValue v0 = *root.valuation();
    GradeValue b = (v0 - vd) * a;
    wit.b = w.sign(b) > 0 ? b : w.zero();
    for (auto& l : root.layers()) {
        long m = power_needed(l.value);
        if (m < 0) {
            out.notes.push_back("layer at " + w.format(l.degree) + " is not cleared by powers of delta");
            continue;
        }
        GradeValue i = l.degree - v0;
        wit.layers.push_back({i, m});
        GradeValue bound = i * wit.a + wit.b;
        if (w.less(bound, w.constant(Rational(m)))) {
            if (bounded) throw DomainError("internal: denominator bound audit failed at layer " + w.format(l.degree));
            wit.b = wit.b + (w.constant(Rational(m)) - bound);
        }
    }
    out.witness = wit;
    return out;
}

GradeValue stability_threshold(const MonicPoly& p) {
    Series disc = discriminant(p);
    if (disc.is_zero()) {
        if (disc.exact()) throw DomainError("discriminant vanishes; P is not squarefree");
        throw PrecisionError("discriminant valuation undetermined; increase precision");
    }
    return *disc.valuation() * Rational(p.degree(), 2);
}

namespace {

// tower element as a Laurent polynomial in x and the generators of levels >= from
SparsePoly elem_to_sparse(const TowerElem& e, std::size_t from, std::size_t nvars_total) {
    std::size_t n = e.nvars();
    if (e.level() < 0) {
        if (e.base().has_denominator()) throw Unsupported("class polynomial needs monomial denominators");
        SparsePoly r(nvars_total);
        for (auto& [ex, c] : e.base().num().terms()) {
            std::vector<Rational> v(nvars_total);
            for (std::size_t i = 0; i < n; ++i) v[i] = ex[i];
            r.add_term(Exponent::from_rationals(v), c);
        }
        return r;
    }
    if (static_cast<std::size_t>(e.level()) < from) throw Unsupported("class polynomial over a non-base input tower");
    SparsePoly r(nvars_total);
    SparsePoly gen = SparsePoly::variable(nvars_total, n + (e.level() - from));
    SparsePoly gp(nvars_total, Rational(1));
    for (auto& c : e.coeffs()) {
        r = r + elem_to_sparse(c, from, nvars_total) * gp;
        gp = gp * gen;
    }
    return r;
}

UniPoly<SparsePoly> as_univariate(const SparsePoly& p, std::size_t var, std::size_t keep_vars) {
    std::map<long, SparsePoly> by;
    for (auto& [e, c] : p.terms()) {
        if (!e[var].is_integer() || e[var].sign() < 0) throw DomainError("non-polynomial generator power");
        long k = e[var].to_long();
        std::vector<Rational> v;
        for (std::size_t i = 0; i < keep_vars; ++i) v.push_back(i == var ? Rational(0) : e[i]);
        auto [it, _] = by.try_emplace(k, SparsePoly(keep_vars));
        it->second.add_term(Exponent::from_rationals(v), c);
    }
    long deg = by.empty() ? 0 : by.rbegin()->first;
    std::vector<SparsePoly> c(deg + 1, SparsePoly(keep_vars));
    for (auto& [k, v] : by) c[k] = v;
    return UniPoly<SparsePoly>(c);
}

SparsePoly truncate_sparse(const SparsePoly& p, const Weights& w, const Series::Precision& prec) {
    if (!prec) return p;
    SparsePoly r(p.nvars());
    for (auto& [e, c] : p.terms())
        if (w.less(w.degree(e), *prec)) r.add_term(e, c);
    return r;
}

UniPoly<SparsePoly> truncate_poly(const UniPoly<SparsePoly>& p, const Weights& w, const Series::Precision& prec) {
    std::vector<SparsePoly> c;
    for (auto& x : p.coeffs()) c.push_back(truncate_sparse(x, w, prec));
    return UniPoly<SparsePoly>(c);
}

bool integral_exponents(const UniPoly<SparsePoly>& p) {
    for (auto& c : p.coeffs())
        for (auto& [e, v] : c.terms())
            if (!e.integral()) return false;
    return true;
}

MonicPoly to_monic(const UniPoly<SparsePoly>& p, const WeightsPtr& w, const Series::Precision& prec) {
    TowerPtr t = Tower::base(w->nvars());
    std::vector<Series> c;
    for (int j = 0; j < p.degree(); ++j) c.push_back(Series::from_sparse(w, t, p[j], prec));
    c.push_back(Series::constant(w, one_in(t)));
    return MonicPoly(w, std::move(c));
}

struct Orbit {
    UniPoly<SparsePoly> poly;
    std::vector<std::size_t> classes;
    Series::Precision prec;
};

std::vector<Orbit> orbits_of(const std::vector<PuiseuxRoot>& roots, const Weights& w) {
    std::vector<Orbit> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        auto F = class_polynomial(roots[i]);
        bool merged = false;
        for (auto& o : out) {
            Series::Precision pr = min_precision(w, o.prec, roots[i].precision());
            if (truncate_poly(o.poly, w, pr) == truncate_poly(F, w, pr)) {
                o.classes.push_back(i);
                o.prec = pr;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({F, {i}, roots[i].precision()});
    }
    return out;
}

// minimal subsets of orbits whose product has integer exponents
std::vector<std::vector<std::size_t>> group_orbits(const std::vector<Orbit>& orbits, const Weights& w, int degree) {
    int total = 0;
    for (auto& o : orbits) total += o.poly.degree();
    if (total != degree) throw Unsupported("root orbits do not account for the degree; class polynomials overlap");
    std::vector<std::size_t> left(orbits.size());
    for (std::size_t i = 0; i < left.size(); ++i) left[i] = i;
    std::vector<std::vector<std::size_t>> groups;
    while (!left.empty()) {
        bool found = false;
        for (std::size_t size = 1; size <= left.size() && !found; ++size) {
            std::vector<bool> pick(left.size(), false);
            std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
            do {
                std::vector<std::size_t> sub;
                Series::Precision pr;
                UniPoly<SparsePoly> prod = UniPoly<SparsePoly>::constant(SparsePoly(w.nvars(), Rational(1)));
                for (std::size_t k = 0; k < left.size(); ++k)
                    if (pick[k]) {
                        sub.push_back(left[k]);
                        prod = prod * orbits[left[k]].poly;
                        pr = min_precision(w, pr, orbits[left[k]].prec);
                    }
                if (integral_exponents(truncate_poly(prod, w, pr))) {
                    groups.push_back(sub);
                    std::vector<std::size_t> rest;
                    for (std::size_t k = 0; k < left.size(); ++k)
                        if (!pick[k]) rest.push_back(left[k]);
                    left = rest;
                    found = true;
                    break;
                }
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
        if (!found) throw DomainError("internal: no subset of root orbits has integer exponents");
    }
    return groups;
}

} // namespace

UniPoly<SparsePoly> class_polynomial(const PuiseuxRoot& r) {
    const TowerPtr& t = r.tower();
    std::size_t n = t->nvars(), from = r.input_levels, k = t->size() - from;
    if (from > 0) throw Unsupported("class polynomial over a non-base input tower");
    std::size_t total = n + k + 1, zv = n + k;
    SparsePoly F = SparsePoly::variable(total, zv) - elem_to_sparse(r.expansion.sum(), from, total);
    for (std::size_t lvl = t->size(); lvl-- > from;) {
        std::size_t var = n + (lvl - from);
        UniPoly<SparsePoly> f = as_univariate(F, var, total);
        std::vector<SparsePoly> m;
        for (auto& c : t->level(lvl).modulus) m.push_back(elem_to_sparse(c, from, total));
        F = resultant(UniPoly<SparsePoly>(m), f);
    }
    // back to x1..xn with Z as the polynomial variable
    UniPoly<SparsePoly> wide = as_univariate(F, zv, total);
    std::vector<SparsePoly> c;
    for (auto& x : wide.coeffs()) {
        SparsePoly s(n);
        for (auto& [e, v] : x.terms()) {
            std::vector<Rational> ex;
            for (std::size_t i = 0; i < n; ++i) ex.push_back(e[i]);
            s.add_term(Exponent::from_rationals(ex), v);
        }
        c.push_back(truncate_sparse(s, *r.expansion.weights(), r.precision()));
    }
    return UniPoly<SparsePoly>(c);
}

std::vector<std::vector<std::size_t>> galois_groups(const std::vector<PuiseuxRoot>& roots, const Weights& w) {
    int degree = 0;
    for (auto& r : roots) degree += static_cast<int>(r.conjugates);
    auto orbits = orbits_of(roots, w);
    std::vector<std::vector<std::size_t>> out;
    for (auto& g : group_orbits(orbits, w, degree)) {
        std::vector<std::size_t> classes;
        for (auto o : g) classes.insert(classes.end(), orbits[o].classes.begin(), orbits[o].classes.end());
        std::sort(classes.begin(), classes.end());
        out.push_back(classes);
    }
    return out;
}

MonicPoly class_product(const std::vector<PuiseuxRoot>& roots, const std::vector<std::size_t>& classes, const WeightsPtr& wp) {
    const Weights& w = *wp;
    std::vector<PuiseuxRoot> picked;
    for (auto i : classes) picked.push_back(roots.at(i));
    UniPoly<SparsePoly> prod = UniPoly<SparsePoly>::constant(SparsePoly(w.nvars(), Rational(1)));
    Series::Precision prec;
    for (auto& o : orbits_of(picked, w)) {
        prod = prod * o.poly;
        prec = min_precision(w, prec, o.prec);
    }
    return to_monic(truncate_poly(prod, w, prec), wp, prec);
}

Transfer transfer_factorization(const MonicPoly& p, const MonicPoly& q, const std::vector<PuiseuxRoot>& p_roots,
                                const GradeValue& target, const SolveOptions& opt) {
    const WeightsPtr& wp = p.weights();
    const Weights& w = *wp;
    int d = p.degree();
    if (q.degree() != d) throw DomainError("P and Q must have the same degree");
    Transfer out;
    out.identical = true;
    for (int j = 0; j < d; ++j) {
        Series diff = q[static_cast<std::size_t>(j)] - p[static_cast<std::size_t>(j)];
        if (diff.is_zero()) continue;
        GradeValue v = *diff.valuation();
        if (out.identical || w.less(v, out.perturbation)) out.perturbation = v;
        out.identical = false;
    }
    // nu(z_i - z_j) <= nu(P'(z_i)) - (d-2) min nu(z_k)
    GradeValue vmin, sep = w.zero();
    bool first = true;
    for (auto& r : p_roots) {
        auto v = r.expansion.valuation_lower_bound();
        if (v && (first || w.less(*v, vmin))) vmin = *v;
        first = false;
    }
    if (w.sign(vmin) < 0) vmin = w.zero();
    for (auto& r : p_roots) {
        Series dz = p.with_tower(r.tower()).eval_derivative(r.expansion);
        if (dz.is_zero()) throw PrecisionError("nu(P'(z)) undetermined at the root precision");
        GradeValue s = *dz.valuation() - vmin * Rational(d - 2);
        if (w.less(sep, s)) sep = s;
    }
    out.root_separation = sep;
    if (!out.identical && !w.less(sep * Rational(d), out.perturbation))
        throw DomainError("hypothesis fails: min nu(a_i - b_i) = " + w.format(out.perturbation) +
                          " is not > d * max nu(z_i - z_j) <= " + w.format(sep * Rational(d)));

    auto p_orbits = orbits_of(p_roots, w);
    std::vector<Orbit> q_orbits;
    std::vector<PuiseuxRoot> q_roots;
    GradeValue closeness_floor = out.identical ? target : out.perturbation / Rational(d);
    if (out.identical) {
        q_orbits = p_orbits;
    } else {
        GradeValue tq = w.max(target, closeness_floor + w.constant(Rational(1)));
        q_roots = newton_puiseux_roots(q, tq, opt);
        q_orbits = orbits_of(q_roots, w);
    }
    // pair each Q orbit with its unique closest P orbit
    std::vector<int> match(q_orbits.size(), -1);
    for (std::size_t b = 0; b < q_orbits.size(); ++b) {
        std::optional<GradeValue> bestv;
        int besti = -1;
        bool tie = false;
        for (std::size_t a = 0; a < p_orbits.size(); ++a) {
            if (p_orbits[a].poly.degree() != q_orbits[b].poly.degree()) continue;
            Series::Precision pr = min_precision(w, p_orbits[a].prec, q_orbits[b].prec);
            auto diff = truncate_poly(q_orbits[b].poly - p_orbits[a].poly, w, pr);
            std::optional<GradeValue> v;  // nullopt: equal to precision
            for (auto& c : diff.coeffs())
                for (auto& [e, x] : c.terms()) {
                    GradeValue dv = w.degree(e);
                    if (!v || w.less(dv, *v)) v = dv;
                }
            GradeValue vv = v ? *v : (pr ? *pr : w.constant(Rational(1000000)));
            if (!bestv || w.less(*bestv, vv)) {
                bestv = vv;
                besti = static_cast<int>(a);
                tie = false;
            } else if (vv == *bestv) {
                tie = true;
            }
        }
        if (besti < 0 || tie || w.less(*bestv, closeness_floor))
            throw DomainError("no unique closest root orbit of P for an orbit of Q");
        match[b] = besti;
    }
    std::vector<bool> used(p_orbits.size(), false);
    for (int m : match) {
        if (used[static_cast<std::size_t>(m)]) throw DomainError("two orbits of Q matched the same orbit of P");
        used[static_cast<std::size_t>(m)] = true;
    }
    for (auto& g : group_orbits(p_orbits, w, d)) {
        MatchedFactor mf;
        UniPoly<SparsePoly> pp = UniPoly<SparsePoly>::constant(SparsePoly(w.nvars(), Rational(1))), qq = pp;
        Series::Precision prec;
        for (auto a : g) {
            pp = pp * p_orbits[a].poly;
            prec = min_precision(w, prec, p_orbits[a].prec);
            mf.p_classes.insert(mf.p_classes.end(), p_orbits[a].classes.begin(), p_orbits[a].classes.end());
            for (std::size_t b = 0; b < q_orbits.size(); ++b)
                if (match[b] == static_cast<int>(a)) {
                    qq = qq * q_orbits[b].poly;
                    prec = min_precision(w, prec, q_orbits[b].prec);
                    mf.q_classes.insert(mf.q_classes.end(), q_orbits[b].classes.begin(), q_orbits[b].classes.end());
                }
        }
        mf.p_factor = to_monic(truncate_poly(pp, w, prec), wp, prec);
        mf.q_factor = to_monic(truncate_poly(qq, w, prec), wp, prec);
        if (!integral_exponents(truncate_poly(qq, w, prec)))
            throw DomainError("matched factor of Q has fractional exponents; grouping is inconsistent");
        if (!out.identical) {
            for (std::size_t j = 0; j < mf.p_factor.coeffs().size(); ++j) {
                Series diff = mf.q_factor[j] - mf.p_factor[j];
                if (diff.is_zero()) continue;
                if (!mf.closeness || w.less(*diff.valuation(), *mf.closeness)) mf.closeness = *diff.valuation();
            }
        }
        out.factors.push_back(std::move(mf));
    }
    return out;
}

StableTower stable_tower(const MonicPoly& p, const std::vector<PuiseuxRoot>& roots) {
    const Weights& w = *p.weights();
    StableTower out;
    out.threshold = stability_threshold(p);
    for (auto& r : roots)
        for (auto& h : r.homogeneous) {
            bool dup = false;
            for (auto& e : out.elements) dup = dup || e.minpoly == h.minpoly;
            if (!dup) out.elements.push_back(h);
            GradeValue guard = h.degree * Rational(p.degree());
            if (w.less(out.threshold, guard)) out.threshold = guard;
        }
    return out;
}

} // namespace monoval
