#include <gtest/gtest.h>
#include "monoval/parser.hpp"
#include "monoval/solver.hpp"

using namespace monoval;

namespace {

struct Ctx {
    WeightsPtr w;
    TowerPtr t;
    explicit Ctx(const std::string& weights) : w(parse_weights(weights)), t(Tower::base(w->nvars())) {}
    TowerElem e(const std::string& s) const { return parse_tower_elem(s, t); }
    MonicPoly p(const std::string& s) const { return MonicPoly::parse(s, w); }
    GradeValue c(const Rational& v) const { return w->constant(v); }
    Series s(const std::string& text, const Series::Precision& prec = std::nullopt) const {
        return Series::from_elem(w, e(text), prec);
    }
    UniPoly<TowerElem> lin(const std::string& r) const {
        return UniPoly<TowerElem>(std::vector<TowerElem>{-e(r), e("1")});
    }
};

// P(z) vanishes to at least prec
void expect_root(const MonicPoly& p, const Series& z, const GradeValue& prec) {
    Series v = p.with_tower(z.tower()).eval(z);
    const Weights& w = *p.weights();
    if (v.is_zero()) {
        if (!v.exact()) EXPECT_FALSE(w.less(*v.precision(), prec)) << w.format(*v.precision());
        return;
    }
    EXPECT_FALSE(w.less(*v.valuation(), prec)) << "residual valuation " << w.format(*v.valuation());
}

// binomial coefficients of (1+u)^(1/2)
Rational half_binomial(int k) {
    Rational c(1);
    for (int i = 0; i < k; ++i) c = c * (Rational(1, 2) - Rational(i)) / Rational(i + 1);
    return c;
}

} // namespace

TEST(Hensel, BinomialSeries) {
    Ctx a("1,1");
    Series y = hensel_lift_root(a.p("Z^2 - 1 - x1"), a.e("1"), a.c(4));
    EXPECT_EQ(y.sum(), a.e("1 + x1/2 - x1^2/8 + x1^3/16"));
    // oracle: generic binomial coefficients
    for (int k = 0; k < 4; ++k) EXPECT_EQ(y.layer(a.c(k)), a.e("x1^" + std::to_string(k)).scaled(half_binomial(k)));

    Series f = hensel_lift_root(a.p("Z - x1^2 - 3*x2 - 5"), a.e("5"), a.c(10));
    EXPECT_EQ(f.sum(), a.e("x1^2 + 3*x2 + 5"));

    Ctx b("1,2");
    Series g = hensel_lift_root(b.p("Z^2 - 1 - x2/x1"), b.e("1"), b.c(3));
    EXPECT_EQ(g.sum(), b.e("1 + x2/(2*x1) - x2^2/(8*x1^2)"));
}

TEST(Hensel, MultipleResidueRoot) {
    Ctx a("1,1");
    try {
        hensel_lift_root(a.p("Z^2 - x1"), a.e("0"), a.c(3));
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("multiple residue root"), std::string::npos);
    }
}

TEST(Hensel, Uniqueness) {
    Ctx a("1,1");
    MonicPoly p = a.p("Z^3 - Z - x1 - x2^2 + x1*x2");
    Series lo = hensel_lift_root(p, a.e("1"), a.c(4));
    Series hi = hensel_lift_root(p, a.e("1"), a.c(7));
    EXPECT_TRUE((hi.truncated(a.c(4)) - lo).is_zero());
    expect_root(p, hi, a.c(7));
}

TEST(Hensel, Split) {
    Ctx a("1,1");
    auto [s1, s2] = hensel_split(a.p("Z^2 - 1 - x1"), a.lin("1"), a.lin("-1"), a.c(3));
    EXPECT_EQ(s1[0].sum(), a.e("-1 - x1/2 + x1^2/8"));
    EXPECT_EQ(s2[0].sum(), a.e("1 + x1/2 - x1^2/8"));

    MonicPoly q = a.p("Z^2 - Z + x1*x2");
    auto [t1, t2] = hensel_split(q, a.lin("0"), a.lin("1"), a.c(4));
    // oracle: the small root of Z^2 - Z + u is u + u^2 + 2u^3 + ...
    EXPECT_EQ(t1[0].sum(), a.e("-x1*x2"));
    EXPECT_EQ(t2[0].sum(), a.e("-1 + x1*x2"));
    auto [u1, u2] = hensel_split(q, a.lin("0"), a.lin("1"), a.c(8));
    EXPECT_EQ(u1[0].sum(), a.e("-x1*x2 - x1^2*x2^2 - 2*x1^3*x2^3"));
    // factor reconstruction
    for (std::size_t j = 0; j < 2; ++j) {
        Series prod = j == 0 ? u1[0] * u2[0] : u1[0] + u2[0];
        Series want = j == 0 ? q[0] : q[1];
        EXPECT_TRUE((prod - want).truncated(a.c(8)).is_zero());
    }

    auto [v1, v2] = hensel_split(a.p("(Z - x1)*(Z - x2 - 1)"), a.lin("0"), a.lin("1"), a.c(6));
    EXPECT_EQ(v1[0].sum(), a.e("-x1"));
    EXPECT_EQ(v2[0].sum(), a.e("-x2 - 1"));
}

TEST(Hensel, NotCoprime) {
    Ctx a("1,1");
    try {
        hensel_split(a.p("Z^2 - x1"), a.lin("0"), a.lin("0"), a.c(3));
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("not coprime"), std::string::npos);
    }
}

TEST(Puiseux, CubicExample) {
    Ctx a("1,1");
    MonicPoly p = a.p("Z^3 + 3*x1*x2*Z - 2*x1^4");
    auto roots = newton_puiseux_roots(p, a.c(6));
    std::size_t total = 0;
    bool rational_root = false, pair = false;
    for (auto& r : roots) {
        total += r.conjugates;
        expect_root(p, r.expansion, a.c(6));
        TowerElem in = r.expansion.initial_form();
        auto names = element_names(*r.tower());
        if (r.conjugates == 1 && in == TowerElem(r.tower(), a.e("2*x1^3/(3*x2)").base())) rational_root = true;
        if (r.conjugates == 2) {
            // in(z)^2 = -3 x1 x2
            pair = in * in == TowerElem(r.tower(), a.e("-3*x1*x2").base());
        }
    }
    EXPECT_EQ(total, 3u);
    EXPECT_TRUE(rational_root);
    EXPECT_TRUE(pair);
    EXPECT_EQ(galois_groups(roots, *a.w).size(), 2u);
}

TEST(Puiseux, PureAdjunction) {
    Ctx a("1,1");
    MonicPoly p = a.p("Z^2 - x1 - x2");
    for (long prec : {3L, 12L}) {
        auto roots = newton_puiseux_roots(p, a.c(prec));
        std::size_t total = 0;
        for (auto& r : roots) {
            total += r.conjugates;
            EXPECT_TRUE(r.expansion.exact());
            EXPECT_TRUE(p.with_tower(r.tower()).eval(r.expansion).is_zero());
            EXPECT_EQ(r.expansion.layers().size(), 1u);
        }
        EXPECT_EQ(total, 2u);
    }
}

TEST(Puiseux, IrrationalWeights) {
    Ctx a("1, sqrt2");
    MonicPoly p = a.p("Z^2 - x1 - x1*x2");
    GradeValue target = a.c(6);
    auto roots = newton_puiseux_roots(p, target);
    ASSERT_EQ(roots.size(), 2u);
    for (auto& r : roots) {
        expect_root(p, r.expansion, target);
        // +-x1^(1/2) (1 + x2/2 - x2^2/8 + ...)
        TowerElem in = r.expansion.initial_form();
        EXPECT_EQ(in * in, TowerElem(r.tower(), a.e("x1").base()));
        for (int k = 1; k < 3; ++k) {
            GradeValue d = a.w->degree(Exponent::from_rationals({Rational(1, 2), Rational(k)}));
            EXPECT_EQ(r.expansion.layer(d), in * TowerElem(r.tower(), a.e("x2^" + std::to_string(k)).base()).scaled(half_binomial(k)));
        }
    }
}

TEST(Puiseux, RejectsNonSquarefree) {
    Ctx a("1,1");
    try {
        newton_puiseux_roots(a.p("(Z - x1)^2"), a.c(4));
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("squarefree precondition violated"), std::string::npos);
    }
}

TEST(Puiseux, RootCertificateProperty) {
    Ctx a("1,1");
    const char* polys[] = {"Z^2 - x1^3 - x2^2", "Z^3 - x1*Z - x2^2", "Z^4 - x1^2*x2 - x1^5", "Z^3 + Z - x1 - x2",
                           "(Z^2 - x1)*(Z - x2 - x1^2)"};
    for (auto* s : polys) {
        MonicPoly p = a.p(s);
        auto roots = newton_puiseux_roots(p, a.c(5));
        std::size_t total = 0;
        for (auto& r : roots) {
            total += r.conjugates;
            expect_root(p, r.expansion, a.c(5));
            EXPECT_LE(r.homogeneous.size(), a.w->value_rank()) << s;
        }
        EXPECT_EQ(total, static_cast<std::size_t>(p.degree())) << s;
    }
}

TEST(EffectiveIft, DenominatorBound) {
    Ctx a("1,1");
    MonicPoly p = a.p("Z^2 - x1^2 - x2^3");
    GradeValue target = a.c(8);
    PuiseuxRoot r = effective_ift(p, a.s("x1"), target);
    expect_root(p, r.expansion, target);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->delta, a.e("x1"));
    EXPECT_EQ(r.witness->a, Rational(2));
    EXPECT_EQ(r.witness->b, a.w->zero());
    // oracle: x1 * sum binom(1/2,i) (x2^3/x1^2)^i
    for (int i = 0; i < 4; ++i) {
        std::string term = "x2^" + std::to_string(3 * i) + "/x1^" + std::to_string(2 * i - 1);
        EXPECT_EQ(r.expansion.layer(a.c(i + 1)), a.e(term).scaled(half_binomial(i)));
    }
    for (auto& l : r.witness->layers) {
        long i = a.w->enclose(l.index, 8).first.ceil().get_si();
        if (i > 0) EXPECT_EQ(l.m, 2 * i - 1);
        EXPECT_FALSE(a.w->less(l.index * r.witness->a + r.witness->b, a.c(l.m)));
    }

    // same root through the quadratic formula: Z^2 + 2aZ + b with a = 0
    PuiseuxRoot q = effective_ift(a.p("Z^2 + 0*Z - x1^2 - x2^3"), a.s("x1"), target);
    EXPECT_TRUE((q.expansion - r.expansion).is_zero());
}

TEST(EffectiveIft, ExactAndFailing) {
    Ctx a("1,1");
    PuiseuxRoot r = effective_ift(a.p("Z^2 - x1^2"), a.s("x1"), a.c(5));
    EXPECT_EQ(r.expansion.sum(), a.e("x1"));
    ASSERT_TRUE(r.witness);
    EXPECT_TRUE(r.witness->layers.empty());
    try {
        effective_ift(a.p("Z^2 - x1^2 - x2^2"), a.s("x1"), a.c(5));
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("precondition fails"), std::string::npos);
    }
}

TEST(Stability, Threshold) {
    Ctx a("1,1");
    EXPECT_EQ(stability_threshold(a.p("Z^2 - x1*x2")), a.c(2));
    EXPECT_EQ(stability_threshold(a.p("Z^2 - x1")), a.c(1));
    EXPECT_EQ(stability_threshold(a.p("Z - x1 - 7")), a.c(0));
    // oracle: discriminant of Z^3 + pZ + q is -4p^3 - 27q^2
    MonicPoly c = a.p("Z^3 + 3*x1*x2*Z - 2*x1^4");
    EXPECT_EQ(discriminant(c).sum(), a.e("-108*x1^3*x2^3 - 108*x1^8"));
    EXPECT_EQ(stability_threshold(c), a.c(9));
}

TEST(Stability, Transfer) {
    Ctx a("1,1");
    MonicPoly p = a.p("Z^2 - x1*x2");
    auto pr = newton_puiseux_roots(p, a.c(6));
    Transfer t = transfer_factorization(p, a.p("Z^2 - x1*x2 + x1^5"), pr, a.c(6));
    EXPECT_EQ(t.perturbation, a.c(5));
    ASSERT_EQ(t.factors.size(), 1u);
    EXPECT_EQ(t.factors[0].q_factor.degree(), 2);

    MonicPoly s = a.p("(Z - x1)*(Z - x2)");
    auto sr = newton_puiseux_roots(s, a.c(6));
    Transfer u = transfer_factorization(s, a.p("(Z - x1 + x1^3)*(Z - x2)"), sr, a.c(6));
    ASSERT_EQ(u.factors.size(), 2u);
    for (auto& f : u.factors) {
        EXPECT_EQ(f.q_factor.degree(), 1);
        TowerElem pf = f.p_factor[0].sum(), qf = f.q_factor[0].sum();
        if (pf == a.e("-x1")) {
            EXPECT_EQ(qf, a.e("-x1 + x1^3"));
            ASSERT_TRUE(f.closeness);
            EXPECT_FALSE(a.w->less(*f.closeness, a.c(3) / Rational(2)));
        } else {
            EXPECT_EQ(qf, a.e("-x2"));
            EXPECT_FALSE(f.closeness);
        }
    }

    Transfer same = transfer_factorization(s, s, sr, a.c(6));
    EXPECT_TRUE(same.identical);
    for (auto& f : same.factors) {
        EXPECT_FALSE(f.closeness);
        EXPECT_TRUE(f.p_factor == f.q_factor);
    }

    try {
        transfer_factorization(p, a.p("Z^2 - x1*x2 + x1^2"), pr, a.c(6));
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("hypothesis fails"), std::string::npos);
    }
}

TEST(Stability, StableTower) {
    Ctx a("1,1");
    MonicPoly p = a.p("Z^2 - x1*x2");
    StableTower st = stable_tower(p, newton_puiseux_roots(p, a.c(4)));
    ASSERT_EQ(st.elements.size(), 1u);
    EXPECT_EQ(format_rpoly(st.elements[0].minpoly, 2), "Z^2 - x1*x2");
    EXPECT_EQ(st.threshold, a.c(2));

    MonicPoly l = a.p("Z - x1");
    StableTower sl = stable_tower(l, newton_puiseux_roots(l, a.c(4)));
    EXPECT_TRUE(sl.elements.empty());
    EXPECT_EQ(sl.threshold, a.c(0));

    MonicPoly c = a.p("Z^3 + 3*x1*x2*Z - 2*x1^4");
    StableTower sc = stable_tower(c, newton_puiseux_roots(c, a.c(6)));
    EXPECT_FALSE(a.w->less(sc.threshold, a.c(9)));
}
