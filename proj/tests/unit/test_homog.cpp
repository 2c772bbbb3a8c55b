#include <gtest/gtest.h>
#include "monoval/homog.hpp"
#include "monoval/parser.hpp"

using namespace monoval;

namespace {

struct H {
    WeightsPtr w;
    explicit H(const std::string& weights) : w(parse_weights(weights)) {}
    RPoly p(const std::string& s) const { return parse_rpoly(s, w->nvars()); }
    GradeValue c(Rational v) const { return w->constant(v); }
    HomogeneousElement el(const std::string& name, const std::string& poly, const GradeValue& d) const {
        return validate(name, p(poly), d, *w);
    }
    HomogeneousElement el(const std::string& name, const std::string& poly, Rational d) const { return el(name, poly, c(d)); }
};

// each coefficient layer has degree d * codegree
bool homogeneous_for(const HomogeneousElement& g, const Weights& w) {
    int q = g.minpoly.degree();
    for (int k = 1; k <= q; ++k) {
        GradeValue dk;
        if (!is_homogeneous(g.minpoly[q - k], w, &dk)) return false;
        if (!g.minpoly[q - k].is_zero() && dk != g.degree * Rational(k)) return false;
    }
    return true;
}

// substitute a tower element into an RPoly
TowerElem eval_at(const RPoly& p, const TowerElem& z) {
    TowerElem acc(z.tower(), Rational(0));
    for (int i = p.degree(); i >= 0; --i) acc = acc * z + TowerElem(z.tower(), p[i]);
    return acc;
}

TowerPtr sqrt_tower(const Weights& w, const std::vector<std::string>& radicands) {
    auto t = Tower::base(w.nvars());
    int k = 0;
    for (auto& r : radicands) {
        auto mod = parse_tower_poly("Z^2 - (" + r + ")", t);
        t = Tower::adjoin(t, "r" + std::to_string(++k), LevelKind::homogeneous,
                          homogeneous_degree(parse_tower_elem(r, Tower::base(w.nvars())), w) / Rational(2), mod);
    }
    return t;
}

} // namespace

TEST(Homog, Validate) {
    H h("1,1");
    auto g = h.el("g1", "Z^2 - x1*x2", 1);
    EXPECT_TRUE(g.integral);
    auto q = h.el("g2", "Z^2 - x2/x1", 0);
    EXPECT_FALSE(q.integral);
    try {
        h.el("g3", "Z^2 - x1 - x2^2", 1);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("g_2"), std::string::npos);
    }
    try {
        h.el("g4", "Z^2 - x1*x2", 2);
        FAIL();
    } catch (const DomainError& e) {
        std::string m = e.what();
        EXPECT_NE(m.find("g_2"), std::string::npos);
        EXPECT_NE(m.find("expected 4"), std::string::npos);
    }
    EXPECT_EQ(g.display(), "g1 := root(Z^2 - x1*x2, branch 0)");
}

TEST(Homog, MonomialNormalForm) {
    H h("1, sqrt2");
    GradeValue d1 = (h.w->weight(0) + h.w->weight(1)) / Rational(2);
    auto f = monomial_normal_form(h.el("g", "Z^2 - x1*x2", d1), *h.w);
    EXPECT_EQ(f.beta, Exponent::from_rationals({Rational(1, 2), Rational(1, 2)}));
    EXPECT_EQ(f.c.rational_value()->abs(), Rational(1));
    EXPECT_TRUE(f.integral);

    H pi("pi: [3.14159, 3.1416]; a1 = 1; a2 = pi");
    auto g = monomial_normal_form(pi.el("g", "Z^3 - x1^2", Rational(2, 3)), *pi.w);
    EXPECT_EQ(g.beta, Exponent::from_rationals({Rational(2, 3), Rational(0)}));
    EXPECT_EQ(*g.c.rational_value(), Rational(1));

    auto s = monomial_normal_form(h.el("g", "Z^2 - 2*x1", Rational(1, 2)), *h.w);
    EXPECT_EQ(s.beta, Exponent::from_rationals({Rational(1, 2), Rational(0)}));
    EXPECT_EQ(s.c * s.c, TowerElem(s.tower, Rational(2)));

    H dep("1,1");
    try {
        monomial_normal_form(dep.el("g", "Z^2 - x1*x2", 1), *dep.w);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("normal form requires N=n"), std::string::npos);
    }
}

TEST(Homog, CombinePower) {
    H h("1,1");
    EXPECT_EQ(combine_power(h.el("g", "Z^2 - x1", Rational(1, 2)), 3, *h.w).minpoly, h.p("Z^2 - x1^3"));
    EXPECT_EQ(combine_power(h.el("g", "Z^2 - x1*x2", 1), 2, *h.w).minpoly, h.p("Z - x1*x2"));
    EXPECT_EQ(combine_power(h.el("g", "Z^3 - x1", Rational(1, 3)), 3, *h.w).minpoly, h.p("Z - x1"));
}

TEST(Homog, CombineSum) {
    H h("1,1");
    auto a = h.el("a", "Z^2 - x1", Rational(1, 2)), b = h.el("b", "Z^2 - x2", Rational(1, 2));
    auto s = combine_sum(a, 1, b, 1, *h.w);
    EXPECT_EQ(s.minpoly, h.p("Z^4 - 2*(x1+x2)*Z^2 + (x1-x2)^2"));
    EXPECT_TRUE(homogeneous_for(s, *h.w));
    EXPECT_EQ(combine_sum(h.el("a", "Z - x1", 1), 1, h.el("b", "Z - x2", 1), 1, *h.w).minpoly, h.p("Z - (x1+x2)"));
    EXPECT_EQ(combine_sum(h.el("a", "Z^2 - x1*x2", 1), 1, h.el("b", "Z - x1", 1), 1, *h.w).minpoly,
              h.p("Z^2 - 2*x1*Z + x1^2 - x1*x2"));
    try {
        combine_sum(a, 1, h.el("c", "Z - x1", 1), 1, *h.w);
        FAIL();
    } catch (const DomainError& e) {
        std::string m = e.what();
        EXPECT_NE(m.find("1/2"), std::string::npos);
    }
    // substitution oracle: sqrt(x1) + sqrt(x2) in an explicit tower
    auto t = sqrt_tower(*h.w, {"x1", "x2"});
    auto z = TowerElem::generator(t, 0) + TowerElem::generator(t, 1);
    EXPECT_TRUE(eval_at(s.minpoly, z).is_zero());
}

TEST(Homog, CombineProduct) {
    H h("1,1");
    auto a = h.el("a", "Z^2 - x1", Rational(1, 2)), b = h.el("b", "Z^2 - x2", Rational(1, 2));
    auto p = combine_product(a, b, *h.w);
    EXPECT_EQ(p.minpoly, h.p("Z^2 - x1*x2"));
    EXPECT_EQ(p.degree, h.c(1));
    auto c = h.el("c", "Z^2 - 2", 0);
    EXPECT_EQ(combine_product(c, a, *h.w).minpoly, h.p("Z^2 - 2*x1"));
    EXPECT_EQ(combine_product(a, h.el("one", "Z - 1", 0), *h.w).minpoly, a.minpoly);
}

TEST(Homog, Integralize) {
    H h("1,1");
    auto r = integralize(h.el("g", "Z^2 - x2/x1", 0), *h.w);
    EXPECT_EQ(r.multiplier, RatFunc(parse_sparse("x1", 2)));
    EXPECT_EQ(r.element.minpoly, h.p("Z^2 - x1*x2"));
    EXPECT_TRUE(r.element.integral);
    auto same = integralize(h.el("g", "Z^2 - x1*x2", 1), *h.w);
    EXPECT_TRUE(same.multiplier.is_one());
    EXPECT_EQ(same.element.minpoly, h.p("Z^2 - x1*x2"));
    auto cube = integralize(h.el("g", "Z^3 - x2^2/x1", Rational(1, 3)), *h.w);
    EXPECT_EQ(cube.multiplier, RatFunc(parse_sparse("x1", 2)));
    EXPECT_EQ(cube.element.minpoly, h.p("Z^3 - x1^2*x2^2"));
    // polynomial denominators clear too
    auto den = integralize(h.el("g", "Z^2 - x1^3/(x1+x2)", 1), *h.w);
    EXPECT_TRUE(den.element.integral);
}

TEST(Homog, TowerCompress) {
    H h("1,1");
    auto a = h.el("a", "Z^2 - x1", Rational(1, 2)), b = h.el("b", "Z^2 - x2", Rational(1, 2));
    auto t = tower_compress({a, b}, *h.w, 0);
    ASSERT_EQ(t.elements.size(), 1u);
    EXPECT_EQ(t.degrees[0], 4);
    EXPECT_EQ(t.elements[0].minpoly, h.p("Z^4 - 2*(x1+x2)*Z^2 + (x1-x2)^2"));
    EXPECT_TRUE(homogeneous_for(t.elements[0], *h.w));

    // the new generator recovers the old ones: sqrt(x1) = (g^2 + x1 - x2) / (2g)
    auto tw = sqrt_tower(*h.w, {"x1", "x2"});
    auto g = TowerElem::generator(tw, 0) + TowerElem::generator(tw, 1);
    auto x = [&](const char* s) { return parse_tower_elem(s, tw); };
    auto r1 = (g * g + x("x1") - x("x2")) * (g * x("2")).inverse();
    EXPECT_EQ(r1, TowerElem::generator(tw, 0));

    auto id = tower_compress({a}, *h.w, 5);
    ASSERT_EQ(id.elements.size(), 1u);
    EXPECT_EQ(id.elements[0].minpoly, a.minpoly);

    auto drop = tower_compress({a, h.el("b", "Z - x1", 1)}, *h.w, 1);
    ASSERT_EQ(drop.elements.size(), 1u);
    EXPECT_EQ(drop.elements[0].name, "a");

    // N=2: nothing to compress
    H irr("1, sqrt2");
    auto two = tower_compress({irr.el("a", "Z^2 - x1", Rational(1, 2)), irr.el("b", "Z^2 - x2", irr.w->weight(1) / Rational(2))},
                              *irr.w, 0);
    EXPECT_EQ(two.elements.size(), 2u);
}

TEST(Homog, TowerCompressRelationWithRoots) {
    // degrees 1/2 and 1/3 in rank one: relation 2*(1/2) = 3*(1/3), roots of order 2 and 3
    H h("1,1");
    auto a = h.el("a", "Z^2 - x1", Rational(1, 2)), b = h.el("b", "Z^3 - x2", Rational(1, 3));
    auto t = tower_compress({a, b}, *h.w, 2);
    ASSERT_EQ(t.elements.size(), 1u);
    EXPECT_TRUE(homogeneous_for(t.elements[0], *h.w));
    EXPECT_EQ(t.elements[0].degree, h.c(Rational(1, 6)));

    // degrees 3/2 and 5/2: roots of order 3 and 5 would give a degree-60 generator
    auto c = h.el("c", "Z^2 - x1*x2^2", Rational(3, 2)), e = h.el("e", "Z^2 - x1^2*x2^3", Rational(5, 2));
    EXPECT_THROW(tower_compress({c, e}, *h.w, 0), Unsupported);
}

TEST(HomogProperty, ConjugationPreservesValuation) {
    // sigma: sqrt(x1) -> -sqrt(x1); the least key of span elements is unchanged
    H h("1,1");
    auto t = sqrt_tower(*h.w, {"x1"});
    auto r = TowerElem::generator(t, 0);
    auto x = [&](const char* s) { return parse_tower_elem(s, t); };
    for (auto e : {x("x2 + r1*x1"), x("r1 + x1*x2"), x("x1 + r1*x2^2 + r1*x1")}) {
        auto img = e.substitute_generator(0, -r);
        auto v1 = homogeneous_split(e, *h.w).begin()->first, v2 = homogeneous_split(img, *h.w).begin()->first;
        EXPECT_EQ(v1, v2);
    }
}
