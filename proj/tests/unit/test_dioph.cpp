#include <gtest/gtest.h>
#include "monoval/dioph.hpp"
#include "monoval/parser.hpp"
#include "monoval/solver.hpp"

using namespace monoval;

namespace {

struct Ctx {
    WeightsPtr w;
    TowerPtr t;
    explicit Ctx(const std::string& weights) : w(parse_weights(weights)), t(Tower::base(w->nvars())) {}
    TowerElem e(const std::string& s) const { return parse_tower_elem(s, t); }
    GradeValue c(const Rational& v) const { return w->constant(v); }
};

long factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

Series factorial_series(const Ctx& a, int terms, const Series::Precision& prec) {
    std::vector<Layer> ls;
    for (int i = 1; i <= terms; ++i) {
        long f = factorial(i);
        ls.push_back({a.c(f), a.e("x2^" + std::to_string(f) + "/x1^" + std::to_string(f))});
    }
    return Series::from_layers(a.w, a.t, ls, prec);
}

// x1 (1 + x2/x1)^(1/2) below prec
Series binomial_series(const Ctx& a, int prec) {
    std::vector<Layer> ls;
    Rational c(1);
    for (int k = 0; k + 1 < prec; ++k) {
        ls.push_back({a.c(k + 1), a.e("x2^" + std::to_string(k) + "*x1^" + std::to_string(1 - k)).scaled(c)});
        c = c * (Rational(1, 2) - Rational(k)) / Rational(k + 1);
    }
    return Series::from_layers(a.w, a.t, ls, a.c(prec));
}

} // namespace

TEST(Dioph, FactorialRecord) {
    Ctx a("1,2");
    Series z = factorial_series(a, 4, std::nullopt);
    auto rec = record(z, partial_sum_approximants(z));
    ASSERT_EQ(rec.samples.size(), 3u);
    EXPECT_EQ(rec.notices.size(), 1u);  // the full sum is z itself
    for (int k = 1; k <= 3; ++k) {
        EXPECT_EQ(rec.samples[k - 1].denominator, a.c(factorial(k)));
        EXPECT_EQ(rec.samples[k - 1].error, a.c(factorial(k + 1)));
    }
    auto flag = liouville_flag(rec, Rational(3), 3);
    EXPECT_TRUE(flag.flagged);
    EXPECT_EQ(flag.ratios[2].first, Rational(4));

    Series z5 = factorial_series(a, 5, std::nullopt);
    auto f5 = liouville_flag(record(z5, partial_sum_approximants(z5)), Rational(3), 3);
    EXPECT_TRUE(f5.flagged);
    ASSERT_EQ(f5.ratios.size(), 4u);
    for (int k = 0; k < 4; ++k) EXPECT_EQ(f5.ratios[k].first, Rational(k + 2));
}

TEST(Dioph, BinomialClear) {
    Ctx a("1,2");
    for (int prec : {6, 10, 16}) {
        Series z = binomial_series(a, prec);
        auto rec = record(z, partial_sum_approximants(z));
        // error grows like nu(g) + 3
        for (auto& s : rec.samples)
            if (a.w->less(a.c(0), s.denominator)) EXPECT_EQ(s.error, s.denominator + a.c(3));
        EXPECT_FALSE(liouville_flag(rec, Rational(3), 3).flagged) << prec;
    }
}

TEST(Dioph, TrivialCases) {
    Ctx a("1,1");
    Series z = Series::from_elem(a.w, a.e("x1^2 + x2"));
    auto rec = record(z, {{z, Series::from_elem(a.w, a.e("1"))}});
    EXPECT_TRUE(rec.samples.empty());
    EXPECT_EQ(rec.notices.size(), 1u);
    EXPECT_THROW(liouville_flag(rec, Rational(3), 3), DomainError);

    Series k = Series::from_elem(a.w, a.e("5"), a.c(10));
    std::vector<std::pair<Series, Series>> approx;
    for (int j = 1; j <= 4; ++j)
        approx.push_back({Series::from_elem(a.w, a.e("5 + x1^" + std::to_string(j))), Series::from_elem(a.w, a.e("1"))});
    auto rk = record(k, approx);
    ASSERT_EQ(rk.samples.size(), 4u);
    EXPECT_FALSE(liouville_flag(rk, Rational(10), 1).flagged);
}

TEST(Dioph, MonotoneEvidenceProperty) {
    Ctx a("1,2");
    Series z = factorial_series(a, 6, std::nullopt);
    auto rec = record(z, partial_sum_approximants(z));
    bool seen = false;
    for (std::size_t k = 3; k <= rec.samples.size(); ++k) {
        ApproximationRecord pre{rec.weights, {rec.samples.begin(), rec.samples.begin() + static_cast<long>(k)}, {}};
        bool f = liouville_flag(pre, Rational(3), 3).flagged;
        if (seen) EXPECT_TRUE(f);
        seen = seen || f;
    }
    EXPECT_TRUE(seen);
}

TEST(Dioph, SolverRootsAreClear) {
    // roots with growing monomial denominators, sampled by their own partial sums
    Ctx a("1,1");
    int sampled = 0;
    for (const char* s : {"Z^2 - x1^2 - x2^3", "Z^2 - x1^2 - x1*x2^2 - x2^5", "Z^3 - x1^3 - x2^4"}) {
        MonicPoly p = MonicPoly::parse(s, a.w);
        for (long prec : {8L, 14L}) {
            for (auto& r : newton_puiseux_roots(p, a.c(prec))) {
                if (r.tower()->size() > 0) continue;  // partial sums over Q(x) only
                auto rec = record(r.expansion, partial_sum_approximants(r.expansion));
                if (rec.samples.size() < 3) continue;
                EXPECT_FALSE(liouville_flag(rec, default_a_max(p.degree()), 3).flagged) << s;
                ++sampled;
            }
        }
    }
    EXPECT_GE(sampled, 6);
}
