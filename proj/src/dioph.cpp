#include "monoval/dioph.hpp"
#include <algorithm>

namespace monoval {

ApproximationRecord record(const Series& z, const std::vector<std::pair<Series, Series>>& approximants) {
    const WeightsPtr& wp = z.weights();
    const Weights& w = *wp;
    ApproximationRecord rec{wp, {}, {}};
    for (std::size_t k = 0; k < approximants.size(); ++k) {
        const auto& [f, g] = approximants[k];
        if (g.is_zero()) {
            if (g.exact()) throw DomainError("approximant " + std::to_string(k) + " has g = 0");
            throw PrecisionError("valuation of g undetermined for approximant " + std::to_string(k));
        }
        GradeValue vg = *g.valuation();
        // nu(z - f/g) = nu(z g - f) - nu(g)
        Series diff = z * g - f;
        if (diff.is_zero()) {
            rec.notices.push_back("approximant " + std::to_string(k) + " agrees with z to its precision; dropped");
            continue;
        }
        rec.samples.push_back({vg, *diff.valuation() - vg});
    }
    std::stable_sort(rec.samples.begin(), rec.samples.end(),
                     [&](const ApproximationSample& a, const ApproximationSample& b) { return w.less(a.denominator, b.denominator); });
    return rec;
}

std::vector<std::pair<Series, Series>> partial_sum_approximants(const Series& z) {
    const WeightsPtr& wp = z.weights();
    std::size_t n = wp->nvars();
    std::vector<std::pair<Series, Series>> out;
    std::vector<Layer> prefix;
    std::vector<Rational> lowest(n);
    for (auto& l : z.layers()) {
        if (l.value.level() >= 0 || l.value.base().has_denominator())
            throw Unsupported("partial sums need layers with monomial denominators");
        Exponent m = l.value.base().num().min_exponent();
        if (!m.integral()) throw Unsupported("partial sums need integer exponents");
        for (std::size_t i = 0; i < n; ++i) lowest[i] = std::min(lowest[i], m[i]);
        prefix.push_back(l);
        std::vector<Rational> clear(n);
        for (std::size_t i = 0; i < n; ++i) clear[i] = -lowest[i];
        Exponent e = Exponent::from_rationals(clear);
        TowerElem g(z.tower(), RatFunc(SparsePoly::monomial(e)));
        Series part = Series::from_layers(wp, z.tower(), prefix, std::nullopt);
        out.emplace_back(part.scaled(g, wp->degree(e)), Series::from_elem(wp, g));
    }
    return out;
}

namespace {

std::pair<Rational, Rational> ratio(const Weights& w, const ApproximationSample& s, int bits) {
    GradeValue d = w.less(s.denominator, w.constant(Rational(1))) ? w.constant(Rational(1)) : s.denominator;
    auto [elo, ehi] = w.enclose(s.error, bits);
    auto [dlo, dhi] = w.enclose(d, bits);
    // error may be negative only for approximants worse than z itself
    Rational a = elo / dhi, b = elo / dlo, c = ehi / dhi, e = ehi / dlo;
    return {min(min(a, b), min(c, e)), max(max(a, b), max(c, e))};
}

} // namespace

LiouvilleReport liouville_flag(const ApproximationRecord& rec, const Rational& a_max, std::size_t count) {
    const Weights& w = *rec.weights;
    if (count == 0) throw DomainError("count threshold must be positive");
    LiouvilleReport out;
    out.a_max = a_max;
    out.count = count;
    for (std::size_t k = 0; k < rec.samples.size(); ++k) {
        const auto& s = rec.samples[k];
        if (!out.used.empty() && rec.samples[out.used.back()].denominator == s.denominator) {
            if (w.less(rec.samples[out.used.back()].error, s.error)) out.used.back() = k;
            continue;
        }
        out.used.push_back(k);
    }
    if (out.used.size() < count)
        throw DomainError("too few samples: " + std::to_string(out.used.size()) + " distinct denominators, need " +
                          std::to_string(count));
    const int bits = 128;
    for (auto k : out.used) out.ratios.push_back(ratio(w, rec.samples[k], bits));
    std::size_t run = 1;
    for (std::size_t k = 0; k < out.ratios.size(); ++k) {
        if (k > 0) run = out.ratios[k].first > out.ratios[k - 1].second ? run + 1 : 1;
        if (run >= count && out.ratios[k].first > a_max) {
            out.flagged = true;
            for (std::size_t j = k + 1 - run; j <= k; ++j) out.evidence.push_back(j);
            return out;
        }
    }
    return out;
}

Rational default_a_max(std::optional<int> degree) { return degree ? Rational(2 * *degree) : Rational(10); }

} // namespace monoval
