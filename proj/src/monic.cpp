#include "monoval/monic.hpp"
#include "monoval/parser.hpp"

namespace monoval {

MonicPoly::MonicPoly(WeightsPtr w, std::vector<Series> coeffs) : w_(std::move(w)), c_(std::move(coeffs)) {
    if (c_.size() < 2) throw DomainError("monic polynomial needs positive degree");
    const Series& top = c_.back();
    if (!top.exact() || top.layers().size() != 1 || !top.layers()[0].value.is_one() || !top.layers()[0].degree.is_zero())
        throw DomainError("polynomial is not monic");
    TowerPtr t = c_.back().tower();
    for (auto& c : c_)
        if (c.tower()->size() > t->size()) t = c.tower();
    for (auto& c : c_) c = c.with_tower(t);
}

MonicPoly MonicPoly::from_tower_poly(WeightsPtr w, const UniPoly<TowerElem>& p, Series::Precision prec) {
    if (p.degree() < 1 || !p.lead().is_one()) throw DomainError("polynomial is not monic");
    std::vector<Series> c;
    for (int j = 0; j < p.degree(); ++j) c.push_back(Series::from_elem(w, p[j], prec));
    c.push_back(Series::constant(w, p.lead()));
    return MonicPoly(w, std::move(c));
}

MonicPoly MonicPoly::parse(const std::string& text, WeightsPtr w) {
    return from_tower_poly(w, parse_tower_poly(text, Tower::base(w->nvars())));
}

bool MonicPoly::exact() const {
    for (auto& c : c_)
        if (!c.exact()) return false;
    return true;
}

Series::Precision MonicPoly::precision() const {
    Series::Precision p;
    for (auto& c : c_) p = min_precision(*w_, p, c.precision());
    return p;
}

MonicPoly MonicPoly::with_tower(const TowerPtr& t) const {
    MonicPoly r = *this;
    for (auto& c : r.c_) c = c.with_tower(t);
    return r;
}

MonicPoly MonicPoly::shifted(const Series& s) const {
    // Horner in (Z + s)
    std::vector<Series> acc{c_.back()};
    for (int j = degree() - 1; j >= 0; --j) {
        std::vector<Series> next(acc.size() + 1, Series(w_, tower()));
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k + 1] = next[k + 1] + acc[k];
            next[k] = next[k] + acc[k] * s;
        }
        next[0] = next[0] + c_[j];
        acc = std::move(next);
    }
    acc.back() = Series::constant(w_, TowerElem(acc.back().tower(), Rational(1)));
    return MonicPoly(w_, std::move(acc));
}

Series MonicPoly::eval(const Series& z) const {
    Series r = c_.back();
    for (int j = degree() - 1; j >= 0; --j) r = r * z + c_[j];
    return r;
}

Series MonicPoly::eval_derivative(const Series& z) const {
    Series r = c_.back().scaled(Rational(degree()));
    for (int j = degree() - 1; j >= 1; --j) r = r * z + c_[j].scaled(Rational(j));
    return r;
}

UniPoly<TowerElem> MonicPoly::truncation() const {
    std::vector<TowerElem> c;
    for (auto& s : c_) c.push_back(s.sum().rebased(tower()));
    return UniPoly<TowerElem>(c);
}

bool MonicPoly::operator==(const MonicPoly& o) const {
    if (degree() != o.degree()) return false;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        Series d = c_[j] - o.c_[j];
        if (!d.is_zero()) return false;
    }
    return true;
}

std::string MonicPoly::str() const {
    auto names = element_names(*tower());
    return truncation().str([&](const TowerElem& e) { return e.str(names); });
}

Series discriminant(const MonicPoly& p) {
    UniPoly<TowerElem> f = p.truncation();
    TowerElem r = resultant(f, f.derivative());
    int d = p.degree();
    if ((d * (d - 1) / 2) % 2) r = -r;
    // every coefficient has nonnegative valuation in the cases we truncate, so
    // the error sits at or above the smallest coefficient precision
    return Series::from_elem(p.weights(), r, p.precision());
}

} // namespace monoval
