#include "monoval/series.hpp"
#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace monoval {

namespace {

GradeValue den_degree(const RatFunc& r, const Weights& w) {
    const auto& terms = r.den().terms();
    GradeValue d = w.degree(terms.begin()->first);
    for (auto& [e, c] : terms)
        if (w.degree(e) != d) throw DomainError("denominator is not homogeneous: " + r.den().str(default_names(w.nvars())));
    return d;
}

void split_into(const TowerElem& e, const Weights& w, const GradeValue& shift, const TowerElem& factor,
                std::map<GradeValue, TowerElem>& out) {
    if (e.is_zero()) return;
    if (e.level() < 0) {
        const RatFunc& r = e.base();
        GradeValue dd = den_degree(r, w);
        std::map<GradeValue, SparsePoly> parts;
        for (auto& [ex, c] : r.num().terms()) {
            auto [it, _] = parts.try_emplace(w.degree(ex) - dd + shift, SparsePoly(r.nvars()));
            it->second.add_term(ex, c);
        }
        for (auto& [d, p] : parts) {
            TowerElem piece(e.tower(), parts.size() == 1 ? r : RatFunc(p, r.den()));
            piece = piece * factor;
            auto [it, fresh] = out.try_emplace(d, piece);
            if (!fresh) it->second += piece;
        }
        return;
    }
    const Level& L = e.tower()->level(e.level());
    TowerElem g = TowerElem::generator(e.tower(), e.level());
    TowerElem gp = factor;
    GradeValue s = shift;
    for (std::size_t j = 0; j < e.coeffs().size(); ++j) {
        split_into(e.coeffs()[j], w, s, gp, out);
        gp = gp * g;
        s = s + L.degree;
    }
}

} // namespace

std::map<GradeValue, TowerElem> homogeneous_split(const TowerElem& e, const Weights& w) {
    std::map<GradeValue, TowerElem> out;
    split_into(e, w, w.zero(), TowerElem(e.tower(), Rational(1)), out);
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

GradeValue homogeneous_degree(const TowerElem& e, const Weights& w) {
    auto parts = homogeneous_split(e, w);
    if (parts.size() != 1) throw DomainError(parts.empty() ? "zero has no degree" : "element is not homogeneous");
    return parts.begin()->first;
}

Series::Precision min_precision(const Weights& w, const Series::Precision& a, const Series::Precision& b) {
    if (!a) return b;
    if (!b) return a;
    return w.less(*b, *a) ? b : a;
}

Series::Precision add_precision(const Series::Precision& a, const GradeValue& d) {
    if (!a) return a;
    return *a + d;
}

Series::Series(WeightsPtr w, TowerPtr t, Precision p) : w_(std::move(w)), tower_(std::move(t)), prec_(std::move(p)) {}

Series Series::constant(WeightsPtr w, const TowerElem& c, Precision p) {
    Series s(w, c.tower(), p);
    if (!c.is_zero() && (!p || w->sign(*p) > 0)) s.layers_.push_back({w->zero(), c});
    return s;
}

Series Series::from_layers(WeightsPtr w, TowerPtr t, std::vector<Layer> layers, Precision p) {
    Series s(w, std::move(t), std::move(p));
    for (auto& l : layers) {
        if (l.value.is_zero()) continue;
        if (s.prec_ && !w->less(l.degree, *s.prec_)) continue;
        if (l.value.tower()->size() > s.tower_->size()) s.tower_ = l.value.tower();
        s.layers_.push_back(std::move(l));
    }
    std::sort(s.layers_.begin(), s.layers_.end(), [&](const Layer& a, const Layer& b) { return w->less(a.degree, b.degree); });
    for (std::size_t i = 1; i < s.layers_.size(); ++i)
        if (s.layers_[i].degree == s.layers_[i - 1].degree) throw DomainError("duplicate layer degree");
    return s;
}

Series Series::from_elem(WeightsPtr w, const TowerElem& e, Precision p) {
    std::vector<Layer> ls;
    for (auto& [d, v] : homogeneous_split(e, *w)) ls.push_back({d, v});
    return from_layers(w, e.tower(), std::move(ls), std::move(p));
}

Series Series::from_sparse(WeightsPtr w, const TowerPtr& t, const SparsePoly& s, Precision p) {
    std::map<GradeValue, SparsePoly> parts;
    for (auto& [e, c] : s.terms()) {
        auto [it, _] = parts.try_emplace(w->degree(e), SparsePoly(s.nvars()));
        it->second.add_term(e, c);
    }
    std::vector<Layer> ls;
    for (auto& [d, q] : parts) ls.push_back({d, TowerElem(t, RatFunc(q))});
    return from_layers(w, t, std::move(ls), std::move(p));
}

std::optional<GradeValue> Series::valuation() const {
    if (layers_.empty()) return std::nullopt;
    return layers_.front().degree;
}

Series::Precision Series::valuation_lower_bound() const {
    if (!layers_.empty()) return layers_.front().degree;
    return prec_;
}

const TowerElem& Series::initial_form() const {
    if (layers_.empty()) throw PrecisionError("valuation below precision unknown");
    return layers_.front().value;
}

TowerElem Series::layer(const GradeValue& d) const {
    for (auto& l : layers_)
        if (l.degree == d) return l.value;
    return TowerElem(tower_, Rational(0));
}

std::vector<GradeValue> Series::support() const {
    std::vector<GradeValue> s;
    for (auto& l : layers_) s.push_back(l.degree);
    return s;
}

TowerElem Series::sum() const {
    TowerElem r(tower_, Rational(0));
    for (auto& l : layers_) r += l.value;
    return r;
}

Series Series::truncated(const Precision& p) const {
    Precision np = min_precision(*w_, prec_, p);
    Series s(w_, tower_, np);
    for (auto& l : layers_)
        if (!np || w_->less(l.degree, *np)) s.layers_.push_back(l);
    return s;
}

Series Series::with_tower(const TowerPtr& t) const {
    Series s = *this;
    s.tower_ = t;
    for (auto& l : s.layers_) l.value = l.value.rebased(t);
    return s;
}

namespace {

TowerPtr longer(const TowerPtr& a, const TowerPtr& b) { return a->size() >= b->size() ? a : b; }

void check_weights(const Series& a, const Series& b) {
    if (a.weights() != b.weights() && !(*a.weights() == *b.weights())) throw DomainError("series over different weights");
}

} // namespace

Series Series::operator+(const Series& o) const {
    check_weights(*this, o);
    Precision p = min_precision(*w_, prec_, o.prec_);
    Series r(w_, longer(tower_, o.tower_), p);
    std::size_t i = 0, j = 0;
    auto below = [&](const GradeValue& d) { return !p || w_->less(d, *p); };
    while (i < layers_.size() || j < o.layers_.size()) {
        int c = i == layers_.size() ? 1 : j == o.layers_.size() ? -1 : w_->compare(layers_[i].degree, o.layers_[j].degree);
        if (c < 0) {
            if (below(layers_[i].degree)) r.layers_.push_back(layers_[i]);
            ++i;
        } else if (c > 0) {
            if (below(o.layers_[j].degree)) r.layers_.push_back(o.layers_[j]);
            ++j;
        } else {
            TowerElem v = layers_[i].value + o.layers_[j].value;
            if (!v.is_zero() && below(layers_[i].degree)) r.layers_.push_back({layers_[i].degree, v});
            ++i;
            ++j;
        }
    }
    return r;
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& l : r.layers_) l.value = -l.value;
    return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
    check_weights(*this, o);
    Precision p;
    auto vf = valuation_lower_bound(), vg = o.valuation_lower_bound();
    bool zero_exact = (exact() && layers_.empty()) || (o.exact() && o.layers_.empty());
    if (!zero_exact) {
        Precision a = prec_ && vg ? Precision(*prec_ + *vg) : Precision();
        Precision b = o.prec_ && vf ? Precision(*o.prec_ + *vf) : Precision();
        p = min_precision(*w_, a, b);
    }
    std::map<GradeValue, TowerElem> acc;
    for (auto& a : layers_) {
        for (auto& b : o.layers_) {
            GradeValue d = a.degree + b.degree;
            if (p && !w_->less(d, *p)) break;
            TowerElem v = a.value * b.value;
            auto [it, fresh] = acc.try_emplace(d, v);
            if (!fresh) it->second += v;
        }
    }
    std::vector<Layer> ls;
    for (auto& [d, v] : acc) ls.push_back({d, v});
    return from_layers(w_, longer(tower_, o.tower_), std::move(ls), p);
}

Series Series::scaled(const TowerElem& c, const GradeValue& d) const {
    Series r(w_, longer(tower_, c.tower()), add_precision(prec_, d));
    if (c.is_zero()) return r;
    for (auto& l : layers_) r.layers_.push_back({l.degree + d, l.value * c});
    return r;
}

Series Series::scaled(const Rational& c) const {
    if (c.is_zero()) return Series(w_, tower_, prec_);
    Series r = *this;
    for (auto& l : r.layers_) l.value = l.value.scaled(c);
    return r;
}

Series Series::map_layers(const std::function<TowerElem(const TowerElem&)>& f) const {
    std::vector<Layer> ls;
    TowerPtr t = tower_;
    for (auto& l : layers_) {
        TowerElem v = f(l.value);
        if (v.tower()->size() > t->size()) t = v.tower();
        ls.push_back({l.degree, v});
    }
    return from_layers(w_, t, std::move(ls), prec_);
}

bool Series::layers_homogeneous() const {
    for (auto& l : layers_) {
        auto parts = homogeneous_split(l.value, *w_);
        if (parts.size() != 1 || parts.begin()->first != l.degree) return false;
    }
    return true;
}

std::string Series::str() const {
    auto names = default_names(tower_->nvars());
    std::ostringstream os;
    bool first = true;
    for (auto& l : layers_) {
        os << (first ? "" : " + ") << "[" << l.value.str(names) << "]";
        first = false;
    }
    if (first) os << "0";
    if (prec_) os << " + O(" << w_->format(*prec_) << ")";
    return os.str();
}

// ---- semigroups -------------------------------------------------------------

std::vector<GradeValue> semigroup_elements(const std::vector<GradeValue>& gens0, const GradeValue& bound, const Weights& w,
                                           std::size_t limit) {
    std::vector<GradeValue> gens;
    for (auto& g : gens0) {
        int s = w.sign(g);
        if (s < 0) throw DomainError("semigroup generator " + w.format(g) + " is negative");
        if (s > 0 && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
    std::set<GradeValue> seen{w.zero()};
    std::deque<GradeValue> queue{w.zero()};
    while (!queue.empty()) {
        GradeValue v = queue.front();
        queue.pop_front();
        for (auto& g : gens) {
            GradeValue s = v + g;
            if (!w.less(s, bound) || seen.count(s)) continue;
            if (seen.size() >= limit) throw BudgetExhausted("semigroup enumeration exceeded its limit");
            seen.insert(s);
            queue.push_back(s);
        }
    }
    std::vector<GradeValue> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [&](const GradeValue& a, const GradeValue& b) { return w.less(a, b); });
    return out;
}

bool semigroup_membership(const GradeValue& value, const std::vector<GradeValue>& gens, const Weights& w) {
    if (value.is_zero()) return true;
    if (w.sign(value) < 0) return false;
    GradeValue bound = value + w.constant(Rational(1, 1000000));
    for (auto& g : semigroup_elements(gens, bound, w))
        if (g == value) return true;
    return false;
}

// ---- inversion and division ----------------------------------------------

Series invert_unit(const Series& f, const GradeValue& target) {
    const Weights& w = *f.weights();
    auto v = f.valuation();
    if (!v || !v->is_zero())
        throw DomainError("not a unit: valuation " + (v ? w.format(*v) : std::string("unknown")));
    TowerElem f0inv = f.initial_form().inverse();
    Series::Precision p = min_precision(w, f.precision(), target);
    std::vector<GradeValue> gens;
    for (auto& l : f.layers())
        if (!l.degree.is_zero()) gens.push_back(l.degree);
    std::map<GradeValue, TowerElem> g;
    g.emplace(w.zero(), f0inv);
    std::vector<Layer> out{{w.zero(), f0inv}};
    for (auto& D : semigroup_elements(gens, *p, w)) {
        if (D.is_zero()) continue;
        TowerElem acc(f.tower(), Rational(0));
        for (auto& l : f.layers()) {
            if (l.degree.is_zero()) continue;
            if (w.less(D, l.degree)) break;
            auto it = g.find(D - l.degree);
            if (it != g.end()) acc += l.value * it->second;
        }
        if (acc.is_zero()) continue;
        TowerElem gd = -(f0inv * acc);
        g.emplace(D, gd);
        out.push_back({D, gd});
    }
    return Series::from_layers(f.weights(), f.tower(), std::move(out), p);
}

Series divide(const Series& f, const Series& g, const GradeValue& target) {
    const Weights& w = *g.weights();
    auto vg = g.valuation();
    if (!vg) throw PrecisionError("divisor vanishes modulo precision");
    auto vf = f.valuation_lower_bound();
    if (vf && w.less(*vf, *vg)) throw DomainError("not in valuation ring: valuation " + w.format(*vf) + " < " + w.format(*vg));
    TowerElem g0inv = g.initial_form().inverse();
    Series unit = g.scaled(g0inv, -*vg);
    Series fs = f.scaled(g0inv, -*vg);
    return (fs * invert_unit(unit, target)).truncated(target);
}

} // namespace monoval
