#include "monoval/tower.hpp"
#include <sstream>

namespace monoval {

std::string to_string(LevelKind k) {
    switch (k) {
    case LevelKind::number_field: return "number-field";
    case LevelKind::residue: return "residue";
    case LevelKind::homogeneous: return "homogeneous";
    }
    return "?";
}

// ---- Tower ------------------------------------------------------------------

TowerPtr Tower::base(std::size_t nvars) {
    auto t = std::make_shared<Tower>();
    t->nvars_ = nvars;
    return t;
}

TowerPtr Tower::prefix(const TowerPtr& t, std::size_t i) {
    if (i >= t->size()) return t;
    auto r = std::make_shared<Tower>();
    r->nvars_ = t->nvars_;
    r->levels_.assign(t->levels_.begin(), t->levels_.begin() + static_cast<long>(i));
    return r;
}

int Tower::find(const std::string& name) const {
    for (std::size_t i = 0; i < levels_.size(); ++i)
        if (levels_[i]->name == name) return static_cast<int>(i);
    return -1;
}

bool Tower::extends(const Tower& o) const {
    if (o.nvars_ != nvars_ || o.levels_.size() > levels_.size()) return false;
    for (std::size_t i = 0; i < o.levels_.size(); ++i)
        if (o.levels_[i] != levels_[i]) return false;
    return true;
}

UniPoly<TowerElem> Tower::modulus_poly(std::size_t i, const TowerPtr& self) const {
    std::vector<TowerElem> c;
    for (auto& m : levels_.at(i)->modulus) c.push_back(m.rebased(self));
    return UniPoly<TowerElem>(std::move(c));
}

TowerPtr Tower::adjoin(const TowerPtr& t, std::string name, LevelKind kind, GradeValue degree, const UniPoly<TowerElem>& m,
                       bool check_squarefree) {
    if (m.degree() < 1) throw DomainError("modulus of " + name + " must have positive degree");
    if (!m.lead().is_one()) throw DomainError("modulus of " + name + " must be monic");
    if (t->find(name) >= 0) throw DomainError("generator name " + name + " already used");
    std::vector<TowerElem> coeffs;
    for (auto& c : m.coeffs()) {
        if (!t->extends(*c.tower()) && !c.tower()->extends(*t)) throw DomainError("modulus not over the given tower");
        if (c.tower()->size() > t->size() && c.level() >= static_cast<int>(t->size()))
            throw DomainError("modulus coefficient uses a generator outside the tower");
        coeffs.push_back(c.rebased(t));
    }
    UniPoly<TowerElem> mm(coeffs);
    if (check_squarefree && m.degree() > 1) {
        UniPoly<TowerElem> g = gcd(mm, mm.derivative());
        if (g.degree() > 0) {
            auto names = element_names(*t);
            throw DomainError("modulus of " + name + " is not squarefree; repeated factor " +
                              g.str([&](const TowerElem& e) { return e.str(names); }));
        }
    }
    auto r = std::make_shared<Tower>(*t);
    r->levels_.push_back(std::make_shared<const Level>(Level{std::move(name), kind, std::move(degree), std::move(coeffs)}));
    return r;
}

std::vector<std::string> element_names(const Tower& t) { return default_names(t.nvars()); }

// ---- TowerElem --------------------------------------------------------------

TowerElem::TowerElem(TowerPtr t, RatFunc r) : tower_(std::move(t)), base_(std::move(r)) {
    if (base_.nvars() != tower_->nvars()) throw DomainError("variable count mismatch");
}

TowerElem::TowerElem(TowerPtr t, const Rational& c) : tower_(std::move(t)) { base_ = RatFunc(tower_->nvars(), c); }

TowerElem TowerElem::generator(const TowerPtr& t, std::size_t lvl) {
    if (lvl >= t->size()) throw DomainError("no such tower level");
    TowerElem e;
    e.tower_ = t;
    e.level_ = static_cast<int>(lvl);
    e.coeffs_ = {TowerElem(t, Rational(0)), TowerElem(t, Rational(1))};
    e.normalize();
    return e;
}

TowerElem TowerElem::from_poly(const TowerPtr& t, std::size_t lvl, const UniPoly<TowerElem>& p) {
    TowerElem e;
    e.tower_ = t;
    e.level_ = static_cast<int>(lvl);
    for (auto& c : p.coeffs()) {
        if (c.level_ >= static_cast<int>(lvl)) throw DomainError("coefficient above its level");
        e.coeffs_.push_back(c.rebased(t));
    }
    e.normalize();
    return e;
}

UniPoly<TowerElem> TowerElem::as_poly(std::size_t lvl) const {
    if (level_ == static_cast<int>(lvl)) return UniPoly<TowerElem>(coeffs_);
    if (level_ > static_cast<int>(lvl)) throw DomainError("element lies above the requested level");
    return UniPoly<TowerElem>::constant(*this);
}

void TowerElem::normalize() {
    if (level_ < 0) return;
    const Level& L = tower_->level(level_);
    std::size_t q = L.modulus.size() - 1;
    if (coeffs_.size() > q) {
        // reduce modulo the monic modulus
        for (std::size_t k = coeffs_.size() - 1; k >= q; --k) {
            TowerElem c = coeffs_[k];
            if (!c.is_zero())
                for (std::size_t j = 0; j < q; ++j)
                    if (!L.modulus[j].is_zero()) coeffs_[k - q + j] = coeffs_[k - q + j] - c * L.modulus[j];
            if (k == q) break;
        }
        coeffs_.resize(q);
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.size() <= 1) {
        TowerElem c = coeffs_.empty() ? TowerElem(tower_, Rational(0)) : coeffs_[0];
        TowerPtr t = tower_;
        *this = std::move(c);
        tower_ = t;
    }
}

std::optional<Rational> TowerElem::rational_value() const {
    if (level_ >= 0) return std::nullopt;
    return base_.constant_value();
}

bool TowerElem::is_constant() const {
    if (level_ < 0) return base_.constant_value().has_value();
    if (tower_->level(level_).kind == LevelKind::homogeneous) return false;
    for (auto& c : coeffs_)
        if (!c.is_constant()) return false;
    return true;
}

namespace {

TowerPtr common_tower(const TowerPtr& a, const TowerPtr& b) {
    if (a == b) return a;
    if (a->size() >= b->size()) {
        if (!a->extends(*b)) throw DomainError("elements of incompatible towers");
        return a;
    }
    if (!b->extends(*a)) throw DomainError("elements of incompatible towers");
    return b;
}

} // namespace

TowerElem TowerElem::operator+(const TowerElem& o) const {
    TowerPtr t = common_tower(tower_, o.tower_);
    if (o.is_zero()) {
        TowerElem r = *this;
        r.tower_ = t;
        return r;
    }
    if (is_zero()) {
        TowerElem r = o;
        r.tower_ = t;
        return r;
    }
    if (level_ < 0 && o.level_ < 0) return TowerElem(t, base_ + o.base_);
    TowerElem r;
    r.tower_ = t;
    if (level_ == o.level_) {
        r.level_ = level_;
        std::size_t n = std::max(coeffs_.size(), o.coeffs_.size());
        r.coeffs_.resize(n, TowerElem(t, Rational(0)));
        for (std::size_t i = 0; i < n; ++i) {
            if (i < coeffs_.size() && i < o.coeffs_.size())
                r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
            else
                r.coeffs_[i] = i < coeffs_.size() ? coeffs_[i] : o.coeffs_[i];
        }
    } else {
        const TowerElem& hi = level_ > o.level_ ? *this : o;
        const TowerElem& lo = level_ > o.level_ ? o : *this;
        r.level_ = hi.level_;
        r.coeffs_ = hi.coeffs_;
        r.coeffs_[0] = r.coeffs_[0] + lo;
    }
    r.normalize();
    return r;
}

TowerElem TowerElem::operator-() const {
    TowerElem r = *this;
    if (level_ < 0)
        r.base_ = -base_;
    else
        for (auto& c : r.coeffs_) c = -c;
    return r;
}

TowerElem TowerElem::operator-(const TowerElem& o) const { return *this + (-o); }

TowerElem TowerElem::operator*(const TowerElem& o) const {
    TowerPtr t = common_tower(tower_, o.tower_);
    if (is_zero() || o.is_zero()) return TowerElem(t, Rational(0));
    if (level_ < 0 && o.level_ < 0) return TowerElem(t, base_ * o.base_);
    TowerElem r;
    r.tower_ = t;
    if (level_ == o.level_) {
        r.level_ = level_;
        r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, TowerElem(t, Rational(0)));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                if (!o.coeffs_[j].is_zero()) r.coeffs_[i + j] = r.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
        }
    } else {
        const TowerElem& hi = level_ > o.level_ ? *this : o;
        const TowerElem& lo = level_ > o.level_ ? o : *this;
        r.level_ = hi.level_;
        for (auto& c : hi.coeffs_) r.coeffs_.push_back(c * lo);
    }
    r.normalize();
    return r;
}

TowerElem TowerElem::scaled(const Rational& c) const {
    if (c.is_zero()) return TowerElem(tower_, Rational(0));
    TowerElem r = *this;
    if (level_ < 0)
        r.base_ = base_.scaled(c);
    else
        for (auto& x : r.coeffs_) x = x.scaled(c);
    return r;
}

TowerElem TowerElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    TowerElem r(tower_, Rational(1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

TowerElem TowerElem::inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    if (level_ < 0) return TowerElem(tower_, base_.inverse());
    UniPoly<TowerElem> a(coeffs_);
    UniPoly<TowerElem> m = tower_->modulus_poly(level_, tower_);
    auto eg = ext_gcd(a, m, coeffs_[0]);
    if (eg.g.degree() > 0) throw ZeroDivisorSplit(tower_, level_, eg.g, exact_poly_div(m, eg.g));
    return from_poly(tower_, level_, eg.s);
}

TowerElem TowerElem::map_base(const std::function<RatFunc(const RatFunc&)>& f) const {
    if (level_ < 0) return TowerElem(tower_, f(base_));
    TowerElem r = *this;
    for (auto& c : r.coeffs_) c = c.map_base(f);
    r.normalize();
    return r;
}

TowerElem TowerElem::rebased(const TowerPtr& t) const {
    if (t == tower_) return *this;
    if (level_ >= static_cast<int>(t->size())) throw DomainError("element does not fit the target tower");
    TowerElem r;
    r.tower_ = t;
    r.level_ = level_;
    r.base_ = base_;
    for (auto& c : coeffs_) r.coeffs_.push_back(c.rebased(t));
    return r;
}

TowerElem TowerElem::substitute_generator(std::size_t lvl, const TowerElem& v) const {
    if (level_ < static_cast<int>(lvl)) return *this;
    if (level_ == static_cast<int>(lvl)) {
        UniPoly<TowerElem> p(coeffs_);
        return p.eval(v);
    }
    TowerElem r;
    r.tower_ = common_tower(tower_, v.tower_);
    r.level_ = level_;
    for (auto& c : coeffs_) r.coeffs_.push_back(c.substitute_generator(lvl, v));
    r.normalize();
    return r;
}

bool operator==(const TowerElem& a, const TowerElem& b) {
    if (a.level_ != b.level_) return false;
    if (a.level_ < 0) return a.base_ == b.base_;
    if (a.tower_ != b.tower_ && a.tower_->level_ptr(a.level_) != b.tower_->level_ptr(b.level_)) return false;
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
    return true;
}

std::string TowerElem::str(const std::vector<std::string>& names) const {
    if (level_ < 0) return base_.str(names);
    const std::string& g = tower_->level(level_).name;
    UniPoly<TowerElem> p(coeffs_);
    return p.str([&](const TowerElem& c) { return c.str(names); }, g);
}

// ---- dynamic evaluation -----------------------------------------------------

ZeroDivisorSplit::ZeroDivisorSplit(TowerPtr t, std::size_t lvl, UniPoly<TowerElem> g, UniPoly<TowerElem> h)
    : DomainError("zero divisor at tower level " + t->level(lvl).name), tower(std::move(t)), level(lvl), factor(std::move(g)),
      cofactor(std::move(h)) {}

namespace {

TowerElem project_into(const TowerElem& e, const TowerPtr& branch, std::size_t split_level) {
    if (e.level() < static_cast<int>(split_level)) return e.rebased(branch);
    UniPoly<TowerElem> p = e.as_poly(e.level());
    std::vector<TowerElem> c;
    for (auto& x : p.coeffs()) c.push_back(project_into(x, branch, split_level));
    return TowerElem::from_poly(branch, e.level(), UniPoly<TowerElem>(c));
}

TowerPtr build_branch(const TowerPtr& t, std::size_t lvl, const UniPoly<TowerElem>& modulus) {
    TowerPtr b = Tower::prefix(t, lvl);
    const Level& L = t->level(lvl);
    b = Tower::adjoin(b, L.name, L.kind, L.degree, modulus, false);
    for (std::size_t i = lvl + 1; i < t->size(); ++i) {
        const Level& U = t->level(i);
        std::vector<TowerElem> c;
        for (auto& x : U.modulus) c.push_back(project_into(x, b, lvl));
        b = Tower::adjoin(b, U.name, U.kind, U.degree, UniPoly<TowerElem>(c), false);
    }
    return b;
}

} // namespace

TowerSplit split_tower(const ZeroDivisorSplit& z) {
    return {build_branch(z.tower, z.level, z.factor), build_branch(z.tower, z.level, z.cofactor), z.level};
}

TowerSplit zero_divisor_split(const TowerPtr& t, const TowerElem& witness) {
    TowerElem w = witness.rebased(t);
    try {
        TowerElem inv = w.inverse();
        throw DomainError("witness is invertible; inverse " + inv.str(element_names(*t)));
    } catch (const ZeroDivisorSplit& z) {
        return split_tower(z);
    }
}

TowerElem project(const TowerElem& e, const TowerPtr& branch) {
    // the split level is the first one whose level object differs
    const TowerPtr& t = e.tower();
    std::size_t lvl = 0;
    while (lvl < t->size() && lvl < branch->size() && t->level_ptr(lvl) == branch->level_ptr(lvl)) ++lvl;
    if (lvl >= t->size()) return e.rebased(branch);
    return project_into(e, branch, lvl);
}

TowerElem crt_merge(const TowerElem& a, const TowerElem& b, const TowerSplit& split, const TowerPtr& original) {
    std::size_t L = split.level;
    if (a.level() > static_cast<int>(L) || b.level() > static_cast<int>(L))
        throw DomainError("crt_merge supports elements up to the split level");
    auto lower = [&](const UniPoly<TowerElem>& p) {
        std::vector<TowerElem> c;
        for (auto& x : p.coeffs()) c.push_back(x.rebased(original));
        return UniPoly<TowerElem>(c);
    };
    UniPoly<TowerElem> g = lower(split.first->modulus_poly(L, split.first));
    UniPoly<TowerElem> h = lower(split.second->modulus_poly(L, split.second));
    UniPoly<TowerElem> pa = lower(a.as_poly(L)), pb = lower(b.as_poly(L));
    TowerElem one(original, Rational(1));
    auto eg = ext_gcd(g, h, one);  // s g + t h = 1
    // e = pa + g * ((pb - pa) * s mod h)
    UniPoly<TowerElem> u = ((pb - pa) * eg.s) % h;
    UniPoly<TowerElem> e = pa + g * u;
    return TowerElem::from_poly(original, L, e);
}

} // namespace monoval
