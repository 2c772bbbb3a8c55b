#include "monoval/sparse_poly.hpp"
#include "monoval/error.hpp"
#include <sstream>

namespace monoval {

SparsePoly::SparsePoly(std::size_t nvars, const Rational& c) : n_(nvars) {
    if (!c.is_zero()) t_.emplace(Exponent(nvars), c);
}

SparsePoly SparsePoly::monomial(const Exponent& e, const Rational& c) {
    SparsePoly p(e.size());
    if (!c.is_zero()) p.t_.emplace(e, c);
    return p;
}

SparsePoly SparsePoly::variable(std::size_t nvars, std::size_t i) { return monomial(Exponent::unit(nvars, i)); }

bool SparsePoly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_zero()); }

bool SparsePoly::is_one() const { return t_.size() == 1 && t_.begin()->first.is_zero() && t_.begin()->second.is_one(); }

std::optional<Rational> SparsePoly::constant_value() const {
    if (t_.empty()) return Rational(0);
    if (is_constant()) return t_.begin()->second;
    return std::nullopt;
}

Rational SparsePoly::coefficient(const Exponent& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rational(0) : it->second;
}

Rational SparsePoly::constant_term() const { return coefficient(Exponent(n_)); }

Exponent SparsePoly::min_exponent() const {
    if (t_.empty()) return Exponent(n_);
    Exponent m = t_.begin()->first;
    for (auto& [e, c] : t_) m = Exponent::meet(m, e);
    return m;
}

bool SparsePoly::is_polynomial() const {
    for (auto& [e, c] : t_)
        if (!e.integral() || !e.nonnegative()) return false;
    return true;
}

void SparsePoly::add_term(const Exponent& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
    if (n_ != o.n_) throw DomainError("variable count mismatch");
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
    if (n_ != o.n_) throw DomainError("variable count mismatch");
    for (auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [e, v] : t_) v *= c;
    return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.n_ != b.n_) throw DomainError("variable count mismatch");
    SparsePoly r(a.n_);
    for (auto& [ea, ca] : a.t_)
        for (auto& [eb, cb] : b.t_) r.add_term(ea + eb, ca * cb);
    return r;
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly r = *this;
    for (auto& [e, v] : r.t_) v = -v;
    return r;
}

SparsePoly SparsePoly::pow(unsigned e) const {
    SparsePoly r(n_, Rational(1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

SparsePoly SparsePoly::shifted(const Exponent& s) const {
    SparsePoly r(n_);
    for (auto& [e, c] : t_) r.t_.emplace(e + s, c);
    return r;
}

SparsePoly SparsePoly::mapped(const std::function<std::optional<Exponent>(const Exponent&)>& f) const {
    SparsePoly r(n_);
    for (auto& [e, c] : t_) {
        auto m = f(e);
        if (m) {
            r.n_ = m->size();
            r.add_term(*m, c);
        }
    }
    return r;
}

std::optional<SparsePoly> SparsePoly::exact_div(const SparsePoly& a, const SparsePoly& b) {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    if (a.is_zero()) return SparsePoly(a.n_);
    if (b.t_.size() == 1) {
        auto& [e, c] = *b.t_.begin();
        SparsePoly r = a.shifted(-e);
        r *= c.inverse();
        return r;
    }
    Exponent ma = a.min_exponent(), mb = b.min_exponent();
    SparsePoly r = a.shifted(-ma), d = b.shifted(-mb);
    const Exponent& ld = d.lead_exponent();
    Rational lc_inv = d.lead_coefficient().inverse();
    SparsePoly q(a.n_);
    while (!r.is_zero()) {
        Exponent qe = r.lead_exponent() - ld;
        if (!qe.nonnegative()) return std::nullopt;
        Rational qc = r.lead_coefficient() * lc_inv;
        q.t_.emplace(qe, qc);
        for (auto& [e, c] : d.t_) r.add_term(e + qe, -(c * qc));
    }
    return q.shifted(ma - mb);
}

std::string format_monomial(const Exponent& e, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        Rational v = e[i];
        if (v.is_zero()) continue;
        if (!s.empty()) s += "*";
        s += names.at(i);
        if (v.is_one()) continue;
        if (v.is_integer() && v.sign() > 0)
            s += "^" + v.str();
        else
            s += "^(" + v.str() + ")";
    }
    return s;
}

std::string SparsePoly::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string m = format_monomial(e, names);
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        if (m.empty())
            os << a.str();
        else if (a.is_one())
            os << m;
        else
            os << a.str() << "*" << m;
    }
    return os.str();
}

std::vector<std::string> default_names(std::size_t n, bool with_z) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i + 1));
    if (with_z) v.push_back("Z");
    return v;
}

} // namespace monoval
