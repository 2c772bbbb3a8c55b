#include "monoval/ratfunc.hpp"
#include "monoval/error.hpp"

namespace monoval {

SparsePoly exact_quotient(const SparsePoly& a, const SparsePoly& b) {
    auto q = SparsePoly::exact_div(a, b);
    if (!q) throw DomainError("inexact polynomial division");
    return *q;
}

RatFunc::RatFunc(SparsePoly num) : num_(std::move(num)), den_(num_.nvars(), Rational(1)) {}

RatFunc::RatFunc(SparsePoly num, SparsePoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("division by zero");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = SparsePoly(num_.nvars(), Rational(1));
        return;
    }
    if (den_.is_one()) return;
    Exponent m = den_.min_exponent();
    if (!m.is_zero()) {
        den_ = den_.shifted(-m);
        num_ = num_.shifted(-m);
    }
    Rational lc = den_.lead_coefficient();
    if (!lc.is_one()) {
        den_ *= lc.inverse();
        num_ *= lc.inverse();
    }
    if (den_.is_constant()) {
        den_ = SparsePoly(num_.nvars(), Rational(1));
        return;
    }
    if (auto q = SparsePoly::exact_div(num_, den_)) {
        num_ = std::move(*q);
        den_ = SparsePoly(num_.nvars(), Rational(1));
    }
}

std::optional<Rational> RatFunc::constant_value() const {
    if (has_denominator()) return std::nullopt;
    return num_.constant_value();
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    RatFunc r;
    if (den_ == o.den_) {
        r.num_ = num_ + o.num_;
        r.den_ = den_;
    } else if (!den_.is_one() && o.den_.is_one()) {
        r.num_ = num_ + o.num_ * den_;
        r.den_ = den_;
    } else if (den_.is_one()) {
        r.num_ = num_ * o.den_ + o.num_;
        r.den_ = o.den_;
    } else if (auto k = SparsePoly::exact_div(o.den_, den_)) {
        r.num_ = num_ * *k + o.num_;
        r.den_ = o.den_;
    } else if (auto k2 = SparsePoly::exact_div(den_, o.den_)) {
        r.num_ = num_ + o.num_ * *k2;
        r.den_ = den_;
    } else {
        r.num_ = num_ * o.den_ + o.num_ * den_;
        r.den_ = den_ * o.den_;
    }
    r.normalize();
    return r;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc(nvars());
    if (!has_denominator() && !o.has_denominator()) return RatFunc(num_ * o.num_);
    SparsePoly an = num_, ad = den_, bn = o.num_, bd = o.den_;
    if (!bd.is_one())
        if (auto q = SparsePoly::exact_div(an, bd)) {
            an = std::move(*q);
            bd = SparsePoly(nvars(), Rational(1));
        }
    if (!ad.is_one())
        if (auto q = SparsePoly::exact_div(bn, ad)) {
            bn = std::move(*q);
            ad = SparsePoly(nvars(), Rational(1));
        }
    RatFunc r;
    r.num_ = an * bn;
    r.den_ = ad * bd;
    r.normalize();
    return r;
}

RatFunc RatFunc::scaled(const Rational& c) const {
    RatFunc r = *this;
    r.num_ *= c;
    if (c.is_zero()) r.den_ = SparsePoly(nvars(), Rational(1));
    return r;
}

RatFunc RatFunc::shifted(const Exponent& e) const {
    RatFunc r = *this;
    r.num_ = r.num_.shifted(e);
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r(nvars(), Rational(1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RatFunc::str(const std::vector<std::string>& names) const {
    std::string n = num_.str(names);
    if (!has_denominator()) return n;
    if (num_.size() > 1) n = "(" + n + ")";
    return n + "/(" + den_.str(names) + ")";
}

} // namespace monoval
