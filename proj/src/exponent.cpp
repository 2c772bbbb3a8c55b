#include "monoval/exponent.hpp"
#include "monoval/error.hpp"
#include <numeric>

namespace monoval {

namespace {

std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw Unsupported("exponent overflow");
    return static_cast<std::int64_t>(v);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    return narrow(static_cast<__int128>(a / std::gcd(a, b)) * b);
}

} // namespace

Exponent::Exponent(std::vector<std::int64_t> num, std::int64_t den) : num_(std::move(num)), den_(den) {
    if (den_ == 0) throw DomainError("zero exponent denominator");
    normalize();
}

Exponent Exponent::unit(std::size_t n, std::size_t i) {
    Exponent e(n);
    e.num_[i] = 1;
    return e;
}

Exponent Exponent::from_rationals(const std::vector<Rational>& r) {
    mpz_class d = 1;
    for (auto& x : r) d = lcm(d, x.den());
    if (!d.fits_slong_p()) throw Unsupported("exponent overflow");
    std::vector<std::int64_t> num;
    for (auto& x : r) {
        mpz_class v = x.num() * (d / x.den());
        if (!v.fits_slong_p()) throw Unsupported("exponent overflow");
        num.push_back(v.get_si());
    }
    return Exponent(std::move(num), d.get_si());
}

void Exponent::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& v : num_) v = -v;
    }
    std::int64_t g = den_;
    for (auto v : num_) g = std::gcd(g, v);
    if (g > 1) {
        den_ /= g;
        for (auto& v : num_) v /= g;
    }
}

bool Exponent::is_zero() const {
    for (auto v : num_)
        if (v) return false;
    return true;
}

bool Exponent::nonnegative() const {
    for (auto v : num_)
        if (v < 0) return false;
    return true;
}

Exponent Exponent::operator+(const Exponent& o) const {
    if (size() != o.size()) throw DomainError("exponent length mismatch");
    if (den_ == o.den_) {
        std::vector<std::int64_t> r(size());
        for (std::size_t i = 0; i < size(); ++i) r[i] = narrow(static_cast<__int128>(num_[i]) + o.num_[i]);
        return Exponent(std::move(r), den_);
    }
    std::int64_t l = lcm64(den_, o.den_);
    std::int64_t a = l / den_, b = l / o.den_;
    std::vector<std::int64_t> r(size());
    for (std::size_t i = 0; i < size(); ++i)
        r[i] = narrow(static_cast<__int128>(num_[i]) * a + static_cast<__int128>(o.num_[i]) * b);
    return Exponent(std::move(r), l);
}

Exponent Exponent::operator-() const {
    Exponent r = *this;
    for (auto& v : r.num_) v = -v;
    return r;
}

Exponent Exponent::operator-(const Exponent& o) const { return *this + (-o); }

Exponent Exponent::scaled(const Rational& r) const {
    if (!r.num().fits_slong_p() || !r.den().fits_slong_p()) throw Unsupported("exponent overflow");
    std::int64_t p = r.num().get_si(), q = r.den().get_si();
    std::vector<std::int64_t> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[i] = narrow(static_cast<__int128>(num_[i]) * p);
    return Exponent(std::move(v), narrow(static_cast<__int128>(den_) * q));
}

Exponent Exponent::meet(const Exponent& a, const Exponent& b) {
    std::vector<Rational> r;
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(min(a[i], b[i]));
    return from_rationals(r);
}

Exponent Exponent::join(const Exponent& a, const Exponent& b) {
    std::vector<Rational> r;
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(max(a[i], b[i]));
    return from_rationals(r);
}

std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    if (a.den_ == b.den_) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a.num_[i] != b.num_[i]) return a.num_[i] <=> b.num_[i];
        return a.size() <=> b.size();
    }
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        __int128 l = static_cast<__int128>(a.num_[i]) * b.den_, r = static_cast<__int128>(b.num_[i]) * a.den_;
        if (l != r) return l < r ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.size() <=> b.size();
}

} // namespace monoval
