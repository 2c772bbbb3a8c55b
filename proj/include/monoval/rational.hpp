#pragma once
#include <gmpxx.h>
#include <compare>
#include <string>
#include <string_view>

namespace monoval {

class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(long n, long d);
    explicit Rational(const mpz_class& z) : v_(z) {}
    Rational(const mpz_class& n, const mpz_class& d);
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    // "p", "p/q" or a decimal like "-1.414"
    static Rational parse(std::string_view s);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational inverse() const;
    Rational pow(long e) const;
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    mpz_class floor() const;
    mpz_class ceil() const;
    double to_double() const { return v_.get_d(); }
    long to_long() const;  // throws unless a small integer
    std::string str() const { return v_.get_str(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

private:
    mpq_class v_;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

mpz_class lcm(const mpz_class& a, const mpz_class& b);

inline bool is_zero(const Rational& a) { return a.is_zero(); }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational from_rational_like(const Rational&, const Rational& r) { return r; }
inline Rational inverse(const Rational& a) { return a.inverse(); }
inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }


} // namespace monoval
