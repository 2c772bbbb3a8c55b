#pragma once
#include "monoval/sparse_poly.hpp"

namespace monoval {

// Quotient num/den of sparse polynomials. Monomial factors of the denominator are
// moved into the numerator as negative exponents; den is a polynomial without
// monomial content whose lexicographically leading coefficient is 1.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(std::size_t nvars) : num_(nvars), den_(nvars, Rational(1)) {}
    RatFunc(std::size_t nvars, const Rational& c) : num_(nvars, c), den_(nvars, Rational(1)) {}
    RatFunc(SparsePoly num);
    RatFunc(SparsePoly num, SparsePoly den);

    std::size_t nvars() const { return num_.nvars(); }
    const SparsePoly& num() const { return num_; }
    const SparsePoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }
    bool has_denominator() const { return !den_.is_one(); }
    std::optional<Rational> constant_value() const;

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const { return *this * o.inverse(); }
    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc scaled(const Rational& c) const;
    RatFunc shifted(const Exponent& e) const;
    RatFunc inverse() const;
    RatFunc pow(long e) const;

    friend bool operator==(const RatFunc& a, const RatFunc& b);

    std::string str(const std::vector<std::string>& names) const;

private:
    void normalize();
    SparsePoly num_, den_;
};

// generic field hooks used by UniPoly
inline bool is_zero(const RatFunc& a) { return a.is_zero(); }
inline RatFunc zero_like(const RatFunc& a) { return RatFunc(a.nvars()); }
inline RatFunc one_like(const RatFunc& a) { return RatFunc(a.nvars(), Rational(1)); }
inline RatFunc from_rational_like(const RatFunc& a, const Rational& r) { return RatFunc(a.nvars(), r); }
inline RatFunc inverse(const RatFunc& a) { return a.inverse(); }
inline RatFunc exact_quotient(const RatFunc& a, const RatFunc& b) { return a / b; }

SparsePoly exact_quotient(const SparsePoly& a, const SparsePoly& b);  // throws if not exact

} // namespace monoval
