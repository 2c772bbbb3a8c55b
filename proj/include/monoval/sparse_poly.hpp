#pragma once
#include "monoval/exponent.hpp"
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace monoval {

// Sparse Laurent-Puiseux polynomial over Q in a fixed number of variables.
class SparsePoly {
public:
    using Terms = std::map<Exponent, Rational>;

    SparsePoly() = default;
    explicit SparsePoly(std::size_t nvars) : n_(nvars) {}
    SparsePoly(std::size_t nvars, const Rational& c);
    static SparsePoly monomial(const Exponent& e, const Rational& c = Rational(1));
    static SparsePoly variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const { return n_; }
    const Terms& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    std::optional<Rational> constant_value() const;
    Rational coefficient(const Exponent& e) const;
    Rational constant_term() const;

    // lexicographically greatest term
    const Exponent& lead_exponent() const { return t_.rbegin()->first; }
    const Rational& lead_coefficient() const { return t_.rbegin()->second; }

    // componentwise minimum exponent over all terms
    Exponent min_exponent() const;
    bool is_polynomial() const;  // integral nonnegative exponents

    void add_term(const Exponent& e, const Rational& c);
    SparsePoly& operator+=(const SparsePoly& o);
    SparsePoly& operator-=(const SparsePoly& o);
    SparsePoly& operator*=(const Rational& c);
    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(SparsePoly a, const Rational& c) { return a *= c; }
    SparsePoly operator-() const;
    SparsePoly pow(unsigned e) const;
    SparsePoly shifted(const Exponent& e) const;  // multiply by x^e
    SparsePoly mapped(const std::function<std::optional<Exponent>(const Exponent&)>& f) const;

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

    // exact quotient a/b if b divides a in the Laurent-Puiseux ring, else nullopt
    static std::optional<SparsePoly> exact_div(const SparsePoly& a, const SparsePoly& b);

    // names[i] for variable i; terms printed highest first
    std::string str(const std::vector<std::string>& names) const;

private:
    std::size_t n_ = 0;
    Terms t_;
};

std::string format_monomial(const Exponent& e, const std::vector<std::string>& names);
std::vector<std::string> default_names(std::size_t n, bool with_z = false);

inline bool is_zero(const SparsePoly& a) { return a.is_zero(); }
inline SparsePoly zero_like(const SparsePoly& a) { return SparsePoly(a.nvars()); }
inline SparsePoly one_like(const SparsePoly& a) { return SparsePoly(a.nvars(), Rational(1)); }
inline SparsePoly from_rational_like(const SparsePoly& a, const Rational& r) { return SparsePoly(a.nvars(), r); }
SparsePoly exact_quotient(const SparsePoly& a, const SparsePoly& b);  // throws if not exact


} // namespace monoval
