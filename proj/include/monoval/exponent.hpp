#pragma once
#include "monoval/rational.hpp"
#include <cstdint>
#include <vector>

namespace monoval {

// Rational exponent vector stored as integer numerators over one common denominator.
// Always normalized: den >= 1 and gcd(num..., den) == 1.
class Exponent {
public:
    Exponent() = default;
    explicit Exponent(std::size_t n) : num_(n, 0) {}
    Exponent(std::vector<std::int64_t> num, std::int64_t den = 1);
    static Exponent unit(std::size_t n, std::size_t i);
    static Exponent from_rationals(const std::vector<Rational>& r);

    std::size_t size() const { return num_.size(); }
    Rational operator[](std::size_t i) const { return Rational(static_cast<long>(num_[i]), static_cast<long>(den_)); }
    const std::vector<std::int64_t>& numerators() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const;
    bool nonnegative() const;
    bool integral() const { return den_ == 1; }

    Exponent operator+(const Exponent& o) const;
    Exponent operator-(const Exponent& o) const;
    Exponent operator-() const;
    Exponent scaled(const Rational& r) const;
    Exponent scaled(std::int64_t k) const { return scaled(Rational(static_cast<long>(k))); }

    // componentwise min / max
    static Exponent meet(const Exponent& a, const Exponent& b);
    static Exponent join(const Exponent& a, const Exponent& b);

    // lexicographic by value
    friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b);
    friend bool operator==(const Exponent& a, const Exponent& b) { return a.den_ == b.den_ && a.num_ == b.num_; }

private:
    void normalize();
    std::vector<std::int64_t> num_;
    std::int64_t den_ = 1;
};

} // namespace monoval
