#pragma once
#include "monoval/exponent.hpp"
#include "monoval/sparse_poly.hpp"
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace monoval {

// A value of the group generated by the weights, as rational coordinates over the
// weight basis. Coordinate 0 always belongs to the basis element 1.
struct GradeValue {
    std::vector<Rational> c;

    GradeValue() = default;
    explicit GradeValue(std::size_t m) : c(m) {}
    explicit GradeValue(std::vector<Rational> v) : c(std::move(v)) {}

    std::size_t size() const { return c.size(); }
    bool is_zero() const;
    bool is_rational() const;  // only the coordinate of 1 is nonzero

    GradeValue operator+(const GradeValue& o) const;
    GradeValue operator-(const GradeValue& o) const;
    GradeValue operator-() const;
    GradeValue operator*(const Rational& r) const;
    GradeValue operator/(const Rational& r) const { return *this * r.inverse(); }
    GradeValue& operator+=(const GradeValue& o) { return *this = *this + o; }

    friend bool operator==(const GradeValue& a, const GradeValue& b) = default;
    // structural order for use as a map key; not the valuation order
    friend bool operator<(const GradeValue& a, const GradeValue& b) { return a.c < b.c; }
};

struct BasisSymbol {
    std::string name;
    Rational lo, hi;                   // open or degenerate enclosure lo <= value <= hi
    std::vector<Rational> defining;    // polynomial with a simple root in [lo,hi], lowest first; may be empty
};

class Weights {
public:
    // basis[0] must be the exact symbol "1"; rows are the weights as basis coordinates
    Weights(std::vector<BasisSymbol> basis, std::vector<GradeValue> rows);
    static std::shared_ptr<const Weights> rational(const std::vector<Rational>& alpha);
    static std::shared_ptr<const Weights> ones(std::size_t n);

    std::size_t nvars() const { return rows_.size(); }
    std::size_t basis_size() const { return basis_.size(); }
    const std::vector<BasisSymbol>& basis() const { return basis_; }
    const GradeValue& weight(std::size_t i) const { return rows_.at(i); }
    const std::vector<GradeValue>& rows() const { return rows_; }
    bool all_rational() const;
    std::size_t value_rank() const { return rank_; }  // N = dim of the value group over Q

    GradeValue zero() const { return GradeValue(basis_.size()); }
    GradeValue constant(const Rational& r) const;
    GradeValue degree(const Exponent& e) const;

    int compare(const GradeValue& a, const GradeValue& b) const;
    int sign(const GradeValue& a) const;
    bool less(const GradeValue& a, const GradeValue& b) const { return compare(a, b) < 0; }
    bool leq(const GradeValue& a, const GradeValue& b) const { return compare(a, b) <= 0; }
    const GradeValue& min(const GradeValue& a, const GradeValue& b) const { return less(b, a) ? b : a; }
    const GradeValue& max(const GradeValue& a, const GradeValue& b) const { return less(a, b) ? b : a; }

    // rational enclosure of a value, symbols refined to width about 2^-bits
    std::pair<Rational, Rational> enclose(const GradeValue& a, int bits = 64) const;
    double approx(const GradeValue& a) const;

    std::string format(const GradeValue& a) const;
    std::string describe() const;

    friend bool operator==(const Weights& a, const Weights& b);

private:
    std::vector<BasisSymbol> basis_;
    std::vector<std::pair<Rational, Rational>> cache_;  // enclosures at construction-time width
    std::vector<GradeValue> rows_;
    std::size_t rank_ = 0;
};

using WeightsPtr = std::shared_ptr<const Weights>;

// "1,2", "1, sqrt2" or "sqrt2: [1.414,1.415]; sqrt3: [1.732,1.733]; a1 = b1; a2 = b2; a3 = 13*b1 + b2"
WeightsPtr parse_weights(const std::string& text);

// integer-primitive basis of {r : sum r_i alpha_i = 0}
std::vector<std::vector<Rational>> kernel_relations(const Weights& w);

// rank and reduced row echelon form over Q (helpers shared with geometry)
std::size_t rational_rank(std::vector<std::vector<Rational>> m);
std::vector<std::vector<Rational>> nullspace(const std::vector<std::vector<Rational>>& m, std::size_t cols);

struct RelApproximation {
    long q = 0;
    std::vector<mpz_class> alpha;     // integer weights
    Rational max_displacement;        // upper bound of max_i |q - alpha'_i/alpha_i|, certified
    std::size_t candidates = 0;
};

// q == 0 selects the smallest q >= 1 that admits a certified approximation
RelApproximation rel_approx(const Weights& w, long q, const Rational& eps, std::size_t budget = 1000000);

struct TransferBounds {
    GradeValue degree;      // nu_alpha(p)
    Rational degree_prime;  // nu_alpha'(p)
    Rational lower, upper;  // certified rational bounds: lower <= q(1-eps) nu_alpha, q(1+eps) nu_alpha <= upper
    bool holds = false;
};

TransferBounds homogeneity_transfer_check(const SparsePoly& p, const Weights& w, const RelApproximation& approx,
                                          const Rational& eps);

} // namespace monoval
