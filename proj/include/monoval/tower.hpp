// Triangular extension towers over Q(x1..xn). Each level adjoins a root of a monic
// polynomial over the field below. Inversion follows dynamic evaluation: when a
// level's modulus turns out to share a factor with the element, the splitting
// data is thrown as ZeroDivisorSplit and callers may branch.
#pragma once
#include "monoval/ratfunc.hpp"
#include "monoval/unipoly.hpp"
#include "monoval/weights.hpp"
#include <memory>
#include <string>
#include <vector>

namespace monoval {

enum class LevelKind { number_field, residue, homogeneous };
std::string to_string(LevelKind k);

class TowerElem;
class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

struct Level {
    std::string name;
    LevelKind kind;
    GradeValue degree;                 // valuation degree of the generator
    std::vector<TowerElem> modulus;    // monic, lowest first, coefficients in the levels below
};
using LevelPtr = std::shared_ptr<const Level>;

class Tower {
public:
    static TowerPtr base(std::size_t nvars);
    // new tower with one more level; the modulus must be monic and squarefree over t
    static TowerPtr adjoin(const TowerPtr& t, std::string name, LevelKind kind, GradeValue degree,
                           const UniPoly<TowerElem>& modulus, bool check_squarefree = true);
    // tower equal to t up to level i (exclusive)
    static TowerPtr prefix(const TowerPtr& t, std::size_t i);

    std::size_t nvars() const { return nvars_; }
    std::size_t size() const { return levels_.size(); }
    const Level& level(std::size_t i) const { return *levels_.at(i); }
    const LevelPtr& level_ptr(std::size_t i) const { return levels_.at(i); }
    int find(const std::string& name) const;  // -1 if absent
    bool extends(const Tower& other) const;   // other is a prefix of this
    UniPoly<TowerElem> modulus_poly(std::size_t i, const TowerPtr& self) const;

private:
    std::size_t nvars_ = 0;
    std::vector<LevelPtr> levels_;
};

class TowerElem {
public:
    TowerElem() = default;
    TowerElem(TowerPtr t, RatFunc r);
    TowerElem(TowerPtr t, const Rational& c);
    static TowerElem generator(const TowerPtr& t, std::size_t level);
    // sum c_j g^j for the generator of `level`, coefficients at lower levels
    static TowerElem from_poly(const TowerPtr& t, std::size_t level, const UniPoly<TowerElem>& p);

    const TowerPtr& tower() const { return tower_; }
    std::size_t nvars() const { return tower_->nvars(); }
    int level() const { return level_; }  // -1 for base field elements
    const RatFunc& base() const { return base_; }
    const std::vector<TowerElem>& coeffs() const { return coeffs_; }
    // representation as polynomial in the generator of `lvl` (>= level())
    UniPoly<TowerElem> as_poly(std::size_t lvl) const;

    bool is_zero() const { return level_ < 0 && base_.is_zero(); }
    bool is_one() const { return level_ < 0 && base_.is_one(); }
    std::optional<Rational> rational_value() const;
    // uses only levels of degree-0 kinds and base coefficients without x
    bool is_constant() const;

    TowerElem operator+(const TowerElem& o) const;
    TowerElem operator-(const TowerElem& o) const;
    TowerElem operator*(const TowerElem& o) const;
    TowerElem operator/(const TowerElem& o) const { return *this * o.inverse(); }
    TowerElem operator-() const;
    TowerElem& operator+=(const TowerElem& o) { return *this = *this + o; }
    TowerElem& operator-=(const TowerElem& o) { return *this = *this - o; }
    TowerElem& operator*=(const TowerElem& o) { return *this = *this * o; }
    TowerElem scaled(const Rational& c) const;
    TowerElem pow(long e) const;
    TowerElem inverse() const;  // may throw ZeroDivisorSplit

    // apply f to every base coefficient
    TowerElem map_base(const std::function<RatFunc(const RatFunc&)>& f) const;
    // same element re-expressed over a tower with the same level structure (or an extension)
    TowerElem rebased(const TowerPtr& t) const;
    // replace the generator of `lvl` by v, keeping other generators
    TowerElem substitute_generator(std::size_t lvl, const TowerElem& v) const;

    friend bool operator==(const TowerElem& a, const TowerElem& b);

    std::string str(const std::vector<std::string>& var_names) const;

private:
    friend class Tower;
    void normalize();
    TowerPtr tower_;
    int level_ = -1;
    RatFunc base_;
    std::vector<TowerElem> coeffs_;
};

inline bool is_zero(const TowerElem& a) { return a.is_zero(); }
inline TowerElem zero_like(const TowerElem& a) { return TowerElem(a.tower(), Rational(0)); }
inline TowerElem one_like(const TowerElem& a) { return TowerElem(a.tower(), Rational(1)); }
inline TowerElem from_rational_like(const TowerElem& a, const Rational& r) { return TowerElem(a.tower(), r); }
inline TowerElem inverse(const TowerElem& a) { return a.inverse(); }
inline TowerElem exact_quotient(const TowerElem& a, const TowerElem& b) { return a / b; }

// thrown when inversion meets a nontrivial factor of some level's modulus
struct ZeroDivisorSplit : DomainError {
    TowerPtr tower;
    std::size_t level;
    UniPoly<TowerElem> factor, cofactor;  // modulus = factor * cofactor, both monic and nonconstant
    ZeroDivisorSplit(TowerPtr t, std::size_t lvl, UniPoly<TowerElem> g, UniPoly<TowerElem> h);
};

struct TowerSplit {
    TowerPtr first, second;  // modulus of the split level replaced by factor / cofactor
    std::size_t level;
};

// split at the level where inverting `witness` fails
TowerSplit zero_divisor_split(const TowerPtr& t, const TowerElem& witness);
TowerSplit split_tower(const ZeroDivisorSplit& z);
// image of e in a branch produced by split_tower
TowerElem project(const TowerElem& e, const TowerPtr& branch);
// Chinese remainder merge of images in the two branches of a split at split.level;
// elements must not involve levels above the split level
TowerElem crt_merge(const TowerElem& a, const TowerElem& b, const TowerSplit& split, const TowerPtr& original);

// names for printing: variables followed by generator names
std::vector<std::string> element_names(const Tower& t);

} // namespace monoval
