// Truncated series graded by a monomial valuation: a finite list of homogeneous
// layers with increasing degree, known modulo terms of valuation >= precision.
#pragma once
#include "monoval/tower.hpp"
#include "monoval/weights.hpp"
#include <map>
#include <optional>

namespace monoval {

struct Layer {
    GradeValue degree;
    TowerElem value;
};

// homogeneous components of a field element, keyed structurally
std::map<GradeValue, TowerElem> homogeneous_split(const TowerElem& e, const Weights& w);
// degree of a homogeneous element; throws if e is zero or not homogeneous
GradeValue homogeneous_degree(const TowerElem& e, const Weights& w);

class Series {
public:
    using Precision = std::optional<GradeValue>;  // nullopt: exact

    Series() = default;
    Series(WeightsPtr w, TowerPtr t, Precision p = std::nullopt);
    static Series constant(WeightsPtr w, const TowerElem& c, Precision p = std::nullopt);
    static Series from_elem(WeightsPtr w, const TowerElem& e, Precision p = std::nullopt);
    static Series from_sparse(WeightsPtr w, const TowerPtr& t, const SparsePoly& s, Precision p = std::nullopt);
    // layers need not be sorted; zero layers and layers at or above p are dropped
    static Series from_layers(WeightsPtr w, TowerPtr t, std::vector<Layer> layers, Precision p);

    const WeightsPtr& weights() const { return w_; }
    const TowerPtr& tower() const { return tower_; }
    const std::vector<Layer>& layers() const { return layers_; }
    const Precision& precision() const { return prec_; }
    bool exact() const { return !prec_; }
    bool is_zero() const { return layers_.empty(); }  // zero modulo precision

    std::optional<GradeValue> valuation() const;
    Precision valuation_lower_bound() const;  // valuation, or precision when no layers
    const TowerElem& initial_form() const;
    TowerElem layer(const GradeValue& d) const;
    std::vector<GradeValue> support() const;
    TowerElem sum() const;

    Series truncated(const Precision& p) const;
    Series with_tower(const TowerPtr& t) const;
    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator-() const;
    Series operator*(const Series& o) const;
    // multiply by a homogeneous element c of degree d
    Series scaled(const TowerElem& c, const GradeValue& d) const;
    Series scaled(const Rational& c) const;
    Series map_layers(const std::function<TowerElem(const TowerElem&)>& f) const;  // degree-preserving maps

    // true if every layer is homogeneous of its key degree
    bool layers_homogeneous() const;

    std::string str() const;

private:
    WeightsPtr w_;
    TowerPtr tower_;
    std::vector<Layer> layers_;
    Precision prec_;
};

Series::Precision min_precision(const Weights& w, const Series::Precision& a, const Series::Precision& b);
Series::Precision add_precision(const Series::Precision& a, const GradeValue& d);

// f * result == 1 modulo target; f must have valuation 0 with invertible initial form
Series invert_unit(const Series& f, const GradeValue& target);
// g * result == f modulo target
Series divide(const Series& f, const Series& g, const GradeValue& target);

// all sums of generators strictly below bound, sorted increasingly, including 0
std::vector<GradeValue> semigroup_elements(const std::vector<GradeValue>& generators, const GradeValue& bound, const Weights& w,
                                           std::size_t limit = 200000);
bool semigroup_membership(const GradeValue& value, const std::vector<GradeValue>& generators, const Weights& w);

} // namespace monoval
