// Homogeneous elements: roots of monic polynomials whose k-th coefficient is
// homogeneous of degree d*k, with the resultant calculus that combines them.
#pragma once
#include "monoval/series.hpp"
#include <cstdint>

namespace monoval {

using RPoly = UniPoly<RatFunc>;

struct HomogeneousElement {
    std::string name;
    GradeValue degree;
    RPoly minpoly;  // monic over Q(x); annihilating, minimal when certified
    bool integral = false;
    bool minimality_certified = false;

    std::string display(std::size_t branch = 0) const;  // g1 := root(Z^2 - x1*x2, branch 0)
};

std::string format_rpoly(const RPoly& p, std::size_t nvars);
RPoly parse_rpoly(const std::string& text, std::size_t nvars);

// true if r is homogeneous; sets deg (zero counts as homogeneous of any degree)
bool is_homogeneous(const RatFunc& r, const Weights& w, GradeValue* deg = nullptr);

HomogeneousElement validate(const std::string& name, const RPoly& minpoly, const GradeValue& d, const Weights& w);

struct MonomialForm {
    TowerPtr tower;   // Q or Q(c)
    TowerElem c;      // algebraic constant
    Exponent beta;    // gamma = c x^beta
    bool integral = false;
};
MonomialForm monomial_normal_form(const HomogeneousElement& g, const Weights& w);

HomogeneousElement combine_power(const HomogeneousElement& g, int k, const Weights& w);
HomogeneousElement combine_sum(const HomogeneousElement& a, int ea, const HomogeneousElement& b, int eb, const Weights& w);
HomogeneousElement combine_product(const HomogeneousElement& a, const HomogeneousElement& b, const Weights& w);

struct Integralized {
    HomogeneousElement element;  // h * gamma
    RatFunc multiplier;          // h
};
Integralized integralize(const HomogeneousElement& g, const Weights& w);

struct HomTower {
    std::vector<HomogeneousElement> elements;
    std::vector<int> degrees;  // degree of each annihilating polynomial
    std::vector<std::string> log;  // what the compression did, for reports
};

// reduce to at most N positive-degree elements following the primitive element construction
// throws Unsupported when a merged generator would exceed max_degree
HomTower tower_compress(const std::vector<HomogeneousElement>& elems, const Weights& w, std::uint64_t seed,
                        int max_retries = 16, int max_degree = 36);

} // namespace monoval
