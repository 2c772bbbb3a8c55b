// Newton polygons for a monomial valuation, quasi-ordinary and weighted
// discriminant tests, denominators of roots and cones containing their supports.
#pragma once
#include "monoval/solver.hpp"

namespace monoval {

struct NewtonPolygon {
    struct Point {
        int index;  // i for the coefficient of Z^(d-i); the leading 1 sits at (0, 0)
        GradeValue value;
    };
    struct Edge {
        GradeValue slope;  // valuation of the roots on this edge
        int length;        // how many roots
    };
    std::vector<Point> points;
    std::vector<std::size_t> vertices;  // indices into points
    std::vector<Edge> edges;
};

NewtonPolygon newton_polygon(const MonicPoly& p);
std::string polygon_svg(const NewtonPolygon& np, const Weights& w);

struct EdgeTest {
    bool consistent = false;              // one edge: irreducibility not excluded
    std::vector<GradeValue> slopes;
    std::vector<MonicPoly> factors;       // one per edge when reducible
};
EdgeTest single_edge_test(const MonicPoly& p, const GradeValue& target, const SolveOptions& opt = {});

struct QuasiOrdinary {
    bool yes = false;
    Exponent monomial;                    // discriminant = x^monomial * unit
    Series unit;
    std::string obstruction;
    Series::Precision precision;
};
QuasiOrdinary quasi_ordinary_test(const MonicPoly& p);

struct AjRoots {
    std::vector<PuiseuxRoot> roots;
    std::int64_t q = 1;                   // every exponent lies in (1/q) Z_{>=0}^n
};
// expansions run to at least the degree of the discriminant monomial, so q is the minimal one
AjRoots aj_roots(const MonicPoly& p, const GradeValue& target, const SolveOptions& opt = {});

struct WeightedDisc {
    bool yes = false;
    SparsePoly delta;                     // lowest layer of the discriminant
    Series unit;                          // discriminant / delta when it is a unit
    std::string reason;
    Series::Precision precision;
};
WeightedDisc weighted_disc_check(const MonicPoly& p);

struct DenominatorBound {
    bool found = false;
    SparsePoly c;
    std::string source;                   // which candidate family succeeded
    std::string report;
};
DenominatorBound bounded_denominator_check(const std::vector<PuiseuxRoot>& roots, const Weights& w);

struct ConeSpec {
    std::vector<std::vector<Rational>> generators;
    bool strictly_convex = false;
    bool positive = false;                // <alpha, g> > 0 for every generator
};
ConeSpec support_cone_check(const PuiseuxRoot& root, const Weights& w);

struct PolyhedronCheck {
    bool holds = true;
    std::vector<MonicPoly> factors;       // irreducible factors that were checked
    std::vector<Rational> counterexample; // (exponent, power of Z) of the first point outside
};
PolyhedronCheck polyhedron_cone_check(const MonicPoly& p, const GradeValue& target, const SolveOptions& opt = {});

// nonnegative solution of A lambda = b, if any (exact simplex)
std::optional<std::vector<Rational>> nonnegative_solution(const std::vector<std::vector<Rational>>& a,
                                                          const std::vector<Rational>& b);

} // namespace monoval
