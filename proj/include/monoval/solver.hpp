// Graded Hensel lifting, Newton-Puiseux roots, the effective implicit function
// theorem with denominator tracking, and stability of factorizations.
#pragma once
#include "monoval/homog.hpp"
#include "monoval/monic.hpp"
#include <cstdint>

namespace monoval {

struct DenominatorWitness {
    TowerElem delta;  // homogeneous polynomial
    struct Entry {
        GradeValue index;  // layer degree minus the valuation of the root
        long m;            // power of delta needed to clear the layer
    };
    std::vector<Entry> layers;
    Rational a;    // m(i) <= a*i + b
    GradeValue b;
};

struct PuiseuxRoot {
    Series expansion;               // over the tower of this root class
    std::size_t conjugates = 1;     // roots represented (embeddings of the new residue levels)
    std::size_t input_levels = 0;   // levels of expansion.tower() that belong to the input
    std::vector<HomogeneousElement> homogeneous;  // the gammas met on the way, integral and compressed when possible
    std::vector<std::string> notes;
    std::optional<DenominatorWitness> witness;

    const TowerPtr& tower() const { return expansion.tower(); }
    const Series::Precision& precision() const { return expansion.precision(); }
};

struct SolveOptions {
    std::uint64_t seed = 0;
    int max_rounds = 8;              // precision retries
    std::size_t layer_budget = 20000;  // semigroup layers per lift
};

// residue polynomial: degree-0 layers of the coefficients (all valuations must be >= 0)
UniPoly<TowerElem> residue_poly(const MonicPoly& p);

Series hensel_lift_root(const MonicPoly& p, const TowerElem& r0, const GradeValue& target);

std::pair<MonicPoly, MonicPoly> hensel_split(const MonicPoly& p, const UniPoly<TowerElem>& s1, const UniPoly<TowerElem>& s2,
                                            const GradeValue& target);

std::vector<PuiseuxRoot> newton_puiseux_roots(const MonicPoly& p, const GradeValue& target, const SolveOptions& opt = {});

PuiseuxRoot effective_ift(const MonicPoly& p, const Series& u, const GradeValue& target);

GradeValue stability_threshold(const MonicPoly& p);

struct MatchedFactor {
    MonicPoly p_factor, q_factor;           // truncated products over the matched root classes
    std::vector<std::size_t> p_classes, q_classes;
    std::optional<GradeValue> closeness;    // min valuation of Q_i - P_i; nullopt when equal
};
struct Transfer {
    GradeValue perturbation;                // min valuation of a_i - b_i (meaningless when identical)
    bool identical = false;
    GradeValue root_separation;             // bound on max valuation of z_i - z_j
    std::vector<MatchedFactor> factors;
};
Transfer transfer_factorization(const MonicPoly& p, const MonicPoly& q, const std::vector<PuiseuxRoot>& p_roots,
                                const GradeValue& target, const SolveOptions& opt = {});

struct StableTower {
    std::vector<HomogeneousElement> elements;
    GradeValue threshold;
};
StableTower stable_tower(const MonicPoly& p, const std::vector<PuiseuxRoot>& roots);

// product of (Z - sigma(z)) over the embeddings of the residue and homogeneous
// levels above the input, truncated at the root precision
UniPoly<SparsePoly> class_polynomial(const PuiseuxRoot& r);
// groups of root classes whose class polynomials multiply to integer exponents
std::vector<std::vector<std::size_t>> galois_groups(const std::vector<PuiseuxRoot>& roots, const Weights& w);

// product of the distinct class polynomials of the selected classes, as a monic polynomial
MonicPoly class_product(const std::vector<PuiseuxRoot>& roots, const std::vector<std::size_t>& classes, const WeightsPtr& w);

} // namespace monoval
