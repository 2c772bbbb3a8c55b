#pragma once
#include "monoval/unipoly.hpp"

namespace monoval {

using QPoly = UniPoly<Rational>;

// Irreducible monic factors over Q, repeated according to multiplicity and sorted
// by (degree, coefficients). Degrees above max_degree are rejected.
std::vector<QPoly> factor_rational_univariate(const QPoly& p, int max_degree = 12);

std::string format_qpoly(const QPoly& p, const std::string& var = "Z");
bool qpoly_less(const QPoly& a, const QPoly& b);

} // namespace monoval
