// Expression parser shared by the CLI document reader, the output round-trip check
// and the tests.
#pragma once
#include "monoval/sparse_poly.hpp"
#include "monoval/tower.hpp"
#include <memory>
#include <string>
#include <vector>

namespace monoval {

struct ExprNode {
    enum class Kind { number, symbol, add, sub, mul, div, neg, pow } kind;
    Rational value;            // number, or exponent for pow
    std::string name;          // symbol
    std::vector<std::shared_ptr<const ExprNode>> args;
    int line = 1, column = 1;
};
using Expr = std::shared_ptr<const ExprNode>;

struct ExprOptions {
    bool fractional_exponents = false;  // x1^(1/2), only in outputs
    bool negative_exponents = false;    // x1^(-1) and division by monomials
    bool general_division = false;      // division by arbitrary expressions
};

Expr parse_expr(const std::string& text, const ExprOptions& opt = {}, int line = 1, int column = 1);

// Largest index k among symbols xk; 0 if none
std::size_t max_variable_index(const Expr& e);

// Polynomial in x1..xn, plus Z as variable n when allow_z is set
SparsePoly to_sparse(const Expr& e, std::size_t nvars, bool allow_z, const ExprOptions& opt = {});
SparsePoly parse_sparse(const std::string& text, std::size_t nvars, bool allow_z = false, const ExprOptions& opt = {});

// Evaluate in a tower; generator names refer to tower levels, Z is not allowed
TowerElem to_tower_elem(const Expr& e, const TowerPtr& t);
TowerElem parse_tower_elem(const std::string& text, const TowerPtr& t);

// Univariate polynomial in Z with coefficients in the tower
UniPoly<TowerElem> parse_tower_poly(const std::string& text, const TowerPtr& t);
UniPoly<TowerElem> to_tower_poly(const Expr& e, const TowerPtr& t);

} // namespace monoval
