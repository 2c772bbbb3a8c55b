// Monic polynomials in Z whose coefficients are truncated graded series.
#pragma once
#include "monoval/series.hpp"

namespace monoval {

class MonicPoly {
public:
    MonicPoly() = default;
    // coefficients lowest first; the last one must be exactly 1
    MonicPoly(WeightsPtr w, std::vector<Series> coeffs);
    static MonicPoly from_tower_poly(WeightsPtr w, const UniPoly<TowerElem>& p, Series::Precision prec = std::nullopt);
    static MonicPoly parse(const std::string& text, WeightsPtr w);

    const WeightsPtr& weights() const { return w_; }
    const TowerPtr& tower() const { return c_.back().tower(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Series>& coeffs() const { return c_; }
    const Series& operator[](std::size_t j) const { return c_.at(j); }  // coefficient of Z^j
    const Series& a(int i) const { return c_.at(static_cast<std::size_t>(degree() - i)); }  // coefficient of Z^(d-i)
    bool exact() const;
    Series::Precision precision() const;

    MonicPoly with_tower(const TowerPtr& t) const;
    MonicPoly shifted(const Series& s) const;  // P(Z + s)
    Series eval(const Series& z) const;
    Series eval_derivative(const Series& z) const;
    UniPoly<TowerElem> truncation() const;  // coefficients summed

    bool operator==(const MonicPoly& o) const;
    std::string str() const;

private:
    WeightsPtr w_;
    std::vector<Series> c_;
};

// (-1)^(d(d-1)/2) Res(P, P'), with the precision of the coefficients
Series discriminant(const MonicPoly& p);

} // namespace monoval
