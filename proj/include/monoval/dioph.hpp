// Liouville-type gap detection: how fast do rational approximants f/g approach z,
// measured against the valuation of g.
#pragma once
#include "monoval/series.hpp"

namespace monoval {

struct ApproximationSample {
    GradeValue denominator;  // nu(g)
    GradeValue error;        // nu(z - f/g)
};

struct ApproximationRecord {
    WeightsPtr weights;
    std::vector<ApproximationSample> samples;  // sorted by denominator valuation
    std::vector<std::string> notices;
};

// pairs (f, g) with g != 0; pairs agreeing with z to its precision are dropped with a notice
ApproximationRecord record(const Series& z, const std::vector<std::pair<Series, Series>>& approximants);

// partial sums of z over its first k layers, k >= 1, each with the monomial clearing its denominators
std::vector<std::pair<Series, Series>> partial_sum_approximants(const Series& z);

struct LiouvilleReport {
    bool flagged = false;
    Rational a_max;
    std::size_t count = 0;
    std::vector<std::size_t> used;                         // best sample per denominator valuation
    std::vector<std::pair<Rational, Rational>> ratios;     // enclosures of nu(error)/max(1, nu(g)) for the used samples
    std::vector<std::size_t> evidence;                     // the flagged run, as positions in `used`
};

// flagged when `count` consecutive used samples have strictly increasing ratios ending above a_max
LiouvilleReport liouville_flag(const ApproximationRecord& rec, const Rational& a_max, std::size_t count);

// 2 * degree when a degree is known, else 10
Rational default_a_max(std::optional<int> degree);

} // namespace monoval
