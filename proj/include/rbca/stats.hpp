#pragma once

#include <cstdint>
#include <vector>

namespace rbca {

// Upper regularized incomplete gamma Q(a, x); series / continued fraction.
double regularized_gamma_upper(double a, double x);

struct ChiSquareStat {
    double statistic = 0.0;
    std::int64_t dof = 0;
    double p_value = 1.0;

    bool rejected(double alpha) const { return p_value < alpha; }
};

// Goodness of fit of observed counts against the uniform multinomial.
ChiSquareStat chi_square_uniform(const std::vector<std::uint64_t>& counts);

double chi_square_pvalue(double statistic, std::int64_t dof);

} // namespace rbca
