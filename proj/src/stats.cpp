#include "rbca/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rbca {

namespace {

double gamma_series_lower(double a, double x) {
    // P(a,x) by power series
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_cf_upper(double a, double x) {
    // Q(a,x) by modified Lentz continued fraction
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double regularized_gamma_upper(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma arguments out of domain");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_series_lower(a, x);
    return gamma_cf_upper(a, x);
}

double chi_square_pvalue(double statistic, std::int64_t dof) {
    if (dof < 1) throw std::invalid_argument("dof must be >= 1");
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_upper(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

ChiSquareStat chi_square_uniform(const std::vector<std::uint64_t>& counts) {
    if (counts.size() < 2) throw std::invalid_argument("need at least two cells");
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw std::invalid_argument("no observations");
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    ChiSquareStat out;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        out.statistic += d * d / expected;
    }
    out.dof = static_cast<std::int64_t>(counts.size()) - 1;
    out.p_value = chi_square_pvalue(out.statistic, out.dof);
    return out;
}

} // namespace rbca
