#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbca/distribution.hpp"
#include "rbca/engine.hpp"
#include "rbca/rules.hpp"
#include "rbca/stats.hpp"

namespace rbca {

enum class SigmaMode { MonteCarlo, Exact };

// sigma_N: the probability that a cell of a size-n ring stabilizes.
struct SigmaEstimate {
    int n = 0;
    double estimate = 0.0;
    double stderr_value = 0.0;
    double ci95 = 0.0; // half-width, normal approximation
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    SigmaMode mode = SigmaMode::MonteCarlo;

    // Exact mode: the reduced fraction behind `estimate`
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 0;

    bool dyadic() const;
    std::string fraction_string() const; // "p/2^q" when dyadic, else "p/q"

    bool ci_covers(double value) const {
        return estimate - ci95 <= value && value <= estimate + ci95;
    }
};

struct EstimateOptions {
    std::int64_t horizon_cap = std::int64_t(1) << 20;
    int threads = 0;
};

// Mean stable-cell fraction over independent replicas: rules i.i.d. from the
// distribution, initial bits fair coins. Stationarity makes the per-replica
// fraction an unbiased estimator of sigma_N, at much lower variance than a
// single cell's indicator. Replica r derives its generator from (seed, r),
// and all accumulation is integer, so results are bit-identical for any
// thread count.
SigmaEstimate estimate_sigma(int n, const RuleDistribution& distribution, std::uint64_t samples,
                             std::uint64_t seed, const EstimateOptions& options = {});

struct ExactOptions {
    std::uint64_t work_budget = std::uint64_t(1) << 36;
    bool rotation_reduction = true;
    int threads = 0;
};

// Exact sigma_N for the uniform distribution on a support: averages the
// stable-cell fraction over every rule vector and every initial
// configuration. Rotating a rule vector only rotates its trajectories, so
// enumeration runs over rotation classes weighted by orbit size.
SigmaEstimate exact_sigma(int n, Support support, const ExactOptions& options = {});

// Simple pass/fail report with one line per individual check.
struct CheckReport {
    bool pass = true;
    std::vector<std::string> lines;

    void record(bool ok, std::string line);
    std::string summary() const;
};

// The x+y automaton:
//  (a) for n = 2^p, p <= p_max: every initial reaches all-zero by time n
//  (b) for n = 2^p + 1, p >= 2: exactly half of the initials flip cell 0
//      between times n-1 and n
//  (c) X_0(n + 2^m - 2) = X_{-2^m}(0) + X_{2^m}(0) sampled at n = 2^p_max + 1
CheckReport rule6_checks(int p_max, std::uint64_t seed = 1);

// Wall floor and the exponential closeness bound: estimates at each n must
// satisfy est >= wall mass, and pairwise
// |est_a - est_b| <= 4 (1-w)^{min(a,b)/2} + ci_a + ci_b.
CheckReport wall_bound_check(const RuleDistribution& distribution, const std::vector<int>& n_list,
                             std::uint64_t samples, std::uint64_t seed,
                             const EstimateOptions& options = {});

// Empirical covariance of the stability indicators (Z_0, Z_lag). Lag 0 is
// reported as the variance; every positive lag must come out below the
// threshold in absolute value.
struct MixingReport {
    CheckReport check;
    std::vector<double> covariances; // aligned with the requested lags
};

MixingReport mixing_check(int n, const RuleDistribution& distribution, std::uint64_t samples,
                          const std::vector<int>& lags, double threshold, std::uint64_t seed,
                          const EstimateOptions& options = {});

// Chi-square uniformity of the 2^(T+1) cylinders of (X_0(0..T)) sampled on
// the infinite lattice, plus the same test for the shifted window
// (X_0(1..T+1)).
struct CylinderTestReport {
    ChiSquareStat base;
    ChiSquareStat shifted;
    std::uint64_t samples = 0;
};

CylinderTestReport affine_cylinder_test(Support support, int horizon, std::uint64_t samples,
                                        std::uint64_t seed);

// Spatial structure after the first step:
//   support {2}:   no pattern x_j = x_{j+2} = 1 at any t >= 1
//   support {2,10}: after a burn-in of 2n steps all runs of 1's have length <= 2
// Exhaustive over initials for support {2} with n <= 16, sampled otherwise.
CheckReport shift_pattern_check(Support support, int n, std::uint64_t samples, std::uint64_t seed);

// Property-based proxy for sigma_* = 0: the probability that X_0 is constant
// on [T/2, T] must be non-increasing in T and small at the largest horizon.
// For supports inside {3,6,9,12} the i.i.d. law gives the exact rate
// 2^-(T - floor(T/2)), checked as an envelope.
struct DecayPoint {
    int horizon = 0;
    double probability = 0.0;
    double stderr_value = 0.0;
};

struct DecayReport {
    CheckReport check;
    std::vector<DecayPoint> points;
};

DecayReport zero_sigma_decay_check(Support support, const std::vector<int>& horizons,
                                   std::uint64_t samples, double final_threshold,
                                   std::uint64_t seed);

} // namespace rbca
