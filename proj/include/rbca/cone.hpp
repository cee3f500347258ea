#pragma once

#include <cstdint>
#include <vector>

#include "rbca/distribution.hpp"
#include "rbca/rules.hpp"

namespace rbca {

// Exact sample of (X_0(0), ..., X_0(T)) for the automaton on the full
// integer line. X_0(t) depends only on initial cells -t..t and the rules of
// cells -t+1..t-1, so drawing a window of 2T+1 fair bits and 2T-1 i.i.d.
// rules and evolving a shrinking window reproduces the infinite-lattice law.
struct ConeTrajectory {
    std::vector<std::uint8_t> values; // size T+1
    int horizon() const { return static_cast<int>(values.size()) - 1; }
};

ConeTrajectory sample_cone(const RuleDistribution& distribution, int horizon, std::uint64_t seed);

// For supports inside {3,6,9,12} every rule is x + f(y), so flipping
// X_{-t}(0) must flip X_0(t) with everything else held fixed. Runs the two
// initial conditions side by side for each t = 1..horizon; returns true iff
// the flip propagated in every trial.
bool flip_propagation_check(Support support, int horizon, int trials, std::uint64_t seed);

} // namespace rbca
