#pragma once

#include <array>
#include <cstdint>

#include "rbca/prng.hpp"
#include "rbca/rules.hpp"

namespace rbca {

// Probability weights over the 16 rules. The support must be nonempty and
// the weights must sum to 1 within 1e-12.
class RuleDistribution {
public:
    static RuleDistribution uniform();
    static RuleDistribution uniform_on(Support support);
    static RuleDistribution point_mass(int rule);
    static RuleDistribution from_weights(const std::array<double, 16>& weights);

    double weight(int j) const { return weights_[static_cast<std::size_t>(j)]; }
    const std::array<double, 16>& weights() const { return weights_; }
    Support support() const;

    // P(rule is a wall), i.e. weight(0) + weight(15)
    double wall_mass() const { return weights_[0] + weights_[15]; }

    // inverse-CDF draw; deterministic given the generator state
    int sample(Xoshiro256ss& rng) const;

    bool operator==(const RuleDistribution&) const = default;

private:
    RuleDistribution() = default;
    std::array<double, 16> weights_{};
    std::array<double, 16> cumulative_{};
    void finalize();
};

// The two rules that freeze a cell from time 1 at the latest.
inline constexpr int kWallRules[2] = {0, 15};
inline const Support kWalls{0, 15};

// The four rules of the form x + f(y), all affine.
inline const Support kAffineShiftFamily{3, 6, 9, 12};

} // namespace rbca
