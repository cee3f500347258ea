#include "rbca/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace rbca {

RuleDistribution RuleDistribution::uniform() {
    RuleDistribution d;
    d.weights_.fill(1.0 / 16.0);
    d.finalize();
    return d;
}

RuleDistribution RuleDistribution::uniform_on(Support support) {
    if (support.empty()) throw std::invalid_argument("distribution support must be nonempty");
    RuleDistribution d;
    const double w = 1.0 / support.size();
    for (int j = 0; j < 16; ++j)
        if (support.contains(j)) d.weights_[static_cast<std::size_t>(j)] = w;
    d.finalize();
    return d;
}

RuleDistribution RuleDistribution::point_mass(int rule) {
    if (rule < 0 || rule > 15) throw std::invalid_argument("rule index out of range");
    RuleDistribution d;
    d.weights_[static_cast<std::size_t>(rule)] = 1.0;
    d.finalize();
    return d;
}

RuleDistribution RuleDistribution::from_weights(const std::array<double, 16>& weights) {
    RuleDistribution d;
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument("weights must be finite and nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("weights must sum to 1");
    if (sum == 0.0) throw std::invalid_argument("distribution support must be nonempty");
    d.weights_ = weights;
    d.finalize();
    return d;
}

void RuleDistribution::finalize() {
    double acc = 0.0;
    for (int j = 0; j < 16; ++j) {
        acc += weights_[static_cast<std::size_t>(j)];
        cumulative_[static_cast<std::size_t>(j)] = acc;
    }
    cumulative_[15] = 1.0; // guard against round-off at the top
}

Support RuleDistribution::support() const {
    Support s;
    for (int j = 0; j < 16; ++j)
        if (weights_[static_cast<std::size_t>(j)] > 0.0) s.mask |= std::uint16_t(1u << j);
    return s;
}

int RuleDistribution::sample(Xoshiro256ss& rng) const {
    const double u = rng.next_double();
    for (int j = 0; j < 16; ++j)
        if (u < cumulative_[static_cast<std::size_t>(j)] &&
            weights_[static_cast<std::size_t>(j)] > 0.0)
            return j;
    // u landed on a zero-weight tail segment; return the last positive rule
    for (int j = 15; j >= 0; --j)
        if (weights_[static_cast<std::size_t>(j)] > 0.0) return j;
    return 0;
}

} // namespace rbca
