#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rbca/rules.hpp"

namespace rbca {

// A size-n periodic configuration, bit i = cell i, packed 64 cells per word.
// Indices wrap mod n everywhere. n >= 2: with two cells the left and right
// neighbor coincide, which the circle convention x_{i+kN} = x_i allows.
class RingConfiguration {
public:
    RingConfiguration() = default;
    explicit RingConfiguration(int n);

    int size() const { return n_; }
    bool cell(int i) const;
    void set_cell(int i, bool value);

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    bool all_zero() const;
    std::uint64_t popcount() const;

    // bit i of the result = cell (i-1 mod n): what cell i sees on its left
    RingConfiguration shifted_from_left() const;
    // bit i of the result = cell (i+1 mod n)
    RingConfiguration shifted_from_right() const;
    // cell i of the result = cell (i-k mod n) of this
    RingConfiguration rotated(int k) const;

    bool operator==(const RingConfiguration&) const = default;

private:
    friend struct StepMasks;
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

RingConfiguration random_configuration(int n, std::uint64_t seed);

// Per-cell rule assignment, phi_i = rules[i].
struct RuleVector {
    std::vector<std::uint8_t> rules;

    RuleVector() = default;
    RuleVector(int n, int rule) : rules(static_cast<std::size_t>(n), static_cast<std::uint8_t>(rule)) {}
    explicit RuleVector(std::vector<std::uint8_t> r) : rules(std::move(r)) {}

    int size() const { return static_cast<int>(rules.size()); }
    RuleVector rotated(int k) const;
    RuleVector mirrored() const;
};

// The four per-cell truth-table masks: bit i of m[xy] is rules[i] applied
// to (x,y). One synchronous update is then four AND-OR word operations on
// the rotated configuration.
struct StepMasks {
    explicit StepMasks(const RuleVector& rules);

    int size() const { return n_; }
    void step(const RingConfiguration& in, RingConfiguration& out) const;

private:
    int n_ = 0;
    std::vector<std::uint64_t> m00_, m01_, m10_, m11_;
};

// cell i of the result = rules[i](in[i-1], in[i+1]); throws on size mismatch
RingConfiguration step(const RingConfiguration& config, const RuleVector& rules);

// Reference implementation: plain per-cell loop. Oracle for the bit-parallel path.
RingConfiguration step_naive(const RingConfiguration& config, const RuleVector& rules);

// Eventual cycle of a trajectory: X(T0 + P) = X(T0) with both minimal.
struct CycleSummary {
    std::int64_t preperiod = 0; // T0
    std::int64_t period = 1;    // P

    // cell i is stable iff its value is the same in all of X(T0..T0+P-1)
    std::vector<std::uint8_t> stable;
    // smallest T with X_i(t) = X_i(T) for all t >= T; only for stable cells
    std::vector<std::optional<std::int64_t>> stabilization_time;

    int stable_count() const;
    double stable_fraction() const;
};

enum class CycleDetection {
    Auto,    // hash visited configurations, fall back to Brent past the memory cap
    Hashing, // always hash
    Brent,   // constant-memory cycle finding
};

struct RunOptions {
    std::int64_t max_steps = std::int64_t(1) << 20;
    CycleDetection detection = CycleDetection::Auto;
    std::size_t memory_cap_bytes = std::size_t(256) << 20;
};

// Runs the automaton until the configuration cycle is found and summarizes
// per-cell stability. Throws CycleNotFound if max_steps is hit first.
CycleSummary run_until_cycle(const RingConfiguration& initial, const RuleVector& rules,
                             const RunOptions& options = {});

// Space-time diagram: rows = times 0..steps of the trajectory.
std::vector<RingConfiguration> trajectory(const RingConfiguration& initial,
                                          const RuleVector& rules, std::int64_t steps);

} // namespace rbca
