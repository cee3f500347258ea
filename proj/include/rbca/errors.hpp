#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rbca {

// Thrown by run_until_cycle when the step cap is reached before the orbit
// closes. The joint state space is finite, so a cap of 2^n + 1 always
// suffices; hitting this means the configured cap was too small.
class CycleNotFound : public std::runtime_error {
public:
    CycleNotFound(std::int64_t max_steps)
        : std::runtime_error("cycle not found within " + std::to_string(max_steps) + " steps"),
          max_steps(max_steps) {}
    std::int64_t max_steps;
};

// Thrown by block analysis when the layer-set sequence does not close
// within max_layers iterations.
class LayerCycleNotFound : public std::runtime_error {
public:
    LayerCycleNotFound(std::int64_t max_layers)
        : std::runtime_error("layer cycle not found within " + std::to_string(max_layers) +
                             " layers"),
          max_layers(max_layers) {}
    std::int64_t max_layers;
};

// Thrown by exact enumeration when the instance exceeds the work budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget)
        : std::runtime_error("enumeration needs " + std::to_string(required) +
                             " evaluations, budget is " + std::to_string(budget)),
          required(required), budget(budget) {}
    std::uint64_t required;
    std::uint64_t budget;
};

} // namespace rbca
