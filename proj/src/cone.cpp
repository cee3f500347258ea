#include "rbca/cone.hpp"

#include <stdexcept>

namespace rbca {

namespace {

// window cells -T..T live at offsets 0..2T; rules for cells -T+1..T-1
struct Window {
    int horizon;
    std::vector<std::uint8_t> cells; // 2T+1
    std::vector<std::uint8_t> rules; // 2T+1, entries 1..2T-1 used

    std::uint8_t& cell(int i) { return cells[static_cast<std::size_t>(i + horizon)]; }
    std::uint8_t rule(int i) const { return rules[static_cast<std::size_t>(i + horizon)]; }
};

Window draw_window(const RuleDistribution& distribution, int horizon, Xoshiro256ss& rng) {
    Window w;
    w.horizon = horizon;
    w.cells.resize(static_cast<std::size_t>(2 * horizon + 1));
    w.rules.resize(static_cast<std::size_t>(2 * horizon + 1), 0);
    for (auto& c : w.cells) c = rng.next_bit() ? 1 : 0;
    for (int i = -horizon + 1; i <= horizon - 1; ++i)
        w.rules[static_cast<std::size_t>(i + horizon)] =
            static_cast<std::uint8_t>(distribution.sample(rng));
    return w;
}

// evolve in place; record X_0 at every time into out
void evolve(Window& w, std::vector<std::uint8_t>& out) {
    const int T = w.horizon;
    out.resize(static_cast<std::size_t>(T) + 1);
    out[0] = w.cell(0);
    std::vector<std::uint8_t> next(w.cells.size());
    for (int t = 1; t <= T; ++t) {
        for (int i = -(T - t); i <= T - t; ++i) {
            Rule r(w.rule(i));
            next[static_cast<std::size_t>(i + T)] =
                r.apply(w.cell(i - 1), w.cell(i + 1)) ? 1 : 0;
        }
        for (int i = -(T - t); i <= T - t; ++i)
            w.cell(i) = next[static_cast<std::size_t>(i + T)];
        out[static_cast<std::size_t>(t)] = w.cell(0);
    }
}

} // namespace

ConeTrajectory sample_cone(const RuleDistribution& distribution, int horizon, std::uint64_t seed) {
    if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
    Xoshiro256ss rng(seed);
    ConeTrajectory out;
    if (horizon == 0) {
        out.values.push_back(rng.next_bit() ? 1 : 0);
        return out;
    }
    Window w = draw_window(distribution, horizon, rng);
    evolve(w, out.values);
    return out;
}

bool flip_propagation_check(Support support, int horizon, int trials, std::uint64_t seed) {
    if (support.empty() || !support.subset_of(kAffineShiftFamily))
        throw std::invalid_argument("support must be a nonempty subset of {3,6,9,12}");
    const RuleDistribution distribution = RuleDistribution::uniform_on(support);
    for (int trial = 0; trial < trials; ++trial) {
        Xoshiro256ss rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
        for (int t = 1; t <= horizon; ++t) {
            Window base = draw_window(distribution, t, rng);
            Window flipped = base;
            flipped.cell(-t) ^= 1;
            std::vector<std::uint8_t> a, b;
            evolve(base, a);
            evolve(flipped, b);
            if (a.back() == b.back()) return false;
        }
    }
    return true;
}

} // namespace rbca
