#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rbca/cone.hpp"
#include "rbca/engine.hpp"
#include "rbca/errors.hpp"
#include "rbca/pbm.hpp"
#include "rbca/prng.hpp"
#include "rbca/stats.hpp"

using namespace rbca;

namespace {

RingConfiguration from_bits(const std::string& bits) {
    RingConfiguration c(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) c.set_cell(static_cast<int>(i), bits[i] == '1');
    return c;
}

std::string to_bits(const RingConfiguration& c) {
    std::string out;
    for (int i = 0; i < c.size(); ++i) out += c.cell(i) ? '1' : '0';
    return out;
}

RuleVector random_rules(int n, Xoshiro256ss& rng) {
    RuleVector rv;
    rv.rules.resize(static_cast<std::size_t>(n));
    for (auto& r : rv.rules) r = static_cast<std::uint8_t>(rng.next_below(16));
    return rv;
}

} // namespace

TEST_CASE("step examples") {
    CHECK(to_bits(step(from_bits("1000"), RuleVector(4, 6))) == "0101");
    CHECK(to_bits(step(from_bits("10110"), RuleVector(5, 0))) == "00000");
}

TEST_CASE("ring sizes below 2 are rejected") {
    CHECK_THROWS_AS(RingConfiguration(1), std::invalid_argument);
    CHECK_THROWS_AS(step(from_bits("101"), RuleVector(4, 6)), std::invalid_argument);
}

TEST_CASE("bit-parallel step equals the naive loop on random instances") {
    Xoshiro256ss rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(200));
        const RuleVector rules = random_rules(n, rng);
        const RingConfiguration config = random_configuration(n, rng.next());
        CHECK(step(config, rules) == step_naive(config, rules));
    }
}

TEST_CASE("bit-parallel step equals the naive loop exhaustively for small rings") {
    Xoshiro256ss rng(202);
    for (int n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const RuleVector rules = random_rules(n, rng);
            for (std::uint32_t c = 0; c < (std::uint32_t(1) << n); ++c) {
                RingConfiguration config(n);
                for (int i = 0; i < n; ++i) config.set_cell(i, (c >> i) & 1);
                CHECK(step(config, rules) == step_naive(config, rules));
            }
        }
    }
}

TEST_CASE("rotation equivariance") {
    Xoshiro256ss rng(303);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(80));
        const int k = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const RuleVector rules = random_rules(n, rng);
        const RingConfiguration config = random_configuration(n, rng.next());
        CHECK(step(config.rotated(k), rules.rotated(k)) == step(config, rules).rotated(k));
    }
}

TEST_CASE("mirror equivariance") {
    Xoshiro256ss rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(60));
        const RuleVector rules = random_rules(n, rng);
        const RingConfiguration config = random_configuration(n, rng.next());
        RingConfiguration flipped(n);
        for (int i = 0; i < n; ++i) flipped.set_cell(i, !config.cell(i));
        const RingConfiguration a = step(flipped, rules.mirrored());
        const RingConfiguration b = step(config, rules);
        for (int i = 0; i < n; ++i) CHECK(a.cell(i) == !b.cell(i));
    }
}

TEST_CASE("x+y rings satisfy the power-of-two identity") {
    // X_i(2^p) = X_{i-2^p}(0) + X_{i+2^p}(0), exhaustively for n <= 16, p <= 4
    for (int n = 2; n <= 16; ++n) {
        const RuleVector rules(n, 6);
        const StepMasks masks(rules);
        for (std::uint32_t c = 0; c < (std::uint32_t(1) << n); ++c) {
            RingConfiguration config(n);
            for (int i = 0; i < n; ++i) config.set_cell(i, (c >> i) & 1);
            RingConfiguration cur = config, scratch(n);
            int t = 0;
            for (int p = 0; p <= 4; ++p) {
                const int target = 1 << p;
                while (t < target) {
                    masks.step(cur, scratch);
                    std::swap(cur, scratch);
                    ++t;
                }
                bool ok = true;
                for (int i = 0; i < n && ok; ++i)
                    ok = cur.cell(i) == (config.cell(i - target) ^ config.cell(i + target));
                if (!ok) {
                    CHECK(ok);
                    return;
                }
            }
        }
    }
    CHECK(true);
}

TEST_CASE("run_until_cycle on the absorbed x+y ring") {
    const CycleSummary s = run_until_cycle(from_bits("1000"), RuleVector(4, 6));
    CHECK(s.preperiod == 2);
    CHECK(s.period == 1);
    CHECK(s.stable_count() == 4);
    // trajectory 1000 -> 0101 -> 0000: settle times per cell
    REQUIRE(s.stabilization_time.size() == 4);
    CHECK(s.stabilization_time[0] == 1);
    CHECK(s.stabilization_time[1] == 2);
    CHECK(s.stabilization_time[2] == 0);
    CHECK(s.stabilization_time[3] == 2);
}

TEST_CASE("run_until_cycle on a pure rotation") {
    const CycleSummary s = run_until_cycle(from_bits("010"), RuleVector(3, 12));
    CHECK(s.preperiod == 0);
    CHECK(s.period == 3);
    CHECK(s.stable_count() == 0);
    for (const auto& t : s.stabilization_time) CHECK(!t.has_value());
}

TEST_CASE("run_until_cycle respects max_steps") {
    RunOptions options;
    options.max_steps = 2;
    CHECK_THROWS_AS(run_until_cycle(from_bits("010"), RuleVector(3, 12), options), CycleNotFound);
}

TEST_CASE("hashing, Brent, and the memory-cap fallback agree") {
    Xoshiro256ss rng(505);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(20));
        const RuleVector rules = random_rules(n, rng);
        const RingConfiguration config = random_configuration(n, rng.next());
        RunOptions hashing;
        hashing.detection = CycleDetection::Hashing;
        RunOptions brent;
        brent.detection = CycleDetection::Brent;
        RunOptions capped; // Auto with a cap too small to hash anything
        capped.memory_cap_bytes = 1;
        const CycleSummary a = run_until_cycle(config, rules, hashing);
        const CycleSummary b = run_until_cycle(config, rules, brent);
        const CycleSummary c = run_until_cycle(config, rules, capped);
        CHECK(a.preperiod == b.preperiod);
        CHECK(a.period == b.period);
        CHECK(a.stable == b.stable);
        CHECK(a.stabilization_time == b.stabilization_time);
        CHECK(a.preperiod == c.preperiod);
        CHECK(a.period == c.period);
        CHECK(a.stable == c.stable);
    }
}

TEST_CASE("cone sampling basics") {
    const RuleDistribution zeros = RuleDistribution::point_mass(0);
    const ConeTrajectory t0 = sample_cone(zeros, 0, 42);
    CHECK(t0.values.size() == 1);

    for (std::uint64_t seed = 0; seed < 32; ++seed) {
        const ConeTrajectory t = sample_cone(zeros, 5, seed);
        REQUIRE(t.values.size() == 6);
        for (std::size_t i = 1; i < t.values.size(); ++i) CHECK(t.values[i] == 0);
    }
}

TEST_CASE("cone samples of the affine family look i.i.d.") {
    const RuleDistribution d = RuleDistribution::uniform_on(Support{3, 6, 9, 12});
    const int horizon = 3;
    std::vector<std::uint64_t> counts(1u << (horizon + 1), 0);
    for (std::uint64_t s = 0; s < 20000; ++s) {
        const ConeTrajectory t = sample_cone(d, horizon, derive_seed(606, s));
        std::size_t pattern = 0;
        for (int i = 0; i <= horizon; ++i)
            pattern |= static_cast<std::size_t>(t.values[static_cast<std::size_t>(i)]) << i;
        ++counts[pattern];
    }
    CHECK(!chi_square_uniform(counts).rejected(0.001));
}

TEST_CASE("flip propagation for shift-family supports") {
    CHECK(flip_propagation_check(Support{12}, 8, 200, 1));
    CHECK(flip_propagation_check(Support{6}, 2, 500, 2));
    CHECK(flip_propagation_check(Support{3, 6, 9, 12}, 10, 10000, 3));
    CHECK_THROWS_AS(flip_propagation_check(Support{2}, 4, 10, 4), std::invalid_argument);
}

TEST_CASE("pbm round trip in both formats") {
    Xoshiro256ss rng(707);
    for (bool binary : {false, true}) {
        const int width = 2 + static_cast<int>(rng.next_below(70));
        const int height = 1 + static_cast<int>(rng.next_below(20));
        std::vector<RingConfiguration> rows;
        for (int r = 0; r < height; ++r) rows.push_back(random_configuration(width, rng.next()));

        std::stringstream stream;
        write_pbm(stream, rows, binary, "round trip");
        const PbmImage img = read_pbm(stream);
        REQUIRE(img.width == width);
        REQUIRE(img.height == height);
        for (int r = 0; r < height; ++r)
            for (int c = 0; c < width; ++c)
                CHECK(img.at(r, c) == static_cast<int>(rows[static_cast<std::size_t>(r)].cell(c)));
    }
}

TEST_CASE("trajectory length and content") {
    const auto rows = trajectory(from_bits("1000"), RuleVector(4, 6), 2);
    REQUIRE(rows.size() == 3);
    CHECK(to_bits(rows[0]) == "1000");
    CHECK(to_bits(rows[1]) == "0101");
    CHECK(to_bits(rows[2]) == "0000");
}
