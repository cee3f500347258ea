#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "rbca/blocks.hpp"
#include "rbca/engine.hpp"
#include "rbca/prng.hpp"

using namespace rbca;

namespace {

BlockSpec family_26() {
    BlockSpec family;
    family.phi = {2, 2, 2, 6, 6, 6, 2, 2, 2, 6, 6, 6, 2, 2, 2, 2};
    const std::string fixed = "001101010110";
    for (BlockWord x = 0; x < 2; ++x)
        for (BlockWord y = 0; y < 2; ++y)
            for (BlockWord z = 0; z < 2; ++z)
                for (BlockWord w = 0; w < 2; ++w) {
                    if ((x & z) == 1 || (y & w) == 1) continue;
                    BlockWord b = 0;
                    for (int k = 0; k < 12; ++k)
                        if (fixed[static_cast<std::size_t>(k)] == '1') b |= BlockWord(1) << k;
                    family.b_states.push_back(b | (x << 12) | (y << 13) | (z << 14) | (w << 15));
                }
    std::sort(family.b_states.begin(), family.b_states.end());
    family.center = 4;
    return family;
}

// embed a block in a ring and return the interior word after stepping
BlockWord interior_word(const RingConfiguration& config, int offset, int p) {
    BlockWord out = 0;
    for (int k = 0; k < p; ++k)
        if (config.cell(offset + k)) out |= BlockWord(1) << k;
    return out;
}

} // namespace

TEST_CASE("the twelve published impermeable blocks verify") {
    REQUIRE(known_impermeable_witnesses().size() == 12);
    for (const BlockSpec& spec : known_impermeable_witnesses()) {
        const BlockVerdict v = analyze_block(spec);
        CHECK(v.kind == BlockKind::Impermeable);
    }
}

TEST_CASE("appendix verification examples") {
    {
        const BlockVerdict v = analyze_block(BlockSpec::parse("2,9,9,2", "0010"));
        CHECK(v.kind == BlockKind::Impermeable);
        CHECK(v.period == 1);
        CHECK(v.stable_count() == 4);
    }
    {
        const BlockVerdict v = analyze_block(BlockSpec::parse("5,3", "00"));
        CHECK(v.kind == BlockKind::Impermeable);
        CHECK(v.period == 2);
        CHECK(v.stable_count() == 0);
    }
    {
        // the alternative period-1 word for the same phi-block
        const BlockVerdict v = analyze_block(BlockSpec::parse("5,3", "01"));
        CHECK(v.kind == BlockKind::Impermeable);
        CHECK(v.period == 1);
    }
    // a single cell carrying x+1 passes its left boundary through
    CHECK(analyze_block(BlockSpec::parse("3", "0")).kind == BlockKind::Neither);
    CHECK(analyze_block(BlockSpec::parse("3", "1")).kind == BlockKind::Neither);
}

TEST_CASE("absorbing example with a period-4 center") {
    const BlockVerdict v = analyze_block(BlockSpec::parse("2,2,11,2", "0110", 2));
    CHECK(v.kind == BlockKind::Absorbing);
    REQUIRE(v.center_value_period.has_value());
    CHECK(*v.center_value_period == 4);
    CHECK(!v.center_constant);
    CHECK(v.stable_count() == 0);

    // the same block with the boundary-adjacent cell as center is not absorbing
    CHECK(analyze_block(BlockSpec::parse("2,2,11,2", "0110", 4)).kind == BlockKind::Neither);
}

TEST_CASE("constant-center absorbing blocks") {
    const BlockVerdict a = analyze_block(BlockSpec::parse("2,2,3,2,3,2,2,2,3", "001100001", 6));
    CHECK(a.kind == BlockKind::Absorbing);
    CHECK(a.center_constant);

    const BlockVerdict b =
        analyze_block(BlockSpec::parse("2,2,11,2,11,2,2,2,11,2", "0110000110", 6));
    CHECK(b.kind == BlockKind::Absorbing);
    CHECK(b.center_constant);
}

TEST_CASE("the {2,6} sixteen-cell family") {
    const BlockSpec family = family_26();
    REQUIRE(family.b_states.size() == 9);
    const BlockVerdict v = analyze_family(family);
    CHECK(v.kind == BlockKind::Absorbing);
    CHECK(v.stable[3] == 1); // cell 4
    CHECK(v.stable[6] == 1); // cell 7
    CHECK(v.center_constant);

    for (BlockWord member : family.b_states) {
        const int y = (member >> 13) & 1;
        const int w = (member >> 15) & 1;
        const auto t = family_recurrence_time(family, member);
        REQUIRE(t.has_value());
        CHECK(*t == ((y == 1 && w == 0) ? 8 : 4));
    }
}

TEST_CASE("a family covering every word is not impermeable even when members are") {
    BlockSpec spec;
    spec.phi = {0, 0};
    spec.b_states = {0, 1, 2, 3};
    CHECK(analyze_family(spec).kind != BlockKind::Impermeable);
    for (BlockWord b : {0u, 1u, 2u, 3u})
        CHECK(analyze_block(BlockSpec::single({0, 0}, b)).kind == BlockKind::Impermeable);
}

TEST_CASE("walls trap any single word") {
    BlockSpec spec;
    spec.phi = {0, 0};
    spec.b_states = {0};
    const auto t = family_recurrence_time(spec, 2); // starts outside, falls to 00
    REQUIRE(t.has_value());
    CHECK(*t == 1);
}

TEST_CASE("impermeable search finds the published witnesses") {
    {
        const auto found = search_impermeable(Support{1}, 3);
        const BlockSpec want = BlockSpec::parse("1,1,1", "010");
        CHECK(std::count(found.begin(), found.end(), want) == 1);
    }
    {
        const auto found = search_impermeable(Support{2, 4}, 2);
        const BlockSpec want = BlockSpec::parse("2,4", "00");
        CHECK(std::count(found.begin(), found.end(), want) == 1);
    }
    CHECK(search_impermeable(Support{2, 3, 11}, 6).empty());
}

TEST_CASE("search results are ordered by size, phi, then word") {
    const auto found = search_impermeable(Support{2, 5}, 3);
    CHECK(!found.empty());
    auto key = [](const BlockSpec& s) {
        std::vector<std::uint32_t> k{static_cast<std::uint32_t>(s.size())};
        for (auto j : s.phi) k.push_back(j);
        for (int i = 0; i < s.size(); ++i) k.push_back((s.b_states[0] >> i) & 1); // tuple order
        return k;
    };
    for (std::size_t i = 0; i + 1 < found.size(); ++i) {
        CHECK(found[i].size() <= found[i + 1].size());
        if (found[i].size() == found[i + 1].size())
            CHECK(key(found[i]) <= key(found[i + 1]));
    }
    // every returned witness re-verifies
    for (const auto& w : found) CHECK(analyze_block(w).kind == BlockKind::Impermeable);
}

TEST_CASE("absorbing search finds the worked examples") {
    {
        const auto found = search_absorbing(Support{2, 11}, 4, false);
        const BlockSpec want = BlockSpec::parse("2,2,11,2", "0110", 2);
        CHECK(std::count(found.begin(), found.end(), want) == 1);
    }
    {
        SearchOptions options;
        options.stop_at_first_size = true;
        const auto found = search_absorbing(Support{2, 3}, 3, false, options);
        const bool has_223 = std::any_of(found.begin(), found.end(), [](const BlockSpec& w) {
            return w.phi == std::vector<std::uint8_t>{2, 2, 3};
        });
        CHECK(has_223);
    }
    {
        SearchOptions options;
        options.stop_at_first_size = true;
        const auto found = search_absorbing(Support{2, 3}, 9, true, options);
        REQUIRE(!found.empty());
        CHECK(found.front().size() <= 9);
        for (const auto& w : found) {
            const BlockVerdict v = analyze_block(w);
            CHECK(v.kind == BlockKind::Absorbing);
            CHECK(v.center_constant);
        }
    }
}

TEST_CASE("analysis is covariant under mirror and reversal") {
    Xoshiro256ss rng(811);
    for (int trial = 0; trial < 400; ++trial) {
        const int p = 1 + static_cast<int>(rng.next_below(5));
        BlockSpec spec;
        for (int k = 0; k < p; ++k)
            spec.phi.push_back(static_cast<std::uint8_t>(rng.next_below(16)));
        spec.b_states = {static_cast<BlockWord>(rng.next_below(std::uint64_t(1) << p))};
        if (p >= 3 && rng.next_bit()) spec.center = 2 + static_cast<int>(rng.next_below(
                                          static_cast<std::uint64_t>(p - 2)));

        const BlockVerdict base = analyze_block(spec);
        for (const BlockSpec& image : {mirror(spec), reverse(spec), mirror(reverse(spec))}) {
            const BlockVerdict v = analyze_block(image);
            CHECK(v.kind == base.kind);
            CHECK(v.preperiod == base.preperiod);
            CHECK(v.period == base.period);
            CHECK(v.stable_count() == base.stable_count());
            CHECK(v.center_value_period == base.center_value_period);
            CHECK(v.center_constant == base.center_constant);
        }
    }
}

TEST_CASE("impermeable witnesses hold up inside random rings") {
    Xoshiro256ss rng(822);
    for (const BlockSpec& spec : known_impermeable_witnesses()) {
        const int p = spec.size();
        const int n = p + 6;
        for (int trial = 0; trial < 100; ++trial) {
            // two environments, same block: interiors must agree at all times
            RuleVector rv_a, rv_b;
            rv_a.rules.resize(static_cast<std::size_t>(n));
            rv_b.rules.resize(static_cast<std::size_t>(n));
            RingConfiguration ca(n), cb(n);
            for (int i = 0; i < n; ++i) {
                rv_a.rules[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rng.next_below(16));
                rv_b.rules[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rng.next_below(16));
                ca.set_cell(i, rng.next_bit());
                cb.set_cell(i, rng.next_bit());
            }
            const int offset = 2;
            for (int k = 0; k < p; ++k) {
                rv_a.rules[static_cast<std::size_t>(offset + k)] = spec.phi[static_cast<std::size_t>(k)];
                rv_b.rules[static_cast<std::size_t>(offset + k)] = spec.phi[static_cast<std::size_t>(k)];
                ca.set_cell(offset + k, (spec.b_states[0] >> k) & 1);
                cb.set_cell(offset + k, (spec.b_states[0] >> k) & 1);
            }
            const StepMasks ma(rv_a), mb(rv_b);
            RingConfiguration sa(n), sb(n);
            for (int t = 0; t < 24; ++t) {
                CHECK(interior_word(ca, offset, p) == interior_word(cb, offset, p));
                ma.step(ca, sa);
                std::swap(ca, sa);
                mb.step(cb, sb);
                std::swap(cb, sb);
            }
        }
    }
}

TEST_CASE("absorbing centers hold up inside random rings") {
    const BlockSpec spec = BlockSpec::parse("2,2,3,2,3,2,2,2,3", "001100001", 6);
    const int p = spec.size(), n = p + 8, offset = 3;
    Xoshiro256ss rng(833);
    for (int trial = 0; trial < 200; ++trial) {
        RuleVector rv;
        rv.rules.resize(static_cast<std::size_t>(n));
        RingConfiguration c(n);
        for (int i = 0; i < n; ++i) {
            rv.rules[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rng.next_below(16));
            c.set_cell(i, rng.next_bit());
        }
        for (int k = 0; k < p; ++k) {
            rv.rules[static_cast<std::size_t>(offset + k)] = spec.phi[static_cast<std::size_t>(k)];
            c.set_cell(offset + k, (spec.b_states[0] >> k) & 1);
        }
        const bool settled = c.cell(offset + *spec.center - 1);
        const StepMasks masks(rv);
        RingConfiguration s(n);
        for (int t = 0; t < 32; ++t) {
            masks.step(c, s);
            std::swap(c, s);
            CHECK(c.cell(offset + *spec.center - 1) == settled);
        }
    }
}

TEST_CASE("a witness survives in any superset support") {
    const BlockSpec want = BlockSpec::parse("2,4", "00");
    for (int extra : {0, 7, 11}) {
        const auto found = search_impermeable(Support{2, 4, extra}, 2);
        CHECK(std::count(found.begin(), found.end(), want) == 1);
    }
}

TEST_CASE("minimality spot checks") {
    CHECK(search_impermeable(Support{2}, 4).empty());
    CHECK(search_impermeable(Support{9}, 4).empty());
    CHECK(!search_impermeable(Support{2, 9}, 4).empty());
}

TEST_CASE("dichotomy golden and mutated collections") {
    CHECK(dichotomy_check(known_g_sets(), known_b_sets()).pass);

    std::vector<Support> b_missing(known_b_sets().begin(), known_b_sets().end());
    std::erase(b_missing, Support{2, 3, 6});
    const DichotomyResult broken_b = dichotomy_check(known_g_sets(), b_missing);
    CHECK(!broken_b.pass);
    CHECK(std::count(broken_b.uncovered.begin(), broken_b.uncovered.end(),
                     Support{2, 3, 6}.mask) == 1);

    std::vector<Support> g_missing(known_g_sets().begin(), known_g_sets().end());
    std::erase(g_missing, Support{0});
    const DichotomyResult broken_g = dichotomy_check(g_missing, known_b_sets());
    CHECK(!broken_g.pass);
    CHECK(std::count(broken_g.uncovered.begin(), broken_g.uncovered.end(), Support{0}.mask) == 1);
}

TEST_CASE("classification examples") {
    CHECK(theorem1_classify(Support{6}).status == SigmaStarStatus::Zero);
    CHECK(theorem1_classify(Support{6, 9}).evidence == "subset of {3,6,9,12}");
    const auto all = theorem1_classify(Support(static_cast<std::uint16_t>(0xffff)));
    CHECK(all.status == SigmaStarStatus::Positive);
    CHECK(all.evidence.find("{0}") != std::string::npos);
    const auto s23 = theorem1_classify(Support{2, 3});
    CHECK(s23.status == SigmaStarStatus::Positive);
    CHECK(s23.evidence.find("absorbing") != std::string::npos);
    CHECK_THROWS_AS(theorem1_classify(Support()), std::invalid_argument);
}

TEST_CASE("classification matches the exceptional-subset rule on every support") {
    for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
        const Support s(static_cast<std::uint16_t>(mask));
        bool exceptional = false;
        for (Support z : sigma_star_zero_supports()) exceptional = exceptional || s.subset_of(z);
        const auto v = theorem1_classify(s);
        REQUIRE(v.status == (exceptional ? SigmaStarStatus::Zero : SigmaStarStatus::Positive));
        if (v.status == SigmaStarStatus::Positive) REQUIRE(v.witness.has_value());
    }
}

TEST_CASE("every distinct classification witness is sound") {
    std::map<std::string, BlockSpec> distinct;
    for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
        const auto v = theorem1_classify(Support(static_cast<std::uint16_t>(mask)));
        if (!v.witness) continue;
        REQUIRE(v.witness->support().subset_of(Support(static_cast<std::uint16_t>(mask))));
        distinct.emplace(to_string(*v.witness), *v.witness);
    }
    for (const auto& [key, spec] : distinct) {
        const BlockVerdict verdict = analyze_block(spec);
        if (spec.center) {
            CHECK(verdict.kind == BlockKind::Absorbing);
            CHECK(verdict.center_constant); // what forces sigma_* > 0
        } else {
            CHECK(verdict.kind == BlockKind::Impermeable);
        }
    }
}

TEST_CASE("block transforms") {
    const BlockSpec spec = BlockSpec::parse("2,9,9,2", "0010", 2);
    const BlockSpec m = mirror(spec);
    CHECK(m.phi == std::vector<std::uint8_t>{11, 6, 6, 11});
    CHECK(m.b_states[0] == (~spec.b_states[0] & 0xfu));
    CHECK(m.center == 2);

    const BlockSpec r = reverse(spec);
    CHECK(r.phi == std::vector<std::uint8_t>{4, 9, 9, 4});
    CHECK(r.center == 3);
    CHECK(mirror(mirror(spec)) == spec);
    CHECK(reverse(reverse(spec)) == spec);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(BlockSpec::parse("2,9", "001"), std::invalid_argument);
    CHECK_THROWS_AS(BlockSpec::parse("2,9", "0x"), std::invalid_argument);
    CHECK_THROWS_AS(BlockSpec::parse("2,9", "00", 3), std::invalid_argument);
    CHECK_THROWS_AS(analyze_block(BlockSpec{{2, 9}, {}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(analyze_block(BlockSpec{{2, 9}, {7}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(search_impermeable(Support(), 4), std::invalid_argument);
    CHECK_THROWS_AS(search_absorbing(Support{2, 3}, 2, false), std::invalid_argument);
}
