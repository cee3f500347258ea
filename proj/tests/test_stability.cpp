#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rbca/blocks.hpp"
#include "rbca/cone.hpp"
#include "rbca/errors.hpp"
#include "rbca/stability.hpp"
#include "rbca/stats.hpp"

using namespace rbca;

TEST_CASE("gamma tail against reference values") {
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)); };
    CHECK(close(regularized_gamma_upper(0.5, 0.25), 0.479500122186953));
    CHECK(close(regularized_gamma_upper(0.5, 2.0), 0.0455002638963586));
    CHECK(close(regularized_gamma_upper(4.0, 1.0), 0.981011843123846));
    CHECK(close(regularized_gamma_upper(4.0, 9.0), 0.0212264863029089));
    CHECK(close(regularized_gamma_upper(255.5, 255.5), 0.491680394766307));
    CHECK(close(regularized_gamma_upper(255.5, 300.0), 0.00393524803817316));
    CHECK(close(chi_square_pvalue(511.0, 511), 0.491680394766307));
    CHECK(close(chi_square_pvalue(600.77, 511), 0.00368968917236603));
    CHECK(close(chi_square_pvalue(16.92, 9), 0.0499836063875056));
    CHECK(close(chi_square_pvalue(3.0, 7), 0.885002231643151));
}

TEST_CASE("point mass on a wall stabilizes everything") {
    const SigmaEstimate est = estimate_sigma(17, RuleDistribution::point_mass(0), 200, 5);
    CHECK(est.estimate == 1.0);
    CHECK(est.stderr_value == 0.0);
}

TEST_CASE("estimate is reproducible bit for bit across thread counts") {
    const RuleDistribution d = RuleDistribution::uniform();
    EstimateOptions one;
    one.threads = 1;
    EstimateOptions four;
    four.threads = 4;
    const SigmaEstimate a = estimate_sigma(24, d, 600, 99, one);
    const SigmaEstimate b = estimate_sigma(24, d, 600, 99, four);
    CHECK(a.estimate == b.estimate);
    CHECK(a.stderr_value == b.stderr_value);
}

TEST_CASE("estimate agrees with the exact enumerator on small instances") {
    struct Case {
        int n;
        Support support;
    };
    for (const Case& c : {Case{5, Support{2, 10}}, Case{6, Support{0, 6}}, Case{4, Support{3, 5, 8}}}) {
        const SigmaEstimate exact = exact_sigma(c.n, c.support);
        const SigmaEstimate mc =
            estimate_sigma(c.n, RuleDistribution::uniform_on(c.support), 4000, 1234);
        const double gap = std::abs(exact.estimate - mc.estimate);
        CHECK(gap <= 4.0 * std::max(mc.stderr_value, 1e-4));
    }
}

TEST_CASE("closed forms on shift-like supports") {
    for (int n : {3, 7, 12}) {
        const SigmaEstimate est = exact_sigma(n, Support{12});
        CHECK(est.numerator == 1);
        CHECK(est.denominator == (std::uint64_t(1) << (n - 1)));
    }
    for (int n : {3, 5, 9, 13}) CHECK(exact_sigma(n, Support{3}).numerator == 0);
    for (int n : {4, 8}) {
        const SigmaEstimate est = exact_sigma(n, Support{3});
        CHECK(est.numerator == 1);
        CHECK(est.denominator == (std::uint64_t(1) << (n - 1)));
    }
    for (int n : {3, 6, 10}) {
        const SigmaEstimate est = exact_sigma(n, Support{3, 12});
        CHECK(est.numerator * (std::uint64_t(1) << (n - 1)) <= est.denominator);
    }
}

TEST_CASE("fraction strings") {
    CHECK(exact_sigma(8, Support{12}).fraction_string() == "1/2^7");
    const SigmaEstimate full = exact_sigma(3, Support{2, 6, 10});
    CHECK(full.denominator != 0);
    CHECK(full.estimate == doctest::Approx(static_cast<double>(full.numerator) /
                                           static_cast<double>(full.denominator)));
}

TEST_CASE("rotation reduction matches the unreduced enumerator") {
    ExactOptions reduced;
    ExactOptions plain;
    plain.rotation_reduction = false;
    for (int n : {4, 5}) {
        for (Support s : {Support{2, 10}, Support{0, 5, 9}, Support{3, 6, 9, 12}}) {
            const SigmaEstimate a = exact_sigma(n, s, reduced);
            const SigmaEstimate b = exact_sigma(n, s, plain);
            CHECK(a.numerator == b.numerator);
            CHECK(a.denominator == b.denominator);
        }
    }
    const SigmaEstimate a = exact_sigma(4, Support(static_cast<std::uint16_t>(0xffff)), reduced);
    const SigmaEstimate b = exact_sigma(4, Support(static_cast<std::uint16_t>(0xffff)), plain);
    CHECK(a.numerator == b.numerator);
    CHECK(a.denominator == b.denominator);
}

TEST_CASE("sigma is invariant under support symmetries") {
    for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
        const Support s(static_cast<std::uint16_t>(mask));
        if (s.size() > 2) continue;
        const SigmaEstimate base = exact_sigma(6, s);
        for (Support image : {mirror(s), reverse(s)}) {
            const SigmaEstimate v = exact_sigma(6, image);
            CHECK(v.numerator == base.numerator);
            CHECK(v.denominator == base.denominator);
        }
    }
    for (Support s : {Support{2, 3, 6}, Support{0, 7, 11}}) {
        const SigmaEstimate base = exact_sigma(5, s);
        const SigmaEstimate m = exact_sigma(5, mirror(s));
        CHECK(m.numerator == base.numerator);
        CHECK(m.denominator == base.denominator);
    }
}

TEST_CASE("work budget is enforced") {
    ExactOptions options;
    options.work_budget = 1000;
    CHECK_THROWS_AS(exact_sigma(8, Support{0, 1, 2, 3}, options), BudgetExceeded);
    try {
        exact_sigma(8, Support{0, 1, 2, 3}, options);
    } catch (const BudgetExceeded& e) {
        CHECK(e.required == (std::uint64_t(1) << 24)); // 4^8 * 2^8
        CHECK(e.budget == 1000);
    }
}

TEST_CASE("horizon cap failures propagate") {
    EstimateOptions options;
    options.horizon_cap = 1;
    CHECK_THROWS_AS(estimate_sigma(6, RuleDistribution::point_mass(6), 50, 11, options),
                    CycleNotFound);
}

TEST_CASE("rule6 checks pass") {
    const CheckReport report = rule6_checks(4, 7);
    CHECK(report.pass);
    CHECK(report.lines.size() == 8);
}

TEST_CASE("wall bound with all mass on walls") {
    const CheckReport report =
        wall_bound_check(RuleDistribution::uniform_on(Support{0, 15}), {10, 20}, 300, 3);
    CHECK(report.pass);
    CHECK_THROWS_AS(wall_bound_check(RuleDistribution::point_mass(6), {10}, 10, 3),
                    std::invalid_argument);
}

TEST_CASE("mixing covariance") {
    // all walls: Z is identically 1, covariance 0 at every lag
    const MixingReport walls =
        mixing_check(40, RuleDistribution::point_mass(0), 500, {0, 5, 20}, 0.01, 21);
    CHECK(walls.check.pass);
    CHECK(walls.covariances[1] == 0.0);
    CHECK(walls.covariances[2] == 0.0);

    // uniform: lag-0 covariance is the variance sigma(1-sigma)
    const MixingReport uniform =
        mixing_check(120, RuleDistribution::uniform(), 20000, {0, 40}, 0.01, 22);
    CHECK(uniform.check.pass);
    const SigmaEstimate est = estimate_sigma(120, RuleDistribution::uniform(), 20000, 22);
    const double expected_var = est.estimate * (1.0 - est.estimate);
    CHECK(std::abs(uniform.covariances[0] - expected_var) < 0.02);
}

TEST_CASE("cylinder probabilities at horizon 1 by exhaustive window enumeration") {
    // oracle: sum over every (rule, three initial bits) assignment of the
    // window; each length-2 cylinder must carry probability exactly 1/4
    for (Support support : {Support{6}, Support{3, 12}, Support{3, 6, 9, 12}}) {
        const auto members = support.members();
        double prob[4] = {0, 0, 0, 0};
        const double weight = 1.0 / (8.0 * static_cast<double>(members.size()));
        for (int rule : members) {
            for (int bits = 0; bits < 8; ++bits) {
                const int left = bits & 1, mid = (bits >> 1) & 1, right = (bits >> 2) & 1;
                const int next = apply(Rule(rule), left, right);
                prob[mid | (next << 1)] += weight;
            }
        }
        for (double p : prob) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("cylinder uniformity test and its negative control") {
    const CylinderTestReport good = affine_cylinder_test(Support{3, 6, 9, 12}, 4, 20000, 31);
    CHECK(!good.base.rejected(0.001));
    CHECK(!good.shifted.rejected(0.001));

    const CylinderTestReport shift_only = affine_cylinder_test(Support{12}, 3, 20000, 32);
    CHECK(!shift_only.base.rejected(0.001));

    const CylinderTestReport control = affine_cylinder_test(Support{0}, 4, 20000, 33);
    CHECK(control.base.rejected(0.001));
}

TEST_CASE("shift pattern checks") {
    CHECK(shift_pattern_check(Support{2}, 12, 0, 0).pass);
    CHECK(shift_pattern_check(Support{2}, 40, 200, 51).pass);
    CHECK(shift_pattern_check(Support{2, 10}, 60, 50, 52).pass);
    CHECK_THROWS_AS(shift_pattern_check(Support{6}, 12, 10, 0), std::invalid_argument);
}

TEST_CASE("constancy decay for exceptional supports") {
    const DecayReport affine = zero_sigma_decay_check(Support{6}, {2, 4, 8, 16, 32}, 20000, 1e-3, 61);
    CHECK(affine.check.pass);

    const DecayReport shift_pair =
        zero_sigma_decay_check(Support{2, 10}, {2, 4, 8, 16, 32}, 20000, 0.1, 62);
    CHECK(shift_pair.check.pass);

    // negative control: a wall never decays, so the check must fail
    const DecayReport wall = zero_sigma_decay_check(Support{0}, {2, 4, 8}, 2000, 0.5, 63);
    CHECK(!wall.check.pass);
    for (const auto& point : wall.points) CHECK(point.probability == 1.0);

    CHECK_THROWS_AS(zero_sigma_decay_check(Support(), {2, 4}, 100, 0.5, 64),
                    std::invalid_argument);
}

TEST_CASE("distribution parsing and sampling guards") {
    CHECK_THROWS_AS(RuleDistribution::uniform_on(Support()), std::invalid_argument);
    std::array<double, 16> w{};
    w[2] = 0.5;
    w[3] = 0.5 + 1e-9;
    CHECK_THROWS_AS(RuleDistribution::from_weights(w), std::invalid_argument);
    w[3] = 0.5;
    const RuleDistribution d = RuleDistribution::from_weights(w);
    CHECK(d.support() == Support{2, 3});
    CHECK(d.wall_mass() == 0.0);
    Xoshiro256ss rng(77);
    for (int i = 0; i < 100; ++i) {
        const int j = d.sample(rng);
        CHECK((j == 2 || j == 3));
    }
}
