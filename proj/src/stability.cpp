#include "rbca/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rbca/blocks.hpp"
#include "rbca/cone.hpp"
#include "rbca/errors.hpp"
#include "rbca/parallel.hpp"

namespace rbca {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Transition function of a ring small enough to pack one configuration into
// a machine word; used by exhaustive enumeration.
struct SmallRing {
    int n = 0;
    std::uint32_t mask = 0;
    std::uint32_t m00 = 0, m01 = 0, m10 = 0, m11 = 0;

    SmallRing(int n, std::span<const std::uint8_t> rules) : n(n) {
        mask = (n == 32) ? ~0u : ((std::uint32_t(1) << n) - 1);
        for (int i = 0; i < n; ++i) {
            Rule r(rules[static_cast<std::size_t>(i)]);
            const std::uint32_t bit = std::uint32_t(1) << i;
            if (r.apply(0, 0)) m00 |= bit;
            if (r.apply(0, 1)) m01 |= bit;
            if (r.apply(1, 0)) m10 |= bit;
            if (r.apply(1, 1)) m11 |= bit;
        }
    }

    std::uint32_t next(std::uint32_t c) const {
        const std::uint32_t left = ((c << 1) & mask) | (c >> (n - 1));
        const std::uint32_t right = (c >> 1) | ((c & 1) << (n - 1));
        return ((~left & ~right & m00) | (~left & right & m01) | (left & ~right & m10) |
                (left & right & m11)) & mask;
    }
};

std::uint64_t ipow_checked(std::uint64_t base, int exp, bool& overflow) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && out > ~std::uint64_t(0) / base) {
            overflow = true;
            return 0;
        }
        out *= base;
    }
    return out;
}

// Stable cells from every initial configuration of one fixed rule vector:
// the stable count of an initial is the number of positions on which all
// configurations of its eventual cycle agree.
struct GraphScratch {
    std::vector<std::uint32_t> next;
    std::vector<std::uint8_t> color; // 0 new, 1 on path, 2 resolved
    std::vector<std::uint16_t> value;
    std::vector<std::uint32_t> path;
};

std::uint64_t stable_cells_all_initials(const SmallRing& ring, GraphScratch& ws) {
    const std::size_t states = std::size_t(1) << ring.n;
    ws.next.resize(states);
    ws.color.assign(states, 0);
    ws.value.resize(states);
    for (std::size_t c = 0; c < states; ++c)
        ws.next[c] = ring.next(static_cast<std::uint32_t>(c));

    std::uint64_t total = 0;
    for (std::size_t c0 = 0; c0 < states; ++c0) {
        if (ws.color[c0] == 2) {
            total += ws.value[c0];
            continue;
        }
        ws.path.clear();
        std::uint32_t u = static_cast<std::uint32_t>(c0);
        while (ws.color[u] == 0) {
            ws.color[u] = 1;
            ws.path.push_back(u);
            u = ws.next[u];
        }
        std::uint16_t value;
        if (ws.color[u] == 1) {
            // closed a fresh cycle: agreement mask over its configurations
            std::size_t idx = ws.path.size();
            while (ws.path[idx - 1] != u) --idx;
            --idx;
            std::uint32_t and_all = ring.mask, or_all = 0;
            for (std::size_t i = idx; i < ws.path.size(); ++i) {
                and_all &= ws.path[i];
                or_all |= ws.path[i];
            }
            value = static_cast<std::uint16_t>(
                __builtin_popcount(ring.mask & ~(and_all ^ or_all)));
        } else {
            value = ws.value[u];
        }
        for (std::uint32_t node : ws.path) {
            ws.color[node] = 2;
            ws.value[node] = value;
        }
        total += ws.value[c0];
    }
    return total;
}

// rule vectors packed one 4-bit digit per cell, for rotation bookkeeping
std::uint64_t pack_digits(const std::vector<int>& digits) {
    std::uint64_t packed = 0;
    for (std::size_t i = 0; i < digits.size(); ++i)
        packed |= static_cast<std::uint64_t>(digits[i]) << (4 * i);
    return packed;
}

std::uint64_t rotate_digits(std::uint64_t packed, int n) {
    const std::uint64_t mask = (n == 16) ? ~std::uint64_t(0) : ((std::uint64_t(1) << (4 * n)) - 1);
    return ((packed >> 4) | (packed << (4 * (n - 1)))) & mask;
}

} // namespace

bool SigmaEstimate::dyadic() const {
    return denominator != 0 && (denominator & (denominator - 1)) == 0;
}

std::string SigmaEstimate::fraction_string() const {
    if (denominator == 0) return "";
    if (dyadic()) {
        int q = 0;
        std::uint64_t d = denominator;
        while (d > 1) {
            d >>= 1;
            ++q;
        }
        return std::to_string(numerator) + "/2^" + std::to_string(q);
    }
    return std::to_string(numerator) + "/" + std::to_string(denominator);
}

void CheckReport::record(bool ok, std::string line) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + std::move(line));
}

std::string CheckReport::summary() const {
    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

SigmaEstimate estimate_sigma(int n, const RuleDistribution& distribution, std::uint64_t samples,
                             std::uint64_t seed, const EstimateOptions& options) {
    if (n < 2) throw std::invalid_argument("ring size must be at least 2");
    if (samples < 1) throw std::invalid_argument("need at least one replica");

    RunOptions run_options;
    run_options.max_steps = options.horizon_cap;

    const int threads = resolve_threads(options.threads);
    std::vector<std::uint64_t> sums(static_cast<std::size_t>(threads), 0);
    std::vector<std::uint64_t> squares(static_cast<std::size_t>(threads), 0);

    parallel_chunks(static_cast<std::int64_t>(samples), threads,
                    [&](int chunk, std::int64_t begin, std::int64_t end) {
                        for (std::int64_t r = begin; r < end; ++r) {
                            Xoshiro256ss rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
                            RuleVector rules;
                            rules.rules.resize(static_cast<std::size_t>(n));
                            for (auto& rule : rules.rules)
                                rule = static_cast<std::uint8_t>(distribution.sample(rng));
                            RingConfiguration init(n);
                            for (int i = 0; i < n; ++i) init.set_cell(i, rng.next_bit());
                            const CycleSummary summary = run_until_cycle(init, rules, run_options);
                            const std::uint64_t k =
                                static_cast<std::uint64_t>(summary.stable_count());
                            sums[static_cast<std::size_t>(chunk)] += k;
                            squares[static_cast<std::size_t>(chunk)] += k * k;
                        }
                    });

    const std::uint64_t sum_k = std::accumulate(sums.begin(), sums.end(), std::uint64_t(0));
    const std::uint64_t sum_k2 = std::accumulate(squares.begin(), squares.end(), std::uint64_t(0));

    SigmaEstimate out;
    out.n = n;
    out.samples = samples;
    out.seed = seed;
    out.mode = SigmaMode::MonteCarlo;
    const double m = static_cast<double>(samples);
    const double nn = static_cast<double>(n);
    out.estimate = static_cast<double>(sum_k) / (m * nn);
    if (samples > 1) {
        const double sum_f = static_cast<double>(sum_k) / nn;
        const double sum_f2 = static_cast<double>(sum_k2) / (nn * nn);
        double variance = (sum_f2 - sum_f * sum_f / m) / (m - 1.0);
        variance = std::max(variance, 0.0);
        out.stderr_value = std::sqrt(variance / m);
        out.ci95 = kZ95 * out.stderr_value;
    }
    return out;
}

SigmaEstimate exact_sigma(int n, Support support, const ExactOptions& options) {
    if (n < 2 || n > 24) throw std::invalid_argument("exact enumeration supports n in 2..24");
    if (support.empty()) throw std::invalid_argument("support must be nonempty");

    const std::vector<int> members = support.members();
    const std::uint64_t m = members.size();

    bool overflow = false;
    const std::uint64_t vector_count = ipow_checked(m, n, overflow);
    const std::uint64_t initials = std::uint64_t(1) << n;
    if (overflow || vector_count > options.work_budget / initials)
        throw BudgetExceeded(overflow ? ~std::uint64_t(0) : vector_count * initials,
                             options.work_budget);

    const bool reduce = options.rotation_reduction && n <= 16;
    const int threads = resolve_threads(options.threads);
    std::vector<std::uint64_t> totals(static_cast<std::size_t>(threads), 0);

    parallel_chunks(static_cast<std::int64_t>(vector_count), threads,
                    [&](int chunk, std::int64_t begin, std::int64_t end) {
                        GraphScratch scratch;
                        std::vector<int> digits(static_cast<std::size_t>(n));
                        std::vector<std::uint8_t> rules(static_cast<std::size_t>(n));
                        for (std::int64_t idx = begin; idx < end; ++idx) {
                            std::uint64_t rest = static_cast<std::uint64_t>(idx);
                            for (int i = 0; i < n; ++i) {
                                digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % m);
                                rest /= m;
                            }
                            std::uint64_t weight = 1;
                            if (reduce) {
                                const std::uint64_t packed = pack_digits(digits);
                                std::uint64_t rot = packed;
                                int equal = 0;
                                bool minimal = true;
                                for (int k = 0; k < n; ++k) {
                                    if (rot < packed) {
                                        minimal = false;
                                        break;
                                    }
                                    if (rot == packed) ++equal;
                                    rot = rotate_digits(rot, n);
                                }
                                if (!minimal) continue;
                                weight = static_cast<std::uint64_t>(n / equal);
                            }
                            for (int i = 0; i < n; ++i)
                                rules[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
                                    members[static_cast<std::size_t>(
                                        digits[static_cast<std::size_t>(i)])]);
                            const SmallRing ring(n, rules);
                            totals[static_cast<std::size_t>(chunk)] +=
                                weight * stable_cells_all_initials(ring, scratch);
                        }
                    });

    const std::uint64_t total = std::accumulate(totals.begin(), totals.end(), std::uint64_t(0));

    SigmaEstimate out;
    out.n = n;
    out.samples = vector_count * initials;
    out.seed = 0;
    out.mode = SigmaMode::Exact;
    std::uint64_t num = total;
    std::uint64_t den = vector_count * initials * static_cast<std::uint64_t>(n);
    const std::uint64_t g = std::gcd(num, den);
    out.numerator = g ? num / g : num;
    out.denominator = g ? den / g : den;
    out.estimate = static_cast<double>(num) / static_cast<double>(den);
    return out;
}

CheckReport rule6_checks(int p_max, std::uint64_t seed) {
    if (p_max < 1 || p_max > 4)
        throw std::invalid_argument("p_max must be in 1..4 for exhaustive checking");
    CheckReport report;

    // (a) n = 2^p: every initial is at all-zero by time n
    for (int p = 1; p <= p_max; ++p) {
        const int n = 1 << p;
        const std::vector<std::uint8_t> rules(static_cast<std::size_t>(n), 6);
        const SmallRing ring(n, rules);
        bool ok = true;
        for (std::uint32_t c = 0; c < (std::uint32_t(1) << n) && ok; ++c) {
            std::uint32_t u = c;
            for (int t = 0; t < n; ++t) u = ring.next(u);
            ok = u == 0;
        }
        report.record(ok, "n=" + std::to_string(n) + ": every initial reaches all-zero by t=n");
    }

    // (b) n = 2^p + 1, p >= 2: the flip fraction between t=n-1 and t=n is 1/2
    for (int p = 2; p <= p_max; ++p) {
        const int n = (1 << p) + 1;
        const std::vector<std::uint8_t> rules(static_cast<std::size_t>(n), 6);
        const SmallRing ring(n, rules);
        std::uint64_t flips = 0;
        const std::uint64_t initials = std::uint64_t(1) << n;
        for (std::uint64_t c = 0; c < initials; ++c) {
            std::uint32_t u = static_cast<std::uint32_t>(c);
            for (int t = 0; t < n - 1; ++t) u = ring.next(u);
            const std::uint32_t v = ring.next(u);
            flips += (u ^ v) & 1;
        }
        const bool ok = flips * 2 == initials;
        report.record(ok, "n=" + std::to_string(n) + ": flip fraction between t=n-1 and t=n is " +
                              std::to_string(flips) + "/" + std::to_string(initials));
    }

    // (c) X_0(n + 2^m - 2) = X_{-2^m}(0) + X_{2^m}(0) on random initials
    {
        const int p = std::max(p_max, 2);
        const int n = (1 << p) + 1;
        const std::vector<std::uint8_t> rules(static_cast<std::size_t>(n), 6);
        const SmallRing ring(n, rules);
        bool ok = true;
        Xoshiro256ss rng(seed);
        for (int trial = 0; trial < 1000 && ok; ++trial) {
            const std::uint32_t init = static_cast<std::uint32_t>(rng.next()) & ring.mask;
            for (int mm = 0; mm <= 3 && ok; ++mm) {
                const int offset = 1 << mm;
                const int t = n + offset - 2;
                std::uint32_t u = init;
                for (int s = 0; s < t; ++s) u = ring.next(u);
                const int lhs = u & 1;
                const int rhs = (((init >> ((n - offset % n) % n)) & 1) ^
                                 ((init >> (offset % n)) & 1));
                ok = lhs == rhs;
            }
        }
        report.record(ok, "n=" + std::to_string(n) +
                              ": X_0(n+2^m-2) = X_{-2^m}(0)+X_{2^m}(0) for m=0..3");
    }
    return report;
}

CheckReport wall_bound_check(const RuleDistribution& distribution, const std::vector<int>& n_list,
                             std::uint64_t samples, std::uint64_t seed,
                             const EstimateOptions& options) {
    const double w = distribution.wall_mass();
    if (w <= 0.0) throw std::invalid_argument("distribution must give walls positive mass");
    if (n_list.empty()) throw std::invalid_argument("need at least one ring size");

    CheckReport report;
    std::vector<SigmaEstimate> estimates;
    for (std::size_t i = 0; i < n_list.size(); ++i)
        estimates.push_back(estimate_sigma(n_list[i], distribution, samples,
                                           derive_seed(seed, i), options));

    for (const auto& est : estimates)
        report.record(est.estimate >= w - 1e-12,
                      "n=" + std::to_string(est.n) + ": estimate " + format_double(est.estimate) +
                          " >= wall mass " + format_double(w));

    for (std::size_t a = 0; a < estimates.size(); ++a) {
        for (std::size_t b = a + 1; b < estimates.size(); ++b) {
            const int min_n = std::min(estimates[a].n, estimates[b].n);
            const double bound = 4.0 * std::pow(1.0 - w, min_n / 2.0) + estimates[a].ci95 +
                                 estimates[b].ci95;
            const double gap = std::abs(estimates[a].estimate - estimates[b].estimate);
            report.record(gap <= bound, "gap(n=" + std::to_string(estimates[a].n) +
                                            ", n=" + std::to_string(estimates[b].n) + ") = " +
                                            format_double(gap) + " <= " + format_double(bound));
        }
    }
    return report;
}

MixingReport mixing_check(int n, const RuleDistribution& distribution, std::uint64_t samples,
                          const std::vector<int>& lags, double threshold, std::uint64_t seed,
                          const EstimateOptions& options) {
    if (distribution.wall_mass() <= 0.0)
        throw std::invalid_argument("distribution must give walls positive mass");
    if (lags.empty()) throw std::invalid_argument("need at least one lag");
    for (int lag : lags)
        if (lag < 0 || lag >= n) throw std::invalid_argument("lags must lie in [0, n)");
    if (samples < 2) throw std::invalid_argument("need at least two replicas");

    RunOptions run_options;
    run_options.max_steps = options.horizon_cap;
    const int threads = resolve_threads(options.threads);
    const std::size_t L = lags.size();

    std::vector<std::uint64_t> c0(static_cast<std::size_t>(threads), 0);
    std::vector<std::vector<std::uint64_t>> cl(static_cast<std::size_t>(threads),
                                               std::vector<std::uint64_t>(L, 0));
    std::vector<std::vector<std::uint64_t>> c0l(static_cast<std::size_t>(threads),
                                                std::vector<std::uint64_t>(L, 0));

    parallel_chunks(static_cast<std::int64_t>(samples), threads,
                    [&](int chunk, std::int64_t begin, std::int64_t end) {
                        for (std::int64_t r = begin; r < end; ++r) {
                            Xoshiro256ss rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
                            RuleVector rules;
                            rules.rules.resize(static_cast<std::size_t>(n));
                            for (auto& rule : rules.rules)
                                rule = static_cast<std::uint8_t>(distribution.sample(rng));
                            RingConfiguration init(n);
                            for (int i = 0; i < n; ++i) init.set_cell(i, rng.next_bit());
                            const CycleSummary summary = run_until_cycle(init, rules, run_options);
                            const std::uint64_t z0 = summary.stable[0];
                            c0[static_cast<std::size_t>(chunk)] += z0;
                            for (std::size_t k = 0; k < L; ++k) {
                                const std::uint64_t zl =
                                    summary.stable[static_cast<std::size_t>(lags[k])];
                                cl[static_cast<std::size_t>(chunk)][k] += zl;
                                c0l[static_cast<std::size_t>(chunk)][k] += z0 & zl;
                            }
                        }
                    });

    std::uint64_t z0_total = std::accumulate(c0.begin(), c0.end(), std::uint64_t(0));
    MixingReport out;
    const double m = static_cast<double>(samples);
    for (std::size_t k = 0; k < L; ++k) {
        std::uint64_t zl_total = 0, joint_total = 0;
        for (int t = 0; t < threads; ++t) {
            zl_total += cl[static_cast<std::size_t>(t)][k];
            joint_total += c0l[static_cast<std::size_t>(t)][k];
        }
        const double cov = static_cast<double>(joint_total) / m -
                           (static_cast<double>(z0_total) / m) * (static_cast<double>(zl_total) / m);
        out.covariances.push_back(cov);
        if (lags[k] == 0) {
            out.check.record(true, "lag 0: variance " + format_double(cov));
        } else {
            out.check.record(std::abs(cov) < threshold,
                             "lag " + std::to_string(lags[k]) + ": |cov| = " +
                                 format_double(std::abs(cov)) + " < " + format_double(threshold));
        }
    }
    return out;
}

CylinderTestReport affine_cylinder_test(Support support, int horizon, std::uint64_t samples,
                                        std::uint64_t seed) {
    if (support.empty()) throw std::invalid_argument("support must be nonempty");
    if (horizon < 0 || horizon > 20) throw std::invalid_argument("horizon must be in 0..20");
    if (samples < 1) throw std::invalid_argument("need at least one sample");

    const RuleDistribution distribution = RuleDistribution::uniform_on(support);
    const std::size_t cells = std::size_t(1) << (horizon + 1);
    const int threads = resolve_threads(0);

    auto run = [&](int window_horizon, int start, std::uint64_t stream_offset) {
        std::vector<std::vector<std::uint64_t>> counts(
            static_cast<std::size_t>(threads), std::vector<std::uint64_t>(cells, 0));
        parallel_chunks(static_cast<std::int64_t>(samples), threads,
                        [&](int chunk, std::int64_t begin, std::int64_t end) {
                            for (std::int64_t s = begin; s < end; ++s) {
                                const ConeTrajectory cone = sample_cone(
                                    distribution, window_horizon,
                                    derive_seed(seed, stream_offset + static_cast<std::uint64_t>(s)));
                                std::size_t pattern = 0;
                                for (int t = 0; t <= horizon; ++t)
                                    pattern |= static_cast<std::size_t>(
                                                   cone.values[static_cast<std::size_t>(start + t)])
                                               << t;
                                ++counts[static_cast<std::size_t>(chunk)][pattern];
                            }
                        });
        std::vector<std::uint64_t> merged(cells, 0);
        for (const auto& local : counts)
            for (std::size_t i = 0; i < cells; ++i) merged[i] += local[i];
        return chi_square_uniform(merged);
    };

    CylinderTestReport out;
    out.samples = samples;
    out.base = run(horizon, 0, 0);
    out.shifted = run(horizon + 1, 1, samples);
    return out;
}

namespace {

// longest circular run of ones; n if the ring is all ones
int longest_one_run(const RingConfiguration& config) {
    const int n = config.size();
    int longest = 0, current = 0;
    for (int i = 0; i < 2 * n; ++i) { // wrap once around
        if (config.cell(i % n)) {
            ++current;
            if (current >= n) return n;
            longest = std::max(longest, current);
        } else {
            current = 0;
        }
    }
    return longest;
}

} // namespace

CheckReport shift_pattern_check(Support support, int n, std::uint64_t samples, std::uint64_t seed) {
    CheckReport report;
    if (support == Support{2}) {
        if (n <= 16) {
            // every state at t >= 1 is the image of a step, so checking the
            // whole image of the transition function covers all initials and
            // all times at once
            const std::vector<std::uint8_t> rules(static_cast<std::size_t>(n), 2);
            const SmallRing ring(n, rules);
            bool ok = true;
            for (std::uint32_t c = 0; c <= ring.mask && ok; ++c) {
                const std::uint32_t u = ring.next(c);
                const std::uint32_t two_right = ((u >> 2) | ((u & 3) << (n - 2))) & ring.mask;
                ok = (u & two_right) == 0;
            }
            report.record(ok, "support {2}, n=" + std::to_string(n) +
                                  ": no 1*1 pattern anywhere in the step image (exhaustive)");
        } else {
            const RuleVector rules(n, 2);
            bool ok = true;
            for (std::uint64_t s = 0; s < samples && ok; ++s) {
                const RingConfiguration init = random_configuration(n, derive_seed(seed, s));
                const RingConfiguration next = step(init, rules);
                const RingConfiguration two = next.shifted_from_right().shifted_from_right();
                for (int i = 0; i < n && ok; ++i) ok = !(next.cell(i) && two.cell(i));
            }
            report.record(ok, "support {2}, n=" + std::to_string(n) +
                                  ": no 1*1 pattern after one step (sampled)");
        }
    } else if (support == Support{2, 10}) {
        bool ok = true;
        std::int64_t burn_in = 2 * n;
        for (std::uint64_t s = 0; s < samples && ok; ++s) {
            Xoshiro256ss rng(derive_seed(seed, s));
            RuleVector rules;
            rules.rules.resize(static_cast<std::size_t>(n));
            bool has_two = false;
            do {
                has_two = false;
                for (auto& r : rules.rules) {
                    r = rng.next_bit() ? 10 : 2;
                    has_two = has_two || r == 2;
                }
            } while (!has_two); // rule 2 occurs somewhere with probability 1
            RingConfiguration config(n);
            for (int i = 0; i < n; ++i) config.set_cell(i, rng.next_bit());
            const StepMasks masks(rules);
            RingConfiguration scratch(n);
            for (std::int64_t t = 0; t < burn_in; ++t) {
                masks.step(config, scratch);
                std::swap(config, scratch);
            }
            for (int t = 0; t < 8 && ok; ++t) {
                ok = longest_one_run(config) <= 2;
                masks.step(config, scratch);
                std::swap(config, scratch);
            }
        }
        report.record(ok, "support {2,10}, n=" + std::to_string(n) +
                              ": all runs of 1s have length <= 2 after burn-in");
    } else {
        throw std::invalid_argument("shift pattern check applies to supports {2} and {2,10}");
    }
    return report;
}

DecayReport zero_sigma_decay_check(Support support, const std::vector<int>& horizons,
                                   std::uint64_t samples, double final_threshold,
                                   std::uint64_t seed) {
    if (support.empty()) throw std::invalid_argument("support must be nonempty");
    if (horizons.empty()) throw std::invalid_argument("need at least one horizon");
    if (samples < 1) throw std::invalid_argument("need at least one sample");

    const RuleDistribution distribution = RuleDistribution::uniform_on(support);
    const bool affine = support.subset_of(kAffineShiftFamily);
    const int threads = resolve_threads(0);

    DecayReport out;
    for (int T : horizons) {
        if (T < 1) throw std::invalid_argument("horizons must be >= 1");
        const std::uint64_t tseed = derive_seed(seed, static_cast<std::uint64_t>(T));
        std::vector<std::uint64_t> hits(static_cast<std::size_t>(threads), 0);
        parallel_chunks(static_cast<std::int64_t>(samples), threads,
                        [&](int chunk, std::int64_t begin, std::int64_t end) {
                            for (std::int64_t s = begin; s < end; ++s) {
                                const ConeTrajectory cone = sample_cone(
                                    distribution, T, derive_seed(tseed, static_cast<std::uint64_t>(s)));
                                const int from = T / 2;
                                bool constant = true;
                                for (int t = from + 1; t <= T && constant; ++t)
                                    constant = cone.values[static_cast<std::size_t>(t)] ==
                                               cone.values[static_cast<std::size_t>(from)];
                                hits[static_cast<std::size_t>(chunk)] += constant;
                            }
                        });
        const std::uint64_t total = std::accumulate(hits.begin(), hits.end(), std::uint64_t(0));
        DecayPoint point;
        point.horizon = T;
        point.probability = static_cast<double>(total) / static_cast<double>(samples);
        point.stderr_value = std::sqrt(std::max(
            point.probability * (1.0 - point.probability) / static_cast<double>(samples), 0.0));
        out.points.push_back(point);
    }

    for (std::size_t i = 0; i + 1 < out.points.size(); ++i) {
        const auto& a = out.points[i];
        const auto& b = out.points[i + 1];
        const double slack = 2.0 * (a.stderr_value + b.stderr_value) + 1e-12;
        out.check.record(b.probability <= a.probability + slack,
                         "T=" + std::to_string(b.horizon) + ": constancy probability " +
                             format_double(b.probability) + " non-increasing");
    }
    if (affine) {
        for (const auto& point : out.points) {
            const double envelope =
                std::pow(2.0, -(point.horizon - point.horizon / 2)) + 3.0 * point.stderr_value;
            out.check.record(point.probability <= envelope + 1e-12,
                             "T=" + std::to_string(point.horizon) + ": probability " +
                                 format_double(point.probability) + " within i.i.d. envelope " +
                                 format_double(envelope));
        }
    }
    const auto& last = out.points.back();
    out.check.record(last.probability <= final_threshold,
                     "T=" + std::to_string(last.horizon) + ": final constancy probability " +
                         format_double(last.probability) + " <= " + format_double(final_threshold));
    return out;
}

} // namespace rbca
