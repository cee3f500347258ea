#include "rbca/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "rbca/errors.hpp"
#include "rbca/prng.hpp"

namespace rbca {

namespace {

int word_count(int n) { return (n + 63) / 64; }

std::uint64_t tail_mask(int n) {
    int r = n % 64;
    return r == 0 ? ~std::uint64_t(0) : ((std::uint64_t(1) << r) - 1);
}

void check_sizes(const RingConfiguration& config, const RuleVector& rules) {
    if (config.size() != rules.size())
        throw std::invalid_argument("configuration and rule vector sizes differ");
}

std::uint64_t hash_words(const std::vector<std::uint64_t>& words) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint64_t w : words) {
        h ^= w;
        h *= 0x100000001b3ull;
        h ^= h >> 29;
    }
    return h;
}

} // namespace

RingConfiguration::RingConfiguration(int n) : n_(n), words_(word_count(n), 0) {
    if (n < 2) throw std::invalid_argument("ring size must be at least 2");
}

bool RingConfiguration::cell(int i) const {
    i %= n_;
    if (i < 0) i += n_;
    return (words_[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1;
}

void RingConfiguration::set_cell(int i, bool value) {
    i %= n_;
    if (i < 0) i += n_;
    std::uint64_t bit = std::uint64_t(1) << (i % 64);
    if (value)
        words_[static_cast<std::size_t>(i) / 64] |= bit;
    else
        words_[static_cast<std::size_t>(i) / 64] &= ~bit;
}

bool RingConfiguration::all_zero() const {
    for (std::uint64_t w : words_)
        if (w != 0) return false;
    return true;
}

std::uint64_t RingConfiguration::popcount() const {
    std::uint64_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return total;
}

RingConfiguration RingConfiguration::rotated(int k) const {
    k %= n_;
    if (k < 0) k += n_;
    RingConfiguration out(n_);
    if (k == 0) {
        out.words_ = words_;
        return out;
    }
    // generic path; rotations are not on the hot path except via the two
    // single-step shifts below, which have their own word-level code
    for (int i = 0; i < n_; ++i) out.set_cell(i + k, cell(i));
    return out;
}

RingConfiguration RingConfiguration::shifted_from_left() const {
    RingConfiguration out(n_);
    const std::size_t nw = words_.size();
    for (std::size_t w = 0; w < nw; ++w) {
        std::uint64_t v = words_[w] << 1;
        if (w > 0) v |= words_[w - 1] >> 63;
        out.words_[w] = v;
    }
    if (cell(n_ - 1)) out.words_[0] |= 1;
    out.words_.back() &= tail_mask(n_);
    return out;
}

RingConfiguration RingConfiguration::shifted_from_right() const {
    RingConfiguration out(n_);
    const std::size_t nw = words_.size();
    for (std::size_t w = 0; w < nw; ++w) {
        std::uint64_t v = words_[w] >> 1;
        if (w + 1 < nw) v |= words_[w + 1] << 63;
        out.words_[w] = v;
    }
    if (cell(0)) out.words_[static_cast<std::size_t>(n_ - 1) / 64] |= std::uint64_t(1) << ((n_ - 1) % 64);
    out.words_.back() &= tail_mask(n_);
    return out;
}

RingConfiguration random_configuration(int n, std::uint64_t seed) {
    Xoshiro256ss rng(seed);
    RingConfiguration out(n);
    for (auto& w : out.words()) w = rng.next();
    out.words().back() &= tail_mask(n);
    return out;
}

RuleVector RuleVector::rotated(int k) const {
    const int n = size();
    k %= n;
    if (k < 0) k += n;
    RuleVector out;
    out.rules.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.rules[static_cast<std::size_t>((i + k) % n)] = rules[static_cast<std::size_t>(i)];
    return out;
}

RuleVector RuleVector::mirrored() const {
    RuleVector out;
    out.rules.reserve(rules.size());
    for (std::uint8_t j : rules) out.rules.push_back(mirror(Rule(j)).index);
    return out;
}

StepMasks::StepMasks(const RuleVector& rules) : n_(rules.size()) {
    const int nw = word_count(n_);
    m00_.assign(static_cast<std::size_t>(nw), 0);
    m01_.assign(static_cast<std::size_t>(nw), 0);
    m10_.assign(static_cast<std::size_t>(nw), 0);
    m11_.assign(static_cast<std::size_t>(nw), 0);
    for (int i = 0; i < n_; ++i) {
        Rule r(rules.rules[static_cast<std::size_t>(i)]);
        std::uint64_t bit = std::uint64_t(1) << (i % 64);
        std::size_t w = static_cast<std::size_t>(i) / 64;
        if (r.apply(0, 0)) m00_[w] |= bit;
        if (r.apply(0, 1)) m01_[w] |= bit;
        if (r.apply(1, 0)) m10_[w] |= bit;
        if (r.apply(1, 1)) m11_[w] |= bit;
    }
}

void StepMasks::step(const RingConfiguration& in, RingConfiguration& out) const {
    if (in.size() != n_) throw std::invalid_argument("configuration and rule vector sizes differ");
    if (out.size() != n_) out = RingConfiguration(n_);
    const auto& cw = in.words_;
    auto& ow = out.words_;
    const std::size_t nw = cw.size();
    const int top_shift = (n_ - 1) % 64;
    const std::uint64_t wrap_left = (cw[nw - 1] >> top_shift) & 1; // cell n-1 seen by cell 0
    const std::uint64_t wrap_right = cw[0] & 1;                    // cell 0 seen by cell n-1
    for (std::size_t w = 0; w < nw; ++w) {
        std::uint64_t l = (cw[w] << 1) | (w > 0 ? cw[w - 1] >> 63 : wrap_left);
        std::uint64_t r = (cw[w] >> 1) | (w + 1 < nw ? cw[w + 1] << 63 : wrap_right << top_shift);
        ow[w] = (~l & ~r & m00_[w]) | (~l & r & m01_[w]) | (l & ~r & m10_[w]) | (l & r & m11_[w]);
    }
    ow[nw - 1] &= tail_mask(n_);
}

RingConfiguration step(const RingConfiguration& config, const RuleVector& rules) {
    check_sizes(config, rules);
    StepMasks masks(rules);
    RingConfiguration out(config.size());
    masks.step(config, out);
    return out;
}

RingConfiguration step_naive(const RingConfiguration& config, const RuleVector& rules) {
    check_sizes(config, rules);
    const int n = config.size();
    RingConfiguration out(n);
    for (int i = 0; i < n; ++i) {
        Rule r(rules.rules[static_cast<std::size_t>(i)]);
        out.set_cell(i, r.apply(config.cell(i - 1), config.cell(i + 1)));
    }
    return out;
}

int CycleSummary::stable_count() const {
    int c = 0;
    for (auto s : stable) c += s;
    return c;
}

double CycleSummary::stable_fraction() const {
    if (stable.empty()) return 0.0;
    return static_cast<double>(stable_count()) / static_cast<double>(stable.size());
}

namespace {

struct WordsHash {
    std::size_t operator()(const std::vector<std::uint64_t>& w) const { return hash_words(w); }
};

// (preperiod, period) by hashing first-seen times. Throws past max_steps.
// Returns true on success, false when the memory cap was hit (Auto mode).
bool find_cycle_hashing(const RingConfiguration& initial, const StepMasks& masks,
                        const RunOptions& options, bool allow_bailout, std::int64_t& preperiod,
                        std::int64_t& period) {
    std::unordered_map<std::vector<std::uint64_t>, std::int64_t, WordsHash> seen;
    const std::size_t entry_bytes =
        initial.words().size() * sizeof(std::uint64_t) + sizeof(std::int64_t) + 4 * sizeof(void*);
    const std::size_t max_entries = std::max<std::size_t>(options.memory_cap_bytes / entry_bytes, 16);

    RingConfiguration cur = initial;
    RingConfiguration next(initial.size());
    for (std::int64_t t = 0;; ++t) {
        auto [it, inserted] = seen.try_emplace(cur.words(), t);
        if (!inserted) {
            preperiod = it->second;
            period = t - it->second;
            return true;
        }
        if (t >= options.max_steps) throw CycleNotFound(options.max_steps);
        if (allow_bailout && seen.size() >= max_entries) return false;
        masks.step(cur, next);
        std::swap(cur, next);
    }
}

// Brent's algorithm: constant memory, same (T0, P).
void find_cycle_brent(const RingConfiguration& initial, const StepMasks& masks,
                      const RunOptions& options, std::int64_t& preperiod, std::int64_t& period) {
    RingConfiguration tortoise = initial;
    RingConfiguration hare = initial;
    RingConfiguration scratch(initial.size());
    auto advance = [&](RingConfiguration& c) {
        masks.step(c, scratch);
        std::swap(c, scratch);
    };

    advance(hare);
    std::int64_t power = 1, lambda = 1, steps = 1;
    while (tortoise != hare) {
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        advance(hare);
        ++lambda;
        if (++steps > 3 * options.max_steps + 4) throw CycleNotFound(options.max_steps);
    }

    // mu: advance one pointer lambda steps from the start, then walk together
    tortoise = initial;
    hare = initial;
    for (std::int64_t i = 0; i < lambda; ++i) advance(hare);
    std::int64_t mu = 0;
    while (tortoise != hare) {
        advance(tortoise);
        advance(hare);
        if (++mu > options.max_steps) throw CycleNotFound(options.max_steps);
    }
    if (mu + lambda > options.max_steps) throw CycleNotFound(options.max_steps);
    preperiod = mu;
    period = lambda;
}

} // namespace

CycleSummary run_until_cycle(const RingConfiguration& initial, const RuleVector& rules,
                             const RunOptions& options) {
    check_sizes(initial, rules);
    if (options.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    const int n = initial.size();
    StepMasks masks(rules);

    CycleSummary summary;
    bool found = false;
    if (options.detection != CycleDetection::Brent) {
        found = find_cycle_hashing(initial, masks, options,
                                   options.detection == CycleDetection::Auto, summary.preperiod,
                                   summary.period);
    }
    if (!found) find_cycle_brent(initial, masks, options, summary.preperiod, summary.period);

    // replay one period from T0 to read off per-cell agreement
    RingConfiguration cur = initial;
    RingConfiguration scratch(n);
    for (std::int64_t t = 0; t < summary.preperiod; ++t) {
        masks.step(cur, scratch);
        std::swap(cur, scratch);
    }
    RingConfiguration and_all = cur, or_all = cur;
    for (std::int64_t t = 1; t < summary.period; ++t) {
        masks.step(cur, scratch);
        std::swap(cur, scratch);
        for (std::size_t w = 0; w < and_all.words().size(); ++w) {
            and_all.words()[w] &= cur.words()[w];
            or_all.words()[w] |= cur.words()[w];
        }
    }

    summary.stable.assign(static_cast<std::size_t>(n), 0);
    summary.stabilization_time.assign(static_cast<std::size_t>(n), std::nullopt);
    for (int i = 0; i < n; ++i)
        summary.stable[static_cast<std::size_t>(i)] = and_all.cell(i) == or_all.cell(i);

    // stabilization time: last transient time the cell differs from its
    // settled value, plus one; a second replay over the transient
    std::vector<std::int64_t> last_diff(static_cast<std::size_t>(n), -1);
    cur = initial;
    for (std::int64_t t = 0; t < summary.preperiod; ++t) {
        for (int i = 0; i < n; ++i)
            if (summary.stable[static_cast<std::size_t>(i)] && cur.cell(i) != and_all.cell(i))
                last_diff[static_cast<std::size_t>(i)] = t;
        masks.step(cur, scratch);
        std::swap(cur, scratch);
    }
    for (int i = 0; i < n; ++i)
        if (summary.stable[static_cast<std::size_t>(i)])
            summary.stabilization_time[static_cast<std::size_t>(i)] = last_diff[static_cast<std::size_t>(i)] + 1;

    return summary;
}

std::vector<RingConfiguration> trajectory(const RingConfiguration& initial,
                                          const RuleVector& rules, std::int64_t steps) {
    check_sizes(initial, rules);
    StepMasks masks(rules);
    std::vector<RingConfiguration> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back(initial);
    RingConfiguration scratch(initial.size());
    for (std::int64_t t = 0; t < steps; ++t) {
        masks.step(out.back(), scratch);
        out.push_back(scratch);
    }
    return out;
}

} // namespace rbca
