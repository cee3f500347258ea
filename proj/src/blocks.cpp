#include "rbca/blocks.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "rbca/errors.hpp"
#include "rbca/parallel.hpp"

namespace rbca {

namespace {

constexpr int kMaxBlockSize = 24;

void validate_spec(const BlockSpec& spec) {
    const int p = spec.size();
    if (p < 1 || p > kMaxBlockSize) throw std::invalid_argument("block size must be in 1..24");
    for (std::uint8_t j : spec.phi)
        if (j > 15) throw std::invalid_argument("rule index out of range");
    if (spec.b_states.empty()) throw std::invalid_argument("block needs at least one interior word");
    const BlockWord limit = BlockWord(1) << p;
    for (BlockWord b : spec.b_states)
        if (b >= limit) throw std::invalid_argument("interior word wider than the block");
    if (spec.center && (*spec.center < 1 || *spec.center > p))
        throw std::invalid_argument("center outside the block");
}

// Bit-parallel single update of the interior, with explicit boundary bits.
// Cell k (1-based) is bit k-1; its left input is bit k-2 or the boundary l,
// its right input is bit k or the boundary r.
struct BlockStepper {
    int p = 0;
    BlockWord mask = 0;
    BlockWord m00 = 0, m01 = 0, m10 = 0, m11 = 0;

    explicit BlockStepper(std::span<const std::uint8_t> phi) {
        p = static_cast<int>(phi.size());
        mask = (BlockWord(1) << p) - 1;
        for (int k = 0; k < p; ++k) {
            Rule r(phi[static_cast<std::size_t>(k)]);
            BlockWord bit = BlockWord(1) << k;
            if (r.apply(0, 0)) m00 |= bit;
            if (r.apply(0, 1)) m01 |= bit;
            if (r.apply(1, 0)) m10 |= bit;
            if (r.apply(1, 1)) m11 |= bit;
        }
    }

    BlockWord next(BlockWord s, BlockWord l, BlockWord r) const {
        BlockWord left = ((s << 1) | l) & mask;
        BlockWord right = ((s >> 1) | (r << (p - 1))) & mask;
        return ((~left & ~right & m00) | (~left & right & m01) | (left & ~right & m10) |
                (left & right & m11)) & mask;
    }
};

using Layer = std::vector<BlockWord>;

Layer normalized(Layer layer) {
    std::sort(layer.begin(), layer.end());
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
    return layer;
}

Layer step_layer(const BlockStepper& st, const Layer& layer) {
    Layer out;
    out.reserve(layer.size() * 4);
    for (BlockWord s : layer)
        for (BlockWord lr = 0; lr < 4; ++lr) out.push_back(st.next(s, lr >> 1, lr & 1));
    return normalized(std::move(out));
}

std::uint64_t hash_layer(const Layer& layer) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (BlockWord s : layer) {
        h ^= s;
        h *= 0x100000001b3ull;
    }
    return h;
}

struct LayerOrbit {
    std::vector<Layer> layers; // R_0 .. R_{T0+P-1}
    std::int64_t preperiod = 0;
    std::int64_t period = 1;
};

LayerOrbit compute_layer_orbit(const BlockStepper& st, Layer r0, std::int64_t max_layers) {
    LayerOrbit orbit;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;
    Layer cur = std::move(r0);
    for (std::int64_t t = 0;; ++t) {
        const std::uint64_t h = hash_layer(cur);
        if (auto it = index.find(h); it != index.end()) {
            for (std::size_t id : it->second) {
                if (orbit.layers[id] == cur) {
                    orbit.preperiod = static_cast<std::int64_t>(id);
                    orbit.period = t - static_cast<std::int64_t>(id);
                    return orbit;
                }
            }
        }
        if (t >= max_layers) throw LayerCycleNotFound(max_layers);
        index[h].push_back(orbit.layers.size());
        orbit.layers.push_back(cur);
        cur = step_layer(st, cur);
    }
}

struct LayerStats {
    BlockWord agree = 0; // bits where all states of the layer coincide
    BlockWord value = 0; // the common values (meaningful on agree bits)
    bool singleton = false;
};

LayerStats layer_stats(const Layer& layer, BlockWord mask) {
    BlockWord and_all = mask, or_all = 0;
    for (BlockWord s : layer) {
        and_all &= s;
        or_all |= s;
    }
    LayerStats st;
    st.agree = mask & ~(and_all ^ or_all);
    st.value = and_all;
    st.singleton = layer.size() == 1;
    return st;
}

std::int64_t minimal_cyclic_period(const std::vector<std::uint8_t>& values) {
    const std::int64_t P = static_cast<std::int64_t>(values.size());
    for (std::int64_t d = 1; d <= P; ++d) {
        if (P % d != 0) continue;
        bool ok = true;
        for (std::int64_t i = 0; i < P && ok; ++i)
            ok = values[static_cast<std::size_t>(i)] ==
                 values[static_cast<std::size_t>((i + d) % P)];
        if (ok) return d;
    }
    return P;
}

BlockVerdict verdict_from_orbit(const BlockSpec& spec, const LayerOrbit& orbit) {
    const int p = spec.size();
    const BlockWord mask = (BlockWord(1) << p) - 1;
    const std::int64_t total = orbit.preperiod + orbit.period;

    std::vector<LayerStats> stats;
    stats.reserve(static_cast<std::size_t>(total));
    bool all_singleton = true;
    BlockWord determined_all = mask;
    for (const auto& layer : orbit.layers) {
        stats.push_back(layer_stats(layer, mask));
        all_singleton = all_singleton && stats.back().singleton;
        determined_all &= stats.back().agree;
    }

    // cyclic stability: agreed in every cyclic layer with one fixed value
    BlockWord cyclic_agree = mask, value_diff = 0;
    const BlockWord v0 = stats[static_cast<std::size_t>(orbit.preperiod)].value;
    for (std::int64_t t = orbit.preperiod; t < total; ++t) {
        cyclic_agree &= stats[static_cast<std::size_t>(t)].agree;
        value_diff |= stats[static_cast<std::size_t>(t)].value ^ v0;
    }
    const BlockWord stable_mask = cyclic_agree & ~value_diff;

    BlockVerdict verdict;
    verdict.preperiod = orbit.preperiod;
    verdict.period = orbit.period;
    verdict.stable.resize(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k)
        verdict.stable[static_cast<std::size_t>(k)] = (stable_mask >> k) & 1;

    if (spec.center) {
        const int c = *spec.center;
        if ((cyclic_agree >> (c - 1)) & 1) {
            std::vector<std::uint8_t> cycle_values;
            for (std::int64_t t = orbit.preperiod; t < total; ++t)
                cycle_values.push_back(
                    (stats[static_cast<std::size_t>(t)].value >> (c - 1)) & 1);
            verdict.center_value_period = minimal_cyclic_period(cycle_values);
            verdict.center_constant = *verdict.center_value_period == 1;
        }
    }

    if (all_singleton) {
        verdict.kind = BlockKind::Impermeable;
    } else if (spec.center && *spec.center > 1 && *spec.center < p &&
               ((determined_all >> (*spec.center - 1)) & 1)) {
        verdict.kind = BlockKind::Absorbing;
    } else {
        verdict.kind = BlockKind::Neither;
    }
    return verdict;
}

// Singleton-start impermeability: the trajectory stays deterministic under
// all boundary choices. Such a trajectory closes within 2^p steps, so the
// seen array both detects the cycle and bounds the loop.
struct SingletonScratch {
    std::vector<std::int64_t> seen;
    std::int64_t epoch = 0;

    void ensure(int p) {
        const std::size_t need = std::size_t(1) << p;
        if (seen.size() < need) {
            seen.assign(need, 0);
            epoch = 0;
        }
    }
};

bool is_impermeable_word(const BlockStepper& st, BlockWord b, SingletonScratch& ws) {
    ws.ensure(st.p);
    const std::int64_t epoch = ++ws.epoch;
    BlockWord s = b;
    while (true) {
        if (ws.seen[s] == epoch) return true;
        ws.seen[s] = epoch;
        const BlockWord n = st.next(s, 0, 0);
        if (st.next(s, 0, 1) != n || st.next(s, 1, 0) != n || st.next(s, 1, 1) != n) return false;
        s = n;
    }
}

// b-words are enumerated in tuple-lex order (b_1 varies slowest)
BlockWord word_from_sequence(BlockWord seq, int p) {
    BlockWord b = 0;
    for (int k = 0; k < p; ++k) b |= ((seq >> (p - 1 - k)) & 1) << k;
    return b;
}

std::vector<std::uint8_t> phi_from_index(std::uint64_t idx, int p, const std::vector<int>& members) {
    std::vector<std::uint8_t> phi(static_cast<std::size_t>(p));
    const std::uint64_t m = members.size();
    for (int k = p - 1; k >= 0; --k) {
        phi[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(members[idx % m]);
        idx /= m;
    }
    return phi;
}

std::uint64_t checked_pow(std::uint64_t base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        if (out > (std::uint64_t(1) << 62) / base) throw std::invalid_argument("search space too large");
        out *= base;
    }
    return out;
}

} // namespace

BlockSpec BlockSpec::single(std::vector<std::uint8_t> phi, BlockWord b, std::optional<int> center) {
    BlockSpec spec;
    spec.phi = std::move(phi);
    spec.b_states = {b};
    spec.center = center;
    return spec;
}

BlockSpec BlockSpec::parse(const std::string& phi_csv, const std::string& b_bits,
                           std::optional<int> center) {
    BlockSpec spec;
    std::size_t pos = 0;
    while (pos < phi_csv.size()) {
        std::size_t next = phi_csv.find(',', pos);
        if (next == std::string::npos) next = phi_csv.size();
        spec.phi.push_back(static_cast<std::uint8_t>(std::stoi(phi_csv.substr(pos, next - pos))));
        pos = next + 1;
    }
    if (b_bits.size() != spec.phi.size())
        throw std::invalid_argument("b-word length must match the phi-block length");
    BlockWord b = 0;
    for (std::size_t k = 0; k < b_bits.size(); ++k) {
        if (b_bits[k] != '0' && b_bits[k] != '1') throw std::invalid_argument("b-word must be a bit string");
        if (b_bits[k] == '1') b |= BlockWord(1) << k;
    }
    spec.b_states = {b};
    spec.center = center;
    validate_spec(spec);
    return spec;
}

Support BlockSpec::support() const {
    Support s;
    for (std::uint8_t j : phi) s.mask |= std::uint16_t(1u << j);
    return s;
}

BlockSpec mirror(const BlockSpec& spec) {
    BlockSpec out = spec;
    for (auto& j : out.phi) j = mirror(Rule(j)).index;
    const BlockWord mask = (BlockWord(1) << spec.size()) - 1;
    for (auto& b : out.b_states) b = ~b & mask;
    out.b_states = normalized(std::move(out.b_states));
    return out;
}

BlockSpec reverse(const BlockSpec& spec) {
    const int p = spec.size();
    BlockSpec out = spec;
    for (int k = 0; k < p; ++k)
        out.phi[static_cast<std::size_t>(k)] =
            reverse(Rule(spec.phi[static_cast<std::size_t>(p - 1 - k)])).index;
    for (auto& b : out.b_states) {
        BlockWord r = 0;
        for (int k = 0; k < p; ++k) r |= ((b >> k) & 1) << (p - 1 - k);
        b = r;
    }
    out.b_states = normalized(std::move(out.b_states));
    if (spec.center) out.center = p + 1 - *spec.center;
    return out;
}

std::string block_word_string(BlockWord b, int p) {
    std::string out(static_cast<std::size_t>(p), '0');
    for (int k = 0; k < p; ++k)
        if ((b >> k) & 1) out[static_cast<std::size_t>(k)] = '1';
    return out;
}

namespace {

std::string tuple_string(const std::string& bits) {
    std::string out = "(";
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i > 0) out += ',';
        out += bits[i];
    }
    return out + ")";
}

} // namespace

std::string to_string(const BlockSpec& spec) {
    std::string out = "phi=(";
    for (std::size_t i = 0; i < spec.phi.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(spec.phi[i]);
    }
    out += ")";
    if (spec.b_states.size() == 1) {
        out += " b=" + tuple_string(block_word_string(spec.b_states[0], spec.size()));
    } else {
        out += " b_family={";
        for (std::size_t i = 0; i < spec.b_states.size(); ++i) {
            if (i > 0) out += ',';
            out += block_word_string(spec.b_states[i], spec.size());
        }
        out += "}";
    }
    if (spec.center) out += " center=" + std::to_string(*spec.center);
    return out;
}

std::string to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::Impermeable: return "impermeable";
        case BlockKind::Absorbing: return "absorbing";
        case BlockKind::Neither: return "neither";
    }
    return "neither";
}

int BlockVerdict::stable_count() const {
    int c = 0;
    for (auto s : stable) c += s;
    return c;
}

std::string BlockVerdict::stable_string() const {
    std::string out;
    for (auto s : stable) out += s ? '1' : '0';
    return out;
}

BlockVerdict analyze_block(const BlockSpec& spec, std::int64_t max_layers) {
    validate_spec(spec);
    if (max_layers < 1) throw std::invalid_argument("max_layers must be >= 1");
    BlockStepper st(spec.phi);
    LayerOrbit orbit = compute_layer_orbit(st, normalized(spec.b_states), max_layers);
    return verdict_from_orbit(spec, orbit);
}

BlockVerdict analyze_family(const BlockSpec& spec, std::int64_t max_layers) {
    return analyze_block(spec, max_layers);
}

std::optional<std::int64_t> family_recurrence_time(const BlockSpec& family, BlockWord member,
                                                   std::int64_t max_layers) {
    validate_spec(family);
    BlockStepper st(family.phi);
    const Layer fam = normalized(family.b_states);
    std::unordered_map<std::uint64_t, std::vector<Layer>> seen;
    Layer cur{member};
    for (std::int64_t t = 0; t <= max_layers; ++t) {
        if (t >= 1 && std::includes(fam.begin(), fam.end(), cur.begin(), cur.end())) return t;
        auto& bucket = seen[hash_layer(cur)];
        for (const Layer& old : bucket)
            if (old == cur) return std::nullopt; // cycled without re-entering the family
        bucket.push_back(cur);
        cur = step_layer(st, cur);
    }
    throw LayerCycleNotFound(max_layers);
}

std::vector<BlockSpec> search_impermeable(Support support, int p_max, const SearchOptions& options) {
    if (support.empty()) throw std::invalid_argument("support must be nonempty");
    if (p_max < 1 || p_max > 16) throw std::invalid_argument("p_max must be in 1..16");
    const std::vector<int> members = support.members();
    const std::uint64_t m = members.size();

    std::vector<BlockSpec> results;
    for (int p = 1; p <= p_max; ++p) {
        const std::uint64_t total = checked_pow(m, p);
        const int threads = resolve_threads(options.threads);
        std::vector<std::vector<BlockSpec>> found(static_cast<std::size_t>(threads));

        parallel_chunks(static_cast<std::int64_t>(total), threads, [&](int chunk, std::int64_t begin, std::int64_t end) {
            SingletonScratch scratch;
            for (std::int64_t idx = begin; idx < end; ++idx) {
                const std::vector<std::uint8_t> phi =
                    phi_from_index(static_cast<std::uint64_t>(idx), p, members);
                const BlockStepper st(phi);
                const Rule leftmost(phi.front());
                const Rule rightmost(phi.back());
                if (p == 1 && leftmost.index != 0 && leftmost.index != 15) continue;
                for (BlockWord seq = 0; seq < (BlockWord(1) << p); ++seq) {
                    const BlockWord b = word_from_sequence(seq, p);
                    if (p >= 2) {
                        // boundary independence at t=0 is necessary; prune early
                        const bool b2 = (b >> 1) & 1;
                        if (leftmost.apply(0, b2) != leftmost.apply(1, b2)) continue;
                        const bool bp1 = (b >> (p - 2)) & 1;
                        if (rightmost.apply(bp1, 0) != rightmost.apply(bp1, 1)) continue;
                    }
                    if (is_impermeable_word(st, b, scratch))
                        found[static_cast<std::size_t>(chunk)].push_back(BlockSpec::single(phi, b));
                }
            }
        });

        for (auto& chunk : found)
            for (auto& spec : chunk) results.push_back(std::move(spec));

        if (results.size() >= options.max_witnesses) {
            results.resize(options.max_witnesses);
            break;
        }
        if (options.stop_at_first_size && !results.empty()) break;
    }
    return results;
}

bool has_impermeable(Support support, int p_max) {
    SearchOptions options;
    options.max_witnesses = 1;
    options.threads = 1;
    return !search_impermeable(support, p_max, options).empty();
}

std::vector<BlockSpec> search_absorbing(Support support, int p_max, bool require_constant_center,
                                        const SearchOptions& options) {
    if (support.empty()) throw std::invalid_argument("support must be nonempty");
    if (p_max < 3 || p_max > 16) throw std::invalid_argument("p_max must be in 3..16");
    const std::vector<int> members = support.members();
    const std::uint64_t m = members.size();

    std::vector<BlockSpec> results;
    for (int p = 3; p <= p_max; ++p) {
        const std::uint64_t total = checked_pow(m, p);
        const int threads = resolve_threads(options.threads);
        std::vector<std::vector<BlockSpec>> found(static_cast<std::size_t>(threads));
        const BlockWord interior = ((BlockWord(1) << (p - 2)) - 1) << 1; // cells 2..p-1

        parallel_chunks(static_cast<std::int64_t>(total), threads, [&](int chunk, std::int64_t begin, std::int64_t end) {
            for (std::int64_t idx = begin; idx < end; ++idx) {
                const std::vector<std::uint8_t> phi =
                    phi_from_index(static_cast<std::uint64_t>(idx), p, members);
                const BlockStepper st(phi);
                for (BlockWord seq = 0; seq < (BlockWord(1) << p); ++seq) {
                    const BlockWord b = word_from_sequence(seq, p);

                    // layer orbit with an early bail-out once no interior cell
                    // can still be determined at every time
                    std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;
                    std::vector<Layer> layers;
                    std::vector<LayerStats> stats;
                    BlockWord candidates = interior;
                    Layer cur{b};
                    std::int64_t preperiod = -1, period = 0;
                    bool rejected = false;
                    for (std::int64_t t = 0;; ++t) {
                        const std::uint64_t h = hash_layer(cur);
                        bool closed = false;
                        if (auto it = index.find(h); it != index.end()) {
                            for (std::size_t id : it->second) {
                                if (layers[id] == cur) {
                                    preperiod = static_cast<std::int64_t>(id);
                                    period = t - preperiod;
                                    closed = true;
                                    break;
                                }
                            }
                        }
                        if (closed) break;
                        if (t >= options.max_layers) throw LayerCycleNotFound(options.max_layers);
                        LayerStats ls = layer_stats(cur, st.mask);
                        candidates &= ls.agree;
                        if (candidates == 0) {
                            rejected = true;
                            break;
                        }
                        index[h].push_back(layers.size());
                        layers.push_back(cur);
                        stats.push_back(ls);
                        cur = step_layer(st, cur);
                    }
                    if (rejected) continue;

                    BlockWord qualifying = candidates;
                    if (require_constant_center) {
                        BlockWord diff = 0;
                        const BlockWord v0 = stats[static_cast<std::size_t>(preperiod)].value;
                        for (std::int64_t t = preperiod; t < preperiod + period; ++t)
                            diff |= stats[static_cast<std::size_t>(t)].value ^ v0;
                        qualifying &= ~diff;
                    }
                    for (int c = 2; c < p; ++c)
                        if ((qualifying >> (c - 1)) & 1)
                            found[static_cast<std::size_t>(chunk)].push_back(
                                BlockSpec::single(phi, b, c));
                }
            }
        });

        for (auto& chunk : found)
            for (auto& spec : chunk) results.push_back(std::move(spec));

        if (results.size() >= options.max_witnesses) {
            results.resize(options.max_witnesses);
            break;
        }
        if (options.stop_at_first_size && !results.empty()) break;
    }
    return results;
}

SupportCollections minimal_impermeable_supports(int k_max, int p_max, int threads) {
    if (k_max < 1 || k_max > 16) throw std::invalid_argument("k_max must be in 1..16");

    // existence is a symmetry invariant, so memoize on canonical supports
    std::unordered_map<std::uint16_t, bool> exists;
    SearchOptions sopt;
    sopt.max_witnesses = 1;
    sopt.threads = threads > 0 ? threads : 1; // per-support searches are tiny
    auto admits = [&](Support s) {
        const Support canon = canonicalize(s);
        auto it = exists.find(canon.mask);
        if (it != exists.end()) return it->second;
        const bool found = !search_impermeable(canon, p_max, sopt).empty();
        exists.emplace(canon.mask, found);
        return found;
    };

    SupportCollections out;
    for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
        Support s(static_cast<std::uint16_t>(mask));
        if (s.size() > k_max) continue;
        if (!admits(s)) continue;
        bool minimal = true;
        for (int j = 0; j < 16 && minimal; ++j) {
            if (!s.contains(j)) continue;
            Support sub(static_cast<std::uint16_t>(mask & ~(1u << j)));
            if (!sub.empty() && admits(sub)) minimal = false;
        }
        if (minimal) out.g_sets.push_back(s);
    }

    std::sort(out.g_sets.begin(), out.g_sets.end(), [](Support a, Support b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return lex_less(a, b);
    });

    for (Support s : out.g_sets) {
        Support canon = canonicalize(s);
        if (std::find(out.g_tilde.begin(), out.g_tilde.end(), canon) == out.g_tilde.end())
            out.g_tilde.push_back(canon);
    }

    // maximal supports containing no minimal impermeable support
    std::vector<bool> permeable(1u << 16, true);
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask)
        for (Support g : out.g_sets)
            if (g.subset_of(Support(static_cast<std::uint16_t>(mask)))) {
                permeable[mask] = false;
                break;
            }
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
        if (!permeable[mask]) continue;
        bool maximal = true;
        for (int j = 0; j < 16 && maximal; ++j)
            if (!(mask & (1u << j)) && permeable[mask | (1u << j)]) maximal = false;
        if (maximal) out.b_sets.push_back(Support(static_cast<std::uint16_t>(mask)));
    }
    std::sort(out.b_sets.begin(), out.b_sets.end(), [](Support a, Support b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return lex_less(a, b);
    });
    return out;
}

namespace {

const std::vector<Support>& g_sets_data() {
    static const std::vector<Support> data = {
        {0}, {1}, {7}, {8}, {14}, {15},
        {2, 4}, {2, 5}, {2, 9}, {2, 12}, {2, 13},
        {3, 4}, {3, 5}, {3, 10}, {3, 13},
        {4, 9}, {4, 10}, {4, 11},
        {5, 11}, {5, 12},
        {6, 11}, {6, 13},
        {10, 12}, {10, 13},
        {11, 12}, {11, 13},
        {2, 6, 10}, {4, 6, 12}, {9, 10, 11}, {9, 12, 13}};
    return data;
}

const std::vector<Support>& g_tilde_data() {
    static const std::vector<Support> data = {
        {0}, {1}, {8}, {2, 4}, {2, 5}, {2, 9}, {2, 12}, {2, 13}, {3, 5}, {3, 10}, {10, 12},
        {2, 6, 10}};
    return data;
}

const std::vector<Support>& b_sets_data() {
    static const std::vector<Support> data = {
        {2, 3, 6}, {2, 3, 11}, {2, 10, 11}, {3, 9, 11}, {4, 5, 6}, {4, 5, 13},
        {4, 12, 13}, {5, 9, 13}, {3, 6, 9, 12}, {5, 6, 9, 10}};
    return data;
}

const std::vector<BlockSpec>& impermeable_witnesses_data() {
    static const std::vector<BlockSpec> data = {
        BlockSpec::parse("0", "0"),
        BlockSpec::parse("1,1,1", "010"),
        BlockSpec::parse("8,8", "00"),
        BlockSpec::parse("2,4", "00"),
        BlockSpec::parse("5,2", "10"),
        BlockSpec::parse("2,9,9,2", "0010"),
        BlockSpec::parse("2,12", "00"),
        BlockSpec::parse("13,2", "10"),
        BlockSpec::parse("5,3", "00"),
        BlockSpec::parse("10,3", "00"),
        BlockSpec::parse("10,12", "00"),
        BlockSpec::parse("10,6,2", "110")};
    return data;
}

const std::vector<Support>& sigma_zero_data() {
    static const std::vector<Support> data = {
        {2, 10}, {10, 11}, {4, 12}, {12, 13}, {3, 6, 9, 12}, {5, 6, 9, 10}};
    return data;
}

// The {2,6} absorbing family: twelve fixed cells followed by four wildcard
// cells x,y,z,w constrained by xz != 11 and yw != 11.
BlockSpec make_26_family() {
    BlockSpec spec;
    spec.phi = {2, 2, 2, 6, 6, 6, 2, 2, 2, 6, 6, 6, 2, 2, 2, 2};
    const BlockWord fixed = [] {
        const char bits[] = "001101010110";
        BlockWord b = 0;
        for (int k = 0; k < 12; ++k)
            if (bits[k] == '1') b |= BlockWord(1) << k;
        return b;
    }();
    for (BlockWord x = 0; x < 2; ++x)
        for (BlockWord y = 0; y < 2; ++y)
            for (BlockWord z = 0; z < 2; ++z)
                for (BlockWord w = 0; w < 2; ++w) {
                    if ((x & z) == 1 || (y & w) == 1) continue;
                    spec.b_states.push_back(fixed | (x << 12) | (y << 13) | (z << 14) |
                                            (w << 15));
                }
    spec.b_states = normalized(std::move(spec.b_states));
    spec.center = 4;
    return spec;
}

struct AbsorbingBase {
    Support support;
    BlockSpec witness;
};

const std::vector<AbsorbingBase>& absorbing_bases() {
    static const std::vector<AbsorbingBase> data = {
        {{2, 3}, BlockSpec::parse("2,2,3,2,3,2,2,2,3", "001100001", 6)},
        {{2, 11}, BlockSpec::parse("2,2,11,2,11,2,2,2,11,2", "0110000110", 6)},
        {{2, 6}, make_26_family()}};
    return data;
}

BlockSpec apply_transform(const BlockSpec& spec, bool do_mirror, bool do_reverse) {
    BlockSpec out = spec;
    if (do_mirror) out = mirror(out);
    if (do_reverse) out = reverse(out);
    return out;
}

Support apply_transform(Support s, bool do_mirror, bool do_reverse) {
    if (do_mirror) s = mirror(s);
    if (do_reverse) s = reverse(s);
    return s;
}

} // namespace

std::span<const Support> known_g_sets() { return g_sets_data(); }
std::span<const Support> known_g_tilde() { return g_tilde_data(); }
std::span<const Support> known_b_sets() { return b_sets_data(); }
std::span<const BlockSpec> known_impermeable_witnesses() { return impermeable_witnesses_data(); }
std::span<const Support> sigma_star_zero_supports() { return sigma_zero_data(); }

DichotomyResult dichotomy_check(std::span<const Support> g_sets, std::span<const Support> b_sets) {
    if (g_sets.empty() || b_sets.empty())
        throw std::invalid_argument("both collections must be nonempty");
    DichotomyResult out;
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
        const Support s(static_cast<std::uint16_t>(mask));
        bool contains_g = false;
        for (Support g : g_sets)
            if (g.subset_of(s)) {
                contains_g = true;
                break;
            }
        bool inside_b = false;
        for (Support b : b_sets)
            if (s.subset_of(b)) {
                inside_b = true;
                break;
            }
        if (contains_g && inside_b) out.overlap.push_back(static_cast<std::uint16_t>(mask));
        if (!contains_g && !inside_b) out.uncovered.push_back(static_cast<std::uint16_t>(mask));
    }
    out.pass = out.overlap.empty() && out.uncovered.empty();
    return out;
}

ClassificationVerdict theorem1_classify(Support support) {
    if (support.empty()) throw std::invalid_argument("support must be nonempty");

    for (Support z : sigma_star_zero_supports()) {
        if (support.subset_of(z)) {
            ClassificationVerdict v;
            v.status = SigmaStarStatus::Zero;
            v.evidence = "subset of {" + to_string(z) + "}";
            return v;
        }
    }

    // impermeable witness: transform the reference block of the orbit class
    for (Support g : known_g_sets()) {
        if (!g.subset_of(support)) continue;
        const Support canon = canonicalize(g);
        for (int tf = 0; tf < 4; ++tf) {
            const bool do_mirror = tf & 1, do_reverse = tf & 2;
            for (const BlockSpec& w : known_impermeable_witnesses()) {
                if (w.support() != canon) continue;
                if (apply_transform(canon, do_mirror, do_reverse) != g) continue;
                ClassificationVerdict v;
                v.status = SigmaStarStatus::Positive;
                v.witness = apply_transform(w, do_mirror, do_reverse);
                v.evidence = "contains {" + to_string(g) + "}: impermeable block " +
                             to_string(*v.witness);
                return v;
            }
        }
    }

    // otherwise an absorbing block with a stable center settles it
    for (const AbsorbingBase& base : absorbing_bases()) {
        for (int tf = 0; tf < 4; ++tf) {
            const bool do_mirror = tf & 1, do_reverse = tf & 2;
            const Support image = apply_transform(base.support, do_mirror, do_reverse);
            if (!image.subset_of(support)) continue;
            ClassificationVerdict v;
            v.status = SigmaStarStatus::Positive;
            v.witness = apply_transform(base.witness, do_mirror, do_reverse);
            v.evidence = "contains {" + to_string(image) + "}: absorbing block " +
                         to_string(*v.witness);
            return v;
        }
    }

    throw std::logic_error("support escapes the classification: " + to_string(support));
}

} // namespace rbca
