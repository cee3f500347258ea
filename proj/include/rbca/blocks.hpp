#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbca/rules.hpp"

namespace rbca {

// Interior words of a block are packed as bits: cell k (1-based) at bit k-1.
using BlockWord = std::uint32_t;

// A candidate block: a rule sequence (j_1..j_p), one or more interior words
// (a set larger than one is a block family), and an optional center cell.
struct BlockSpec {
    std::vector<std::uint8_t> phi;     // rule indices, cell 1 first
    std::vector<BlockWord> b_states;   // sorted unique interior words
    std::optional<int> center;         // 1-based, 1 < center < p for absorbing blocks

    int size() const { return static_cast<int>(phi.size()); }

    static BlockSpec single(std::vector<std::uint8_t> phi, BlockWord b,
                            std::optional<int> center = std::nullopt);
    // b given as bit string, cell 1 first, e.g. "0010"
    static BlockSpec parse(const std::string& phi_csv, const std::string& b_bits,
                           std::optional<int> center = std::nullopt);

    Support support() const;
    bool operator==(const BlockSpec&) const = default;
};

// mirror: rules mirrored elementwise, interior words complemented
BlockSpec mirror(const BlockSpec& spec);
// reversal: rule order flipped with each rule argument-swapped, words
// bit-reversed, center reflected to p+1-c
BlockSpec reverse(const BlockSpec& spec);

std::string block_word_string(BlockWord b, int p); // "0010" style, cell 1 first
std::string to_string(const BlockSpec& spec);

enum class BlockKind { Impermeable, Absorbing, Neither };

std::string to_string(BlockKind kind);

// Outcome of the adversarial-boundary layer analysis. The layer sequence
// R_0 = b_states, R_{t+1} = { step(s,l,r) : s in R_t, (l,r) in {0,1}^2 }
// always cycles; preperiod/period describe that cycle.
//
//   Impermeable: every computed layer is a singleton, i.e. the interior
//     trajectory never depends on the boundary.
//   Absorbing: a center is given and all states of every layer agree there.
//
// stable[k] means: over the cyclic layers, cell k+1 is agreed within every
// layer and keeps one fixed value.
struct BlockVerdict {
    BlockKind kind = BlockKind::Neither;
    std::int64_t preperiod = 0;
    std::int64_t period = 1;
    std::vector<std::uint8_t> stable;
    std::optional<std::int64_t> center_value_period; // over the cyclic layers
    bool center_constant = false;

    int stable_count() const;
    std::string stable_string() const; // "1111" style, cell 1 first
};

BlockVerdict analyze_block(const BlockSpec& spec, std::int64_t max_layers = (1 << 16) + 2);

// Identical analysis seeded with the whole family (|b_states| > 1).
BlockVerdict analyze_family(const BlockSpec& spec, std::int64_t max_layers = (1 << 16) + 2);

// Smallest t >= 1 such that every state reachable from `member` lies in the
// family again; nullopt if that never happens within max_layers.
std::optional<std::int64_t> family_recurrence_time(const BlockSpec& family, BlockWord member,
                                                   std::int64_t max_layers = (1 << 16) + 2);

struct SearchOptions {
    std::int64_t max_layers = 4096;
    std::size_t max_witnesses = SIZE_MAX; // stop after this many
    bool stop_at_first_size = false;      // finish the smallest p with witnesses, then stop
    int threads = 0;                      // 0 = global default
};

// All impermeable (phi-block, b-word) pairs over the support with p <= p_max,
// ordered by p, then lexicographic phi, then lexicographic b-word.
std::vector<BlockSpec> search_impermeable(Support support, int p_max,
                                          const SearchOptions& options = {});

bool has_impermeable(Support support, int p_max);

// Absorbing witnesses with 1 < c < p; with require_constant_center only
// those whose center value never changes (which is what forces sigma_* > 0).
std::vector<BlockSpec> search_absorbing(Support support, int p_max, bool require_constant_center,
                                        const SearchOptions& options = {});

// The block-structure catalogue of the rule-set lattice:
//   g_sets: minimal supports admitting an impermeable block
//   g_tilde: one canonical representative per symmetry orbit of g_sets
//   b_sets: maximal supports admitting none (every superset does)
struct SupportCollections {
    std::vector<Support> g_sets;
    std::vector<Support> g_tilde;
    std::vector<Support> b_sets;
};

SupportCollections minimal_impermeable_supports(int k_max = 3, int p_max = 4, int threads = 0);

// The published 30 minimal supports, their 12 orbit classes, the 10 maximal
// permeable supports, and the reference witness per class.
std::span<const Support> known_g_sets();
std::span<const Support> known_g_tilde();
std::span<const Support> known_b_sets();
std::span<const BlockSpec> known_impermeable_witnesses(); // 12, one per g_tilde class

// Every support over 0..15 must either contain a g-set or be contained in a
// b-set, and never both. Violators are returned for diagnosis.
struct DichotomyResult {
    bool pass = false;
    std::vector<std::uint16_t> uncovered; // neither side holds
    std::vector<std::uint16_t> overlap;   // both hold
};

DichotomyResult dichotomy_check(std::span<const Support> g_sets, std::span<const Support> b_sets);

// sigma_* = 0 exactly for subsets of these six supports.
std::span<const Support> sigma_star_zero_supports();

enum class SigmaStarStatus { Zero, Positive };

struct ClassificationVerdict {
    SigmaStarStatus status = SigmaStarStatus::Zero;
    std::string evidence;            // human-readable justification
    std::optional<BlockSpec> witness; // impermeable or absorbing block when Positive
};

// Complete classification of a nonempty support by sigma_*: zero iff the
// support is a subset of one of the six exceptional sets, otherwise positive
// with a machine-checkable block witness attached.
ClassificationVerdict theorem1_classify(Support support);

} // namespace rbca
