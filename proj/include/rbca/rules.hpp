#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace rbca {

// One of the 16 Boolean maps {0,1}^2 -> {0,1}. The index doubles as the
// truth table: the value on inputs (x,y) is stored at bit 2x+y, so the
// index is the binary number whose most significant bit is the value on
// (1,1) and whose least significant bit is the value on (0,0).
struct Rule {
    std::uint8_t index = 0;

    constexpr Rule() = default;
    constexpr explicit Rule(int j) : index(static_cast<std::uint8_t>(j)) {}

    constexpr bool apply(bool x, bool y) const {
        return ((index >> ((static_cast<int>(x) << 1) | static_cast<int>(y))) & 1) != 0;
    }

    constexpr bool operator==(const Rule&) const = default;
    constexpr auto operator<=>(const Rule&) const = default;
};

constexpr bool apply(Rule rule, bool x, bool y) { return rule.apply(x, y); }

// The affine rules and their formulas (arithmetic mod 2).
enum class AffineForm {
    Const0,      // 0
    Const1,      // 1
    X,           // x
    XPlus1,      // x+1
    Y,           // y
    YPlus1,      // y+1
    XPlusY,      // x+y
    XPlusYPlus1, // x+y+1
    NotAffine,
};

AffineForm affine_form(Rule rule);
std::string to_string(AffineForm form);

// Conjugation by the 0<->1 swap: (Mf)(x,y) = 1 - f(1-x, 1-y).
// As a permutation of indices: (0 15)(1 7)(2 11)(4 13)(6 9)(8 14).
constexpr Rule mirror(Rule rule) {
    int j = rule.index;
    int rev = ((j & 1) << 3) | ((j & 2) << 1) | ((j & 4) >> 1) | ((j & 8) >> 3);
    return Rule(~rev & 0xf);
}

// Argument swap: (Rf)(x,y) = f(y,x). Permutation: (2 4)(3 5)(10 12)(11 13).
constexpr Rule reverse(Rule rule) {
    int j = rule.index;
    return Rule((j & 0x9) | ((j & 2) << 1) | ((j & 4) >> 1));
}

// A set of rule indices, stored as a bitmask over 0..15. Used both for
// distribution supports and for plain set algebra (where empty is allowed).
struct Support {
    std::uint16_t mask = 0;

    constexpr Support() = default;
    constexpr explicit Support(std::uint16_t m) : mask(m) {}
    Support(std::initializer_list<int> rules) {
        for (int j : rules) mask = static_cast<std::uint16_t>(mask | (1u << j));
    }

    bool contains(int j) const { return (mask >> j) & 1; }
    bool subset_of(Support other) const { return (mask & ~other.mask) == 0; }
    bool contains_all(Support other) const { return other.subset_of(*this); }
    bool empty() const { return mask == 0; }
    int size() const { return __builtin_popcount(mask); }

    std::vector<int> members() const {
        std::vector<int> out;
        for (int j = 0; j < 16; ++j)
            if (contains(j)) out.push_back(j);
        return out;
    }

    constexpr bool operator==(const Support&) const = default;
};

// Lexicographic order on the sorted member lists ({2,5} < {3,4}), which is
// the order used to pick canonical orbit representatives. Note this is not
// the numeric order of the masks.
bool lex_less(Support a, Support b);

Support mirror(Support s);
Support reverse(Support s);

// Orbit under the 4-element group generated by elementwise mirror and
// reverse; size always divides 4. Sorted by lex_less.
std::vector<Support> orbit(Support s);

// Lexicographically smallest orbit member; idempotent.
Support canonicalize(Support s);

// Comma-separated sorted decimal indices, e.g. "2,9,9,2" for blocks and
// "3,6,9,12" for supports.
std::string to_string(Support s);

} // namespace rbca
