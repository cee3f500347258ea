#include "rbca/rules.hpp"

#include <algorithm>

namespace rbca {

AffineForm affine_form(Rule rule) {
    switch (rule.index) {
        case 0: return AffineForm::Const0;
        case 3: return AffineForm::XPlus1;
        case 5: return AffineForm::YPlus1;
        case 6: return AffineForm::XPlusY;
        case 9: return AffineForm::XPlusYPlus1;
        case 10: return AffineForm::Y;
        case 12: return AffineForm::X;
        case 15: return AffineForm::Const1;
        default: return AffineForm::NotAffine;
    }
}

std::string to_string(AffineForm form) {
    switch (form) {
        case AffineForm::Const0: return "0";
        case AffineForm::Const1: return "1";
        case AffineForm::X: return "x";
        case AffineForm::XPlus1: return "x+1";
        case AffineForm::Y: return "y";
        case AffineForm::YPlus1: return "y+1";
        case AffineForm::XPlusY: return "x+y";
        case AffineForm::XPlusYPlus1: return "x+y+1";
        case AffineForm::NotAffine: return "no";
    }
    return "no";
}

bool lex_less(Support a, Support b) {
    // compare sorted index lists element by element
    std::uint16_t x = a.mask, y = b.mask;
    while (x != 0 && y != 0) {
        int i = __builtin_ctz(x);
        int j = __builtin_ctz(y);
        if (i != j) return i < j;
        x &= x - 1;
        y &= y - 1;
    }
    return x == 0 && y != 0;
}

Support mirror(Support s) {
    Support out;
    for (int j = 0; j < 16; ++j)
        if (s.contains(j)) out.mask |= std::uint16_t(1u << mirror(Rule(j)).index);
    return out;
}

Support reverse(Support s) {
    Support out;
    for (int j = 0; j < 16; ++j)
        if (s.contains(j)) out.mask |= std::uint16_t(1u << reverse(Rule(j)).index);
    return out;
}

std::vector<Support> orbit(Support s) {
    std::vector<Support> out{s, mirror(s), reverse(s), reverse(mirror(s))};
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Support canonicalize(Support s) { return orbit(s).front(); }

std::string to_string(Support s) {
    std::string out;
    for (int j : s.members()) {
        if (!out.empty()) out += ',';
        out += std::to_string(j);
    }
    return out;
}

} // namespace rbca
