#pragma once

#include <string>
#include <vector>

#include "forge/machines.hpp"

namespace forge {

struct TagSymbolId {
    enum class Kind { H, L, R, RStar, HPair, LPair, RPair, Dummy };
    Kind kind = Kind::Dummy;
    std::uint32_t state = 0;   // 0-based
    std::uint32_t symbol = 0;  // 0-based, pair kinds only
    bool operator==(const TagSymbolId&) const = default;
};

// Alphabet layout: H_1..H_m, L_1..L_m, R_1..R_m, R*_1..R*_m, then the pair
// symbols H_(i,j), L_(i,j), R_(i,j), state major.  Anything past 4m+3ms is a
// dummy symbol.
struct CmLayout {
    std::uint32_t m = 0;
    std::uint32_t t = 0;
    std::uint32_t s = 0;

    CmLayout() = default;
    CmLayout(std::uint32_t states, std::uint32_t symbols) : m(states), t(symbols), s(symbols + 2) {}

    std::uint32_t size() const { return 4 * m + 3 * m * s; }
    Symbol H(std::uint32_t i) const { return i; }
    Symbol L(std::uint32_t i) const { return m + i; }
    Symbol R(std::uint32_t i) const { return 2 * m + i; }
    Symbol RStar(std::uint32_t i) const { return 3 * m + i; }
    Symbol HPair(std::uint32_t i, std::uint32_t j) const { return 4 * m + i * s + j; }
    Symbol LPair(std::uint32_t i, std::uint32_t j) const { return 4 * m + m * s + i * s + j; }
    Symbol RPair(std::uint32_t i, std::uint32_t j) const { return 4 * m + 2 * m * s + i * s + j; }

    TagSymbolId describe(Symbol a) const;
    std::string name(Symbol a) const;
};

struct CompiledTag {
    TagSystem sys;
    TagTape tape;
    CmLayout layout;
};

CompiledTag compile_tm_to_tag(const TuringMachine& tm, const TmConfiguration& cfg);

// Configuration read back from a canonical tape.  head is 0-based and may be
// t or t+1 when the head sits on one of the two end markers.  left holds
// b_1..b_x (nearest the head first), right holds d_1..d_y.
struct DecodedTm {
    StateId state = 0;
    Symbol head = 0;
    std::vector<Symbol> left;
    std::vector<Symbol> right;
    bool operator==(const DecodedTm&) const = default;
};

// A tape is canonical when it is a rotation of [H][L][R] for one state and the
// coming pass reads the H run exactly once.  skip is the number of symbols at
// the front that the previous read already consumed.  The head symbol is the
// reading phase at the end of the pass; the cell digits are the base-s digits
// of the number of reads landing in the L and R runs.
DecodedTm decode_tag_tape(const TagTape& tape, const CmLayout& layout, const BigInt& skip = 0);

// Rebuilds a full configuration using the periodic words of the original
// tape, which the tag encoding keeps inside its rules.
TmConfiguration to_configuration(const DecodedTm& d, const CmLayout& layout, const std::vector<Symbol>& leftPeriodic,
                                 const std::vector<Symbol>& rightPeriodic);

DecodedTm describe_configuration(const TmConfiguration& cfg);

}  // namespace forge
