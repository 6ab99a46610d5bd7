#pragma once

#include "forge/machines.hpp"

namespace forge {

struct CompiledCts {
    CyclicTagSystem sys;
    Bits tape;
    std::uint32_t phiSize = 0;  // |Phi| after padding
    std::uint32_t s = 0;
};

// Unary encoding: symbol i of the padded alphabet becomes N^i Y N^(|Phi|-i-1).
// Words longer than limit symbols are refused.
CompiledCts compile_tag_to_cts(const TagSystem& sys, const TagTape& tape, std::uint64_t limit = std::uint64_t(1) << 26);

std::uint32_t padded_alphabet_size(std::uint32_t n);

TagTape decode_cts_tape(const Bits& tape, std::uint32_t phiSize);

struct NormalizedCts {
    CyclicTagSystem sys;
    Bits tape;
};

NormalizedCts normalize_cts_mod6(const CyclicTagSystem& sys, const Bits& tape);
Bits expand_mod6(const Bits& w);
// Inverse of expand_mod6; throws NotCanonical when a padding symbol is a Y.
Bits collapse_mod6(const Bits& w);

}  // namespace forge
