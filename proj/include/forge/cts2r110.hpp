#pragma once

#include <string>
#include <vector>

#include "forge/blocks.hpp"
#include "forge/machines.hpp"
#include "forge/r110.hpp"

namespace forge {

// Block strings use the letters A..L for the blocks.
std::string center_block_string(const Bits& tape);
std::string right_block_string(const CyclicTagSystem& sys);
std::uint64_t compute_v(const CyclicTagSystem& sys);
// The left side read from the center outwards: B A^12 B A^11 B A^13 B A^v.
std::string left_block_string(std::uint64_t v);

struct Piece {
    char block = '?';
    int row = 0;
    std::int64_t x = 0;  // cell of the first bit of that row in the initial state
};

struct Assembly {
    r110::Rule110State state;
    std::vector<Piece> pieces;  // one period of the left word, the center, one period of the right word
    std::uint64_t v = 0;
    std::size_t leftTraversals = 0;
    std::size_t rightTraversals = 0;
    std::string centerBlocks;
    std::string rightBlocks;
};

// Appendant lengths must be multiples of 6 and the first appendant non-empty.
Assembly assemble_state(const CyclicTagSystem& sys, const Bits& tape, const BlockLibrary& lib);

struct ConsistencyReport {
    bool ok = true;
    std::uint64_t steps = 0;
    std::size_t cellsChecked = 0;
    std::uint64_t badStep = 0;
    std::int64_t badCell = 0;
    char badBlock = '?';
    std::string message;
};

// Evolves the assembled state and compares every cell that some piece
// predicts for the later rows, skipping cells within seamMargin of a seam.
ConsistencyReport check_evolution(const Assembly& a, const BlockLibrary& lib, std::uint64_t steps,
                                  std::int64_t seamMargin = 0);

}  // namespace forge
