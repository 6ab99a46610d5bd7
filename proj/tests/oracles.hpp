#pragma once

// Independent reference implementations used as test oracles.  They share no
// code with the library beyond plain data types.

#include <cstdint>
#include <string>
#include <vector>

#include "forge/blocks.hpp"
#include "forge/machines.hpp"
#include "forge/nearywoods.hpp"

namespace oracle {

// Turing machine on a wide array filled from the periodic words.
struct WideTape {
    std::vector<forge::Symbol> cells;
    std::int64_t head = 0;  // index into cells
    forge::StateId state = 0;
    bool halted = false;
};
WideTape unfold(const forge::TmConfiguration& c, std::int64_t radius);
void run_wide(const forge::TuringMachine& tm, WideTape& w, std::uint64_t steps);
forge::Symbol wide_cell(const WideTape& w, std::int64_t offset);

// Deletion-s tag system on plain symbol vectors.
std::vector<std::vector<forge::Symbol>> tag_trajectory(const std::vector<std::vector<forge::Symbol>>& rules,
                                                       std::size_t s, std::vector<forge::Symbol> tape,
                                                       std::size_t maxSteps);

// Cyclic tag system on a list; returns tape lengths after each step.
std::vector<std::size_t> cts_lengths(const std::vector<std::string>& appendants, std::string tape,
                                     std::size_t steps);

// Rule 110 on a finite row whose two outermost cells on each side come from
// the given periodic words; evolves `steps` rows inside a window that shrinks
// by one cell per side per step.
std::vector<std::uint8_t> rule110_rows(const std::vector<std::uint8_t>& row, std::size_t steps);

// Cell of the ether row t, built by evolving a 14-periodic ring.
std::uint8_t ether_cell(std::int64_t x, std::uint64_t t, int phase);

// Map x -> x/2 or (3x+1)/2 until 1.
std::vector<std::uint64_t> collatz_terras(std::uint64_t x);

// Circular right-moving machine, simulated on a std::string of A/B.
struct Circular {
    forge::StateId state = 0;
    std::string tape;  // scanned cell first
};
bool circular_step(const forge::nw::RightTm& tm, Circular& c);

// A block library carved from the ether.  Every block is a strip of ether
// between seams of the right shape, so it validates and assembles; it carries
// no gliders and is only useful for testing the machinery.
forge::BlockLibrary ether_fixture();

// Small machines shared by several suites.
forge::TuringMachine halting_machine();  // halts after a few steps
forge::TuringMachine looping_machine();  // two states bouncing forever
forge::TuringMachine counter_machine();  // binary counter, never halts
forge::TmConfiguration blank(forge::Symbol head = 0);

// Stage snapshots of the polynomial construction for tape ABA.
const std::vector<std::string>& nw_example_lines();

}  // namespace oracle
