#pragma once

#include <deque>
#include <string>
#include <vector>

#include "forge/machines.hpp"

namespace forge::nw {

// Binary machine on a circular tape whose head always moves right.  A step
// replaces the scanned cell with one or two cells and moves past them.
enum Cell : std::uint8_t { A = 0, B = 1 };

struct RightTransition {
    bool halt = true;
    std::vector<std::uint8_t> write;  // one or two cells
    StateId next = 0;
};

struct RightTm {
    std::uint32_t k = 0;
    std::vector<RightTransition> table;  // index state * 2 + cell
    std::vector<std::string> stateNames;

    static RightTm make(std::uint32_t states);
    const RightTransition& at(StateId q, std::uint8_t c) const { return table[q * 2 + c]; }
    void set(StateId q, std::uint8_t c, std::vector<std::uint8_t> write, StateId next);
    void validate() const;
    std::string state_name(StateId q) const;
};

RightTm parse_rtm(const std::string& text);
std::string format_rtm(const RightTm& tm);

std::vector<std::uint8_t> cells_from_string(const std::string& s);  // "ABA"
std::string cells_to_string(const std::vector<std::uint8_t>& c);

// Direct simulation: the scanned cell is at the front.
struct CircularConfig {
    StateId state = 0;
    std::deque<std::uint8_t> cells;
    bool operator==(const CircularConfig&) const = default;
};
std::optional<CircularConfig> circular_step(const RightTm& tm, const CircularConfig& c);

// ---- tag system symbols ----------------------------------------------------

enum class Letter : std::uint8_t { H, h, P, Q, U, u, X, x, V, v, Y, y, A, a, B, b, C, c, D, d, Dash, Zero };

struct NwSymbol {
    Letter letter = Letter::Dash;
    std::uint8_t stage = 0;  // 1..6, 0 for '-' and '0'
    StateId state = 0;
    bool operator==(const NwSymbol&) const = default;
};

struct NwLayout {
    std::uint32_t k = 0;
    Symbol id(const NwSymbol& s) const;
    NwSymbol symbol(Symbol id) const;
    std::uint32_t size() const { return 2 + 20 * 6 * k; }
    std::string name(Symbol id) const;  // "H_4,7": stage 4, state 7
};

char letter_char(Letter l);

struct NwSystem {
    TagSystem sys;  // deletion number 2
    NwLayout layout;
    std::vector<bool> used;  // symbols that a correct run may read
};

NwSystem build_nw_system(const RightTm& tm);

// Stage 2 tape: H h, each cell doubled, and the counter of Uu pairs (the
// smallest power of two at least the tape length) before cell counterAt.
std::vector<NwSymbol> encode_nw_tape(const RightTm& tm, const std::vector<std::uint8_t>& tape, StateId state,
                                     std::size_t counterAt = 1);
std::string print_symbols(const std::vector<NwSymbol>& w);

// A pass starts whenever a head symbol (H, h, P, Q) is read, and also when the
// counter is read a second time in stage 4 because the head jumped over it.
// Its text is the tape from the read symbol, or from one symbol earlier when
// the read symbol sits at an odd offset of the output it was appended in.
struct NwPass {
    int stage = 0;
    bool counterRevisit = false;
    std::uint64_t generation = 0;
    std::uint64_t tagStep = 0;
    std::string text;
};

struct NwStep {
    CircularConfig config;  // decoded at the start of each stage-3 pass after stage 6
    std::uint64_t tagSteps = 0;  // since the previous decoded configuration
    std::size_t counter = 0;     // U count in that stage-3 pass
    std::size_t cycles = 0;      // stage 1 passes used to isolate the scanned cell
};

struct NwTrace {
    std::vector<NwPass> passes;
    std::vector<NwStep> steps;
    bool halted = false;
    std::uint64_t tagSteps = 0;
};

struct NwOptions {
    std::size_t counterAt = 1;
    bool keepPasses = true;
    std::uint64_t tagStepBudget = std::uint64_t(1) << 32;
};

NwTrace nw_trace(const RightTm& tm, const std::vector<std::uint8_t>& tape, StateId state, std::size_t tmSteps,
                 const NwOptions& opt = {});

}  // namespace forge::nw
