#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forge/bigint.hpp"
#include "forge/error.hpp"

namespace forge {

using Symbol = std::uint32_t;
using StateId = std::uint32_t;

enum class Move : std::uint8_t { Left, Right, Halt };

struct Transition {
    Symbol write = 0;
    Move move = Move::Halt;
    StateId next = 0;
    bool operator==(const Transition&) const = default;
};

struct TuringMachine {
    std::uint32_t m = 0;  // states
    std::uint32_t t = 0;  // symbols
    std::vector<Transition> table;  // index state * t + symbol
    std::vector<std::string> stateNames;
    std::vector<std::string> symbolNames;

    static TuringMachine make(std::uint32_t states, std::uint32_t symbols);
    const Transition& at(StateId q, Symbol a) const { return table[q * t + a]; }
    Transition& at(StateId q, Symbol a) { return table[q * t + a]; }
    void set(StateId q, Symbol a, Symbol write, Move move, StateId next);
    void validate() const;
    std::string state_name(StateId q) const;
    std::string symbol_name(Symbol a) const;
};

// Tape: ... [leftPeriodic]^inf leftFinite (head) rightFinite [rightPeriodic]^inf ...
// leftFinite and leftPeriodic are stored left to right, so leftFinite.back() is
// the cell just left of the head and leftPeriodic.back() is the cell just left
// of leftFinite.front().
struct TmConfiguration {
    StateId state = 0;
    std::vector<Symbol> leftPeriodic;
    std::deque<Symbol> leftFinite;
    Symbol head = 0;
    std::deque<Symbol> rightFinite;
    std::vector<Symbol> rightPeriodic;

    Symbol cell(std::int64_t offset) const;
    void validate(const TuringMachine& tm) const;
    bool operator==(const TmConfiguration&) const = default;
};

// Same state and same cells within [-radius, radius] of the head.
bool same_window(const TmConfiguration& a, const TmConfiguration& b, std::int64_t radius);
std::string format_window(const TuringMachine& tm, const TmConfiguration& c, std::int64_t radius);

std::optional<TmConfiguration> tm_step(const TuringMachine& tm, const TmConfiguration& cfg);

// ---- tag systems -----------------------------------------------------------

struct Run {
    Symbol sym = 0;
    BigInt count;
    bool operator==(const Run&) const = default;
};

using RleWord = std::vector<Run>;

BigInt word_length(const RleWord& w);
void append_run(RleWord& w, Symbol sym, const BigInt& count);
RleWord rle_from_symbols(const std::vector<Symbol>& syms);
std::vector<Symbol> expand_word(const RleWord& w, std::uint64_t limit);

struct TagSystem {
    std::uint32_t s = 2;
    std::vector<std::string> alphabet;
    std::vector<RleWord> appendants;

    std::uint32_t size() const { return static_cast<std::uint32_t>(alphabet.size()); }
    void validate() const;
};

class TagTape {
public:
    TagTape() = default;
    explicit TagTape(const RleWord& w);
    static TagTape from_symbols(const std::vector<Symbol>& syms);

    const std::deque<Run>& runs() const { return runs_; }
    const BigInt& length() const { return length_; }
    bool empty() const { return length_ == 0; }
    Symbol front() const { return runs_.front().sym; }
    void push_back(Symbol sym, const BigInt& count);
    void append(const RleWord& w);
    void drop_front(BigInt n);
    RleWord word() const { return {runs_.begin(), runs_.end()}; }
    std::vector<Symbol> expand(std::uint64_t limit) const;
    bool operator==(const TagTape& o) const { return runs_ == o.runs_; }

private:
    std::deque<Run> runs_;
    BigInt length_ = 0;
};

std::optional<TagTape> tag_step(const TagSystem& sys, const TagTape& tape);

// A run when body is null, otherwise body repeated count times.
struct TagSeg {
    Symbol sym = 0;
    BigInt count;
    std::shared_ptr<const std::vector<TagSeg>> body;
    BigInt len;
};

// Batched interpreter. A read inside a long run (or a long repetition of a
// word) is applied in bulk, so tapes with astronomically many symbols are fine
// as long as their structure is small.
class TagRunner {
public:
    TagRunner(const TagSystem& sys, const TagTape& tape);

    bool halted() const { return halted_; }
    const BigInt& steps() const { return steps_; }
    const BigInt& length() const;
    // The tape as a plain run list, if it has no repeated blocks left.
    std::optional<TagTape> flat_tape() const;
    // Consume one top level segment of the tape.  Returns false once halted.
    bool advance();
    // Single tag step; used near the end of a computation.
    bool step();
    std::size_t segment_count() const { return tape_.size(); }
    std::string describe() const;

private:
    using Seg = TagSeg;

    void push_back(Seg seg);
    void consume(const Seg& seg, BigInt& skip, std::vector<Seg>& out);
    void settle_skip(bool expand);
    void expand_front();

    const TagSystem& sys_;
    std::vector<std::shared_ptr<const std::vector<Seg>>> appendantSegs_;
    std::deque<Seg> tape_;
    BigInt skip_ = 0;
    BigInt steps_ = 0;
    BigInt length_ = 0;
    bool halted_ = false;
};

// ---- cyclic tag systems ----------------------------------------------------

using Bits = std::vector<std::uint8_t>;  // 1 = Y, 0 = N

std::string bits_to_yn(const Bits& b);
Bits yn_to_bits(const std::string& s);

struct CyclicTagSystem {
    std::vector<Bits> appendants;
    void validate() const;
};

struct CtsState {
    Bits tape;
    std::size_t marker = 0;
    bool operator==(const CtsState&) const = default;
};

std::optional<CtsState> cts_step(const CyclicTagSystem& sys, const CtsState& st);

// In-place interpreter for long runs.
class CtsRunner {
public:
    CtsRunner(const CyclicTagSystem& sys, const Bits& tape, std::size_t marker = 0);
    bool step();
    bool halted() const { return tape_.empty(); }
    std::size_t marker() const { return marker_; }
    std::size_t size() const { return tape_.size(); }
    std::uint64_t steps() const { return steps_; }
    Bits tape() const { return {tape_.begin(), tape_.end()}; }
    CtsState state() const { return {tape(), marker_}; }

private:
    const CyclicTagSystem& sys_;
    std::deque<std::uint8_t> tape_;
    std::size_t marker_ = 0;
    std::uint64_t steps_ = 0;
};

}  // namespace forge
