#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace forge::r110 {

using Row = std::vector<std::uint8_t>;  // one cell per byte, 0 or 1

inline std::uint8_t local_rule(std::uint8_t l, std::uint8_t c, std::uint8_t r) {
    return static_cast<std::uint8_t>((110u >> ((l << 2) | (c << 1) | r)) & 1u);
}

Row row_from_string(const std::string& s);
std::string row_to_string(const Row& r);

// The spatially periodic background.  Row t of the ether is row 0 shifted
// left by 4t cells (mod 14).
const Row& ether_word();

// cell(x) = leftWord[(leftPhase - (origin - 1 - x)) mod |leftWord|]   for x < origin
//         = center[x - origin]                                       inside
//         = rightWord[(rightPhase + (x - end)) mod |rightWord|]       for x >= end
// where end = origin + |center|.
struct Rule110State {
    Row leftWord;
    std::int64_t leftPhase = 0;
    Row center;
    Row rightWord;
    std::int64_t rightPhase = 0;
    std::int64_t origin = 0;

    std::uint8_t cell(std::int64_t x) const;
    std::int64_t end() const { return origin + static_cast<std::int64_t>(center.size()); }
    Row window(std::int64_t x0, std::int64_t x1) const;
    void validate() const;
};

Rule110State ether_state(std::size_t centerCells, std::int64_t shift = 0);

// Reference implementation: byte per cell, no caching, no renormalization.
Rule110State step(const Rule110State& s);
void step_row_serial(const Row& in, Row& out);  // out[i] for 0 < i < n-1

// Bit-parallel kernel.  Cell i sits at bit i%64 of word i/64.  leftWord and
// rightWord are the words just outside the row.
void step_words(const std::uint64_t* in, std::uint64_t* out, std::size_t n, std::uint64_t leftWord,
                std::uint64_t rightWord);

struct HaltReport {
    bool halted = false;
    std::uint64_t step = 0;
    std::int64_t position = 0;
    bool temporalEnabled = false;
    bool temporalHalted = false;
    std::uint64_t temporalStep = 0;
    std::int64_t temporalPosition = 0;
    std::uint64_t stepsRun = 0;
};

extern const char* const kSpatialSignature;   // 01101001101000
extern const char* const kTemporalSignature;  // 110101010111111, oldest first

// Packed evolution of a state with periodic sides.  Side words are kept in
// least-rotation form; the successor of each distinct word is computed once.
class Evolver {
public:
    struct Options {
        bool temporal = false;
        std::size_t renormalizeEvery = 64;
    };

    explicit Evolver(const Rule110State& s);
    Evolver(const Rule110State& s, Options opt);
    ~Evolver();
    Evolver(const Evolver&) = delete;
    Evolver& operator=(const Evolver&) = delete;

    void step();
    std::uint64_t time() const { return t_; }
    std::uint8_t cell(std::int64_t x) const;
    Row window(std::int64_t x0, std::int64_t x1) const;
    Rule110State state() const;
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }
    void renormalize();

    // Leftmost position of the spatial signature in the current row.
    std::optional<std::int64_t> find_spatial() const;
    // Cell whose last 15 values spell the temporal signature.
    std::optional<std::int64_t> find_temporal() const;
    std::size_t cached_side_words() const;

private:
    struct Word;
    struct Side {
        const Word* word = nullptr;
        std::int64_t anchor = 0;  // cell(x) = word->bits[(x - anchor) mod p]
        std::uint8_t at(std::int64_t x) const;
    };

    const Word* intern(const Row& bits, std::int64_t& rotation);
    const Word* successor(const Word* w);
    void ensure_margins();
    void fill_margins();
    void set_bit(std::int64_t x, std::uint8_t v);
    std::uint8_t buffer_bit(std::int64_t x) const;
    void trim_buffer();

    Options opt_;
    std::unordered_map<std::string, std::unique_ptr<Word>> registry_;
    Side left_, right_;
    std::vector<std::uint64_t> buf_, tmp_;
    std::int64_t base_ = 0;  // absolute cell of bit 0 of buf_[0], multiple of 64
    std::int64_t lo_ = 0, hi_ = 0;
    std::uint64_t t_ = 0;
    struct Past {
        std::int64_t base;
        std::vector<std::uint64_t> words;
    };
    std::vector<Past> history_;  // ring of the last 15 rows when temporal detection is on
};

HaltReport run_until_halt(const Rule110State& s, std::uint64_t maxSteps, bool temporal = false);

struct SpaceTimeWindow {
    std::int64_t origin = 0;
    std::vector<Row> rows;
};

enum class Format { P1, P4, Ascii };

SpaceTimeWindow record(const Rule110State& s, std::int64_t x0, std::int64_t x1, std::uint64_t steps);
std::string render(const SpaceTimeWindow& w, Format f);
SpaceTimeWindow parse_p1(const std::string& text);
Format parse_format(const std::string& name);

}  // namespace forge::r110
