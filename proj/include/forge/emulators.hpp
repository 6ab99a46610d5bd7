#pragma once

#include <string>
#include <vector>

#include "forge/machines.hpp"
#include "forge/r110.hpp"

namespace forge::emu {

// How a machine's trace is cut into Rule 110 rows.  A row is read whenever the
// head turns from moving right to moving left.
struct SweepDecoder {
    enum class Region {
        PlainLeftOfHead,  // the maximal run of row symbols ending just left of the head
        SinceLastTurn,    // from the last left-to-right turn up to the head
    };
    Region region = Region::SinceLastTurn;
    std::vector<int> bitOf;  // per tape symbol: 0, 1, or -1 when the symbol is not a row cell
    int stride = 1;          // tape cells per Rule 110 cell
    int parity = 0;          // offset of the cells that carry the row when stride > 1
    int shift = 0;           // Rule 110 cells the row moves right per sweep
    int phase = 0;           // ether alignment of tape cell 0 in row 0
    int rightMargin = 0;     // cells at the right end of a sweep that are not settled yet
};

struct Emulator {
    std::string name;
    TuringMachine tm;
    TmConfiguration cfg;
    SweepDecoder decoder;
};

const std::vector<std::string>& builtin_names();
Emulator builtin_machine(const std::string& name);

struct DecodedRow {
    std::int64_t x0 = 0;  // Rule 110 coordinate of cells.front()
    std::vector<std::uint8_t> cells;
};

// Runs the machine until `rows` rows are read, the step budget runs out, or a
// sweep cannot be read as a row (then *problem says why).
std::vector<DecodedRow> decode_sweeps(const Emulator& e, std::size_t rows, std::uint64_t stepBudget,
                                      std::string* problem = nullptr);

struct EtherReport {
    bool ok = false;
    std::size_t rowsDecoded = 0;
    std::size_t cellsChecked = 0;
    std::size_t firstBadRow = 0;
    std::int64_t firstBadCell = 0;
    std::vector<std::size_t> widths;
    std::string message;
};

// Compares decoded rows with direct Rule 110 evolution of the ether.
EtherReport verify_ether(const Emulator& e, std::size_t rows);
EtherReport verify_ether(const std::string& name, std::size_t rows);

}  // namespace forge::emu
