#include "forge/emulators.hpp"

#include <map>

namespace forge::emu {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    auto q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

struct Builder {
    TuringMachine tm;
    std::map<std::string, StateId> states;
    std::map<std::string, Symbol> symbols;

    Builder(std::vector<std::string> stateNames, std::vector<std::string> symbolNames) {
        tm = TuringMachine::make(static_cast<std::uint32_t>(stateNames.size()),
                                 static_cast<std::uint32_t>(symbolNames.size()));
        tm.stateNames = stateNames;
        tm.symbolNames = symbolNames;
        for (StateId q = 0; q < stateNames.size(); ++q) states[stateNames[q]] = q;
        for (Symbol a = 0; a < symbolNames.size(); ++a) symbols[symbolNames[a]] = a;
    }
    void rule(const std::string& q, const std::string& a, const std::string& w, const std::string& next, char mv) {
        tm.set(states.at(q), symbols.at(a), symbols.at(w), mv == 'L' ? Move::Left : Move::Right, states.at(next));
    }
    std::vector<Symbol> word(const std::vector<std::string>& w) const {
        std::vector<Symbol> out;
        for (const auto& a : w) out.push_back(symbols.at(a));
        return out;
    }
    TmConfiguration config(const std::string& state, const std::vector<std::string>& left, const std::string& head,
                           const std::vector<std::string>& right) const {
        TmConfiguration c;
        c.state = states.at(state);
        c.leftPeriodic = word(left);
        c.head = symbols.at(head);
        c.rightPeriodic = word(right);
        return c;
    }
};

Emulator tm2x5() {
    Builder b({"S0", "S1"}, {"0", "1", "0^2", "1^2", "!="});
    b.rule("S0", "0", "0^2", "S0", 'L');
    b.rule("S0", "1", "!=", "S1", 'L');
    b.rule("S0", "0^2", "0", "S0", 'R');
    b.rule("S0", "1^2", "1", "S1", 'R');
    b.rule("S0", "!=", "1", "S0", 'R');
    b.rule("S1", "0", "!=", "S0", 'L');
    b.rule("S1", "1", "1^2", "S1", 'L');
    b.rule("S1", "1^2", "0", "S1", 'R');
    b.rule("S1", "!=", "1", "S0", 'R');
    Emulator e{"tm2x5", b.tm, b.config("S0", {"0^2", "0", "1", "0"}, "0^2", {"!=", "1", "!=", "1", "0^2", "0^2"}), {}};
    e.decoder.region = SweepDecoder::Region::PlainLeftOfHead;
    e.decoder.bitOf = {0, 1, -1, -1, -1};
    e.decoder.shift = 0;
    e.decoder.phase = 10;
    return e;
}

Emulator tm3x4() {
    Builder b({"Sx0", "S01", "S11"}, {"0R", "1R", "0L", "1L"});
    b.rule("Sx0", "0R", "0L", "Sx0", 'R');
    b.rule("Sx0", "1R", "1L", "S01", 'R');
    b.rule("Sx0", "0L", "0R", "Sx0", 'L');
    b.rule("Sx0", "1L", "1R", "Sx0", 'L');
    b.rule("S01", "0R", "1L", "Sx0", 'R');
    b.rule("S01", "1R", "1L", "S11", 'R');
    b.rule("S11", "0R", "1L", "Sx0", 'R');
    b.rule("S11", "1R", "0L", "S11", 'R');
    Emulator e{"tm3x4", b.tm, b.config("Sx0", {"0L", "1L", "0R"}, "0L", {"0L", "1L", "1R", "0R", "0L"}), {}};
    e.decoder.bitOf = {0, 1, 0, 1};
    e.decoder.shift = 1;
    e.decoder.phase = 10;
    e.decoder.rightMargin = 7;
    return e;
}

Emulator tm4x3() {
    Builder b({"Sx0", "S01", "S11", "SB"}, {"0", "1", "B"});
    b.rule("Sx0", "0", "0", "Sx0", 'R');
    b.rule("Sx0", "1", "1", "S01", 'R');
    b.rule("Sx0", "B", "0", "SB", 'L');
    b.rule("S01", "0", "1", "Sx0", 'R');
    b.rule("S01", "1", "1", "S11", 'R');
    b.rule("S11", "0", "1", "Sx0", 'R');
    b.rule("S11", "1", "0", "S11", 'R');
    b.rule("SB", "0", "0", "SB", 'L');
    b.rule("SB", "1", "1", "SB", 'L');
    b.rule("SB", "B", "0", "Sx0", 'R');
    Emulator e{"tm4x3", b.tm, b.config("Sx0", {"B", "0", "1"}, "B", {"B", "1", "1", "1", "1", "1", "0", "B"}), {}};
    e.decoder.bitOf = {0, 1, -1};
    e.decoder.shift = 1;
    e.decoder.phase = 12;
    return e;
}

Emulator tm7x2() {
    Builder b({"Sx0", "S01", "S11", "SL", "Tx0", "T01", "T11"}, {"0", "1"});
    b.rule("Sx0", "0", "0", "Tx0", 'R');
    b.rule("Sx0", "1", "1", "T01", 'R');
    b.rule("S01", "0", "1", "Tx0", 'R');
    b.rule("S01", "1", "1", "T11", 'R');
    b.rule("S11", "0", "1", "Tx0", 'R');
    b.rule("S11", "1", "0", "T11", 'R');
    b.rule("SL", "0", "0", "Tx0", 'L');
    b.rule("SL", "1", "1", "Tx0", 'L');
    b.rule("Tx0", "0", "1", "Sx0", 'R');
    b.rule("Tx0", "1", "0", "SL", 'L');
    b.rule("T01", "0", "1", "S01", 'R');
    b.rule("T11", "0", "1", "S11", 'R');
    std::vector<std::string> left{"1", "1", "0", "0", "1", "1"};
    std::vector<std::string> right{"1", "0", "1", "1", "0", "1", "0", "0", "1", "0"};
    Emulator e{"tm7x2", b.tm, b.config("S11", left, "0", right), {}};
    e.decoder.bitOf = {0, 1};
    e.decoder.stride = 2;
    e.decoder.parity = 0;
    e.decoder.shift = 1;
    e.decoder.phase = 12;
    return e;
}

// Tape addressed by absolute cell, filled lazily from the periodic words.
class AbsoluteTape {
public:
    explicit AbsoluteTape(const TmConfiguration& c) : cfg_(c) {}
    Symbol get(std::int64_t x) {
        reach(x);
        return cells_[static_cast<std::size_t>(x - origin_)];
    }
    void set(std::int64_t x, Symbol a) {
        reach(x);
        cells_[static_cast<std::size_t>(x - origin_)] = a;
    }

private:
    void reach(std::int64_t x) {
        while (x < origin_) {
            auto grow = std::max<std::int64_t>(64, static_cast<std::int64_t>(cells_.size()));
            std::vector<Symbol> front;
            for (auto y = origin_ - grow; y < origin_; ++y) front.push_back(cfg_.cell(y));
            cells_.insert(cells_.begin(), front.begin(), front.end());
            origin_ -= grow;
        }
        while (x >= origin_ + static_cast<std::int64_t>(cells_.size())) {
            auto grow = std::max<std::int64_t>(64, static_cast<std::int64_t>(cells_.size()));
            auto end = origin_ + static_cast<std::int64_t>(cells_.size());
            for (auto y = end; y < end + grow; ++y) cells_.push_back(cfg_.cell(y));
        }
    }

    const TmConfiguration& cfg_;
    std::vector<Symbol> cells_;
    std::int64_t origin_ = 0;
};

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"tm2x5", "tm3x4", "tm4x3", "tm7x2"};
    return names;
}

Emulator builtin_machine(const std::string& name) {
    if (name == "tm2x5") return tm2x5();
    if (name == "tm3x4") return tm3x4();
    if (name == "tm4x3") return tm4x3();
    if (name == "tm7x2") return tm7x2();
    fail(ErrorKind::Input, "unknown built-in machine: " + name);
}

std::vector<DecodedRow> decode_sweeps(const Emulator& e, std::size_t rows, std::uint64_t stepBudget,
                                     std::string* problem) {
    const auto& d = e.decoder;
    if (d.bitOf.size() != e.tm.t || d.stride < 1) fail(ErrorKind::Input, "decoder does not fit the machine");
    AbsoluteTape tape(e.cfg);
    std::vector<DecodedRow> out;
    StateId q = e.cfg.state;
    std::int64_t pos = 0, lastTurn = 0;
    Move last = Move::Halt;
    auto bit = [&](std::int64_t x) { return d.bitOf[tape.get(x)]; };
    for (std::uint64_t n = 0; n < stepBudget && out.size() < rows; ++n) {
        const auto& tr = e.tm.at(q, tape.get(pos));
        if (tr.move == Move::Halt) break;
        if (last == Move::Right && tr.move == Move::Left) {
            const auto k = static_cast<std::int64_t>(out.size());
            std::int64_t lo = lastTurn, hi = pos - d.rightMargin;
            if (d.region == SweepDecoder::Region::PlainLeftOfHead) {
                hi = pos - 1;
                lo = pos;
                while (bit(lo - 1) >= 0) --lo;
            }
            DecodedRow row;
            bool first = true;
            for (auto x = lo; x <= hi; ++x) {
                if ((x - d.parity) % d.stride != 0 || bit(x) < 0) continue;
                auto X = floor_div(x - d.parity, d.stride) - d.shift * k;
                if (first) row.x0 = X;
                else if (X != row.x0 + static_cast<std::int64_t>(row.cells.size())) {
                    if (problem) *problem = "sweep " + std::to_string(k) + " has a gap at cell " + std::to_string(X);
                    return out;
                }
                first = false;
                row.cells.push_back(static_cast<std::uint8_t>(bit(x)));
            }
            out.push_back(std::move(row));
        }
        if (last == Move::Left && tr.move == Move::Right) lastTurn = pos;
        tape.set(pos, tr.write);
        q = tr.next;
        pos += tr.move == Move::Right ? 1 : -1;
        last = tr.move;
    }
    return out;
}

EtherReport verify_ether(const Emulator& e, std::size_t rows) {
    EtherReport rep;
    const std::uint64_t budget = 400 * static_cast<std::uint64_t>(rows + 10) * (rows + 10);
    std::string problem;
    auto decoded = decode_sweeps(e, rows, budget, &problem);
    rep.rowsDecoded = decoded.size();
    r110::Evolver ether(r110::ether_state(0, e.decoder.phase));
    for (std::size_t k = 0; k < decoded.size(); ++k) {
        const auto& row = decoded[k];
        rep.widths.push_back(row.cells.size());
        for (std::size_t i = 0; i < row.cells.size(); ++i) {
            auto X = row.x0 + static_cast<std::int64_t>(i);
            if (ether.cell(X) != row.cells[i]) {
                rep.firstBadRow = k;
                rep.firstBadCell = X;
                rep.message = e.name + ": row " + std::to_string(k) + " differs from the ether at cell " + std::to_string(X);
                return rep;
            }
            ++rep.cellsChecked;
        }
        ether.step();
    }
    if (decoded.size() < rows) {
        rep.firstBadRow = decoded.size();
        rep.message = e.name + ": " + (problem.empty() ? "only " + std::to_string(decoded.size()) + " rows before the machine stopped sweeping" : problem);
        return rep;
    }
    rep.ok = true;
    rep.message = e.name + ": " + std::to_string(rows) + " rows match the ether (" + std::to_string(rep.cellsChecked) +
                  " cells)";
    return rep;
}

EtherReport verify_ether(const std::string& name, std::size_t rows) { return verify_ether(builtin_machine(name), rows); }

}  // namespace forge::emu
