#include "forge/cts2r110.hpp"

#include <algorithm>
#include <map>

#include "forge/error.hpp"

namespace forge {

std::string center_block_string(const Bits& tape) {
    if (tape.empty()) fail(ErrorKind::Input, "the tape must not be empty");
    std::string out = "C";
    for (auto b : tape) out += b ? "FD" : "ED";
    out.back() = 'G';
    return out;
}

std::string right_block_string(const CyclicTagSystem& sys) {
    if (sys.appendants.empty()) fail(ErrorKind::Input, "the appendant list must not be empty");
    if (sys.appendants.front().empty())
        fail(ErrorKind::Unsupported, "the first appendant is empty, which needs a prepared short leader");
    std::string out;
    for (const auto& a : sys.appendants) {
        if (a.empty()) {
            out += 'L';
            continue;
        }
        std::string w;
        for (auto b : a) w += b ? "II" : "IJ";
        out += "KH" + w.substr(1);
    }
    return out.substr(1) + 'K';
}

std::uint64_t compute_v(const CyclicTagSystem& sys) {
    std::uint64_t ys = 0, ns = 0, full = 0, empty = 0;
    for (const auto& a : sys.appendants) {
        (a.empty() ? empty : full) += 1;
        for (auto b : a) (b ? ys : ns) += 1;
    }
    return 76 * ys + 80 * ns + 60 * full + 43 * empty;
}

std::string left_block_string(std::uint64_t v) {
    return "B" + std::string(12, 'A') + "B" + std::string(11, 'A') + "B" + std::string(13, 'A') + "B" +
           std::string(v, 'A');
}

namespace {

struct Strip {
    r110::Row bits;
    std::vector<Piece> pieces;  // x relative to the start of bits
};

void append_row(Strip& s, const BitBlock& b, int row) {
    s.pieces.push_back({b.id, row, static_cast<std::int64_t>(s.bits.size())});
    s.bits.insert(s.bits.end(), b.rows[row].begin(), b.rows[row].end());
}

}  // namespace

Assembly assemble_state(const CyclicTagSystem& sys, const Bits& tape, const BlockLibrary& lib) {
    for (std::size_t i = 0; i < sys.appendants.size(); ++i)
        if (sys.appendants[i].size() % 6 != 0)
            fail(ErrorKind::Input, "appendant " + std::to_string(i) + " has length " +
                                       std::to_string(sys.appendants[i].size()) + ", not a multiple of 6");
    Assembly a;
    a.centerBlocks = center_block_string(tape);
    a.rightBlocks = right_block_string(sys);
    a.v = compute_v(sys);

    const auto& c = lib.at('C');
    if (c.t0Row < 0 || c.t0Row >= static_cast<int>(c.rows.size()))
        fail(ErrorKind::CorruptLibrary, "block C does not mark its initial row");

    Strip center;
    append_row(center, c, c.t0Row);
    int phase = c.right_phase(c.t0Row);
    for (std::size_t i = 1; i < a.centerBlocks.size(); ++i) {
        const auto& b = lib.at(a.centerBlocks[i]);
        const int r = b.row_from_left(phase);
        append_row(center, b, r);
        phase = b.right_phase(r);
    }

    Strip right;
    const int start = phase;
    do {
        if (a.rightTraversals == static_cast<std::size_t>(c.rightSeamPeriod))
            fail(ErrorKind::CorruptLibrary, "right side never returns to its starting phase");
        for (char id : a.rightBlocks) {
            const auto& b = lib.at(id);
            const int r = b.row_from_left(phase);
            append_row(right, b, r);
            phase = b.right_phase(r);
        }
        ++a.rightTraversals;
    } while (phase != start);

    // Walk left from block C; pieces are collected right to left.
    const auto leftBlocks = left_block_string(a.v);
    std::vector<std::pair<const BitBlock*, int>> walk;
    int lphase = c.left_phase(c.t0Row);
    const int lstart = lphase;
    do {
        if (a.leftTraversals == static_cast<std::size_t>(c.leftSeamPeriod) * 10)
            fail(ErrorKind::CorruptLibrary, "left side never returns to its starting phase");
        for (char id : leftBlocks) {
            const auto& b = lib.at(id);
            const int r = b.row_from_right(lphase);
            walk.emplace_back(&b, r);
            lphase = b.left_phase(r);
        }
        ++a.leftTraversals;
    } while (lphase != lstart);
    if (a.leftTraversals != 3)
        fail(ErrorKind::CorruptLibrary,
             "left side repeats after " + std::to_string(a.leftTraversals) + " passes over its blocks instead of 3");
    Strip left;
    for (auto it = walk.rbegin(); it != walk.rend(); ++it) append_row(left, *it->first, it->second);

    const auto leftLen = static_cast<std::int64_t>(left.bits.size());
    const auto centerLen = static_cast<std::int64_t>(center.bits.size());
    for (auto p : left.pieces) a.pieces.push_back({p.block, p.row, p.x - leftLen});
    for (auto p : center.pieces) a.pieces.push_back(p);
    for (auto p : right.pieces) a.pieces.push_back({p.block, p.row, p.x + centerLen});

    auto& s = a.state;
    s.origin = 0;
    s.center = std::move(center.bits);
    s.leftWord = std::move(left.bits);
    s.leftPhase = leftLen - 1;
    s.rightWord = std::move(right.bits);
    s.rightPhase = 0;
    s.validate();
    return a;
}

ConsistencyReport check_evolution(const Assembly& a, const BlockLibrary& lib, std::uint64_t steps,
                                  std::int64_t seamMargin) {
    ConsistencyReport rep;
    rep.steps = steps;
    if (a.pieces.empty()) return rep;
    r110::Evolver ev(a.state);
    std::map<char, const BitBlock*> blocks;
    for (const auto& p : a.pieces) blocks[p.block] = &lib.at(p.block);
    for (std::uint64_t k = 1; k <= steps; ++k) {
        ev.step();
        for (const auto& p : a.pieces) {
            const auto& b = *blocks[p.block];
            const auto target = static_cast<std::int64_t>(p.row) + static_cast<std::int64_t>(k);
            if (!b.periodic && target >= b.period) continue;
            const auto turns = target / b.period;
            const int rr = static_cast<int>(target % b.period);
            const auto x0 = p.x + (b.left[rr] + turns * b.drift - b.left[p.row]);
            const auto& row = b.rows[rr];
            const auto n = static_cast<std::int64_t>(row.size());
            if (n <= 2 * seamMargin) continue;
            auto cells = ev.window(x0 + seamMargin, x0 + n - seamMargin);
            for (std::int64_t i = seamMargin; i < n - seamMargin; ++i) {
                if (cells[static_cast<std::size_t>(i - seamMargin)] != row[static_cast<std::size_t>(i)]) {
                    rep.ok = false;
                    rep.badStep = k;
                    rep.badCell = x0 + i;
                    rep.badBlock = p.block;
                    rep.message = "step " + std::to_string(k) + ": cell " + std::to_string(x0 + i) + " in block " +
                                  p.block + " row " + std::to_string(rr) + " differs from the block data";
                    return rep;
                }
                ++rep.cellsChecked;
            }
        }
    }
    rep.message = std::to_string(rep.cellsChecked) + " predicted cells agree over " + std::to_string(steps) + " steps";
    return rep;
}

}  // namespace forge
