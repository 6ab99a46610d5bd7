#include "forge/blocks.hpp"

#include <boost/crc.hpp>

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "forge/error.hpp"
#include "forge/formats.hpp"

#ifndef FORGE_ASSET_DIR
#define FORGE_ASSET_DIR "assets"
#endif

namespace forge {

namespace {

int mod(std::int64_t a, int m) {
    auto r = static_cast<int>(a % m);
    return r < 0 ? r + m : r;
}

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
    fail(ErrorKind::Input, "block library line " + std::to_string(line) + ": " + msg);
}

std::int64_t number(std::size_t line, const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        bad(line, "not a number: " + s);
    }
    if (used != s.size()) bad(line, "not a number: " + s);
    return v;
}

std::string body_of(const BlockLibrary& lib) {
    std::ostringstream os;
    for (const auto& [id, b] : lib.blocks) {
        os << "block " << id << " period " << b.period << " offset " << b.offset << " drift " << b.drift << " seams "
           << b.leftSeamPeriod << ' ' << b.rightSeamPeriod;
        if (b.t0Row >= 0) os << " t0 " << b.t0Row;
        if (!b.periodic) os << " aperiodic";
        os << '\n';
        for (std::size_t r = 0; r < b.rows.size(); ++r) os << "row " << b.left[r] << ' ' << r110::row_to_string(b.rows[r]) << '\n';
        os << "end\n";
    }
    return os.str();
}

// Edge displacement of a seam between phase r and r + 1.
std::int64_t left_step(const BitBlock& b, int r) {
    if (r + 1 < b.period) return b.left[r + 1] - b.left[r];
    return b.left[0] + b.drift - b.left[r];
}

std::int64_t right_step(const BitBlock& b, int r) {
    if (r + 1 < b.period) return b.right(r + 1) - b.right(r);
    return b.right(0) + b.drift - b.right(r);
}

bool may_join(char x, char y) {
    const std::string lhs = "AB", center = "CDEFGHIJKL";
    if (y == 'C') return x == 'A' || x == 'B';
    if (lhs.find(x) != std::string::npos) return lhs.find(y) != std::string::npos;
    return center.find(x) != std::string::npos && y != 'C' && center.find(y) != std::string::npos;
}

}  // namespace

int BitBlock::row_from_left(int p) const {
    if (!periodic) fail(ErrorKind::CorruptLibrary, std::string("block ") + id + " cannot be entered from a seam");
    return mod(p, period);
}

int BitBlock::row_from_right(int p) const {
    if (!periodic) fail(ErrorKind::CorruptLibrary, std::string("block ") + id + " cannot be entered from a seam");
    return mod(p - offset, period);
}

const BitBlock& BlockLibrary::at(char id) const {
    auto it = blocks.find(id);
    if (it == blocks.end()) fail(ErrorKind::CorruptLibrary, std::string("block library has no block ") + id);
    return it->second;
}

int expected_period(char id) { return id == 'A' || id == 'B' ? 3 : 30; }

std::uint32_t block_checksum(const std::string& body) {
    boost::crc_32_type crc;
    crc.process_bytes(body.data(), body.size());
    return crc.checksum();
}

BlockLibrary parse_block_library(const std::string& text) {
    BlockLibrary lib;
    std::istringstream is(text);
    std::string raw;
    std::size_t n = 0;
    bool header = false, sawCrc = false;
    BitBlock* cur = nullptr;
    std::uint32_t declared = 0;
    while (std::getline(is, raw)) {
        ++n;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        std::vector<std::string> t;
        for (std::string w; ls >> w;) t.push_back(w);
        if (t.empty()) continue;
        if (!header) {
            if (t.size() != 2 || t[0] != "forge-blocks" || t[1] != "1") bad(n, "expected header 'forge-blocks 1'");
            header = true;
            continue;
        }
        if (sawCrc) bad(n, "text after the checksum");
        if (t[0] == "block") {
            if (cur) bad(n, "block without 'end'");
            if (t.size() < 2 || t[1].size() != 1) bad(n, "block id must be one letter");
            const char id = t[1][0];
            if (lib.blocks.count(id)) bad(n, std::string("duplicate block ") + id);
            BitBlock b;
            b.id = id;
            for (std::size_t i = 2; i < t.size(); ++i) {
                auto need = [&](std::size_t k) {
                    if (i + k >= t.size()) bad(n, "missing value after " + t[i]);
                };
                if (t[i] == "period") need(1), b.period = static_cast<int>(number(n, t[++i]));
                else if (t[i] == "offset") need(1), b.offset = static_cast<int>(number(n, t[++i]));
                else if (t[i] == "drift") need(1), b.drift = number(n, t[++i]);
                else if (t[i] == "t0") need(1), b.t0Row = static_cast<int>(number(n, t[++i]));
                else if (t[i] == "aperiodic") b.periodic = false;
                else if (t[i] == "seams") {
                    need(2);
                    b.leftSeamPeriod = static_cast<int>(number(n, t[++i]));
                    b.rightSeamPeriod = static_cast<int>(number(n, t[++i]));
                } else
                    bad(n, "unknown block attribute " + t[i]);
            }
            if (b.period <= 0) bad(n, "block needs a positive period");
            if (b.leftSeamPeriod <= 0) b.leftSeamPeriod = b.period;
            if (b.rightSeamPeriod <= 0) b.rightSeamPeriod = b.period;
            if (b.offset < 0) bad(n, "negative seam offset");
            cur = &lib.blocks.emplace(id, std::move(b)).first->second;
        } else if (t[0] == "row") {
            if (!cur || t.size() != 3) bad(n, "expected 'row <left> <bits>' inside a block");
            cur->left.push_back(number(n, t[1]));
            if (t[2].find_first_not_of("01") != std::string::npos) bad(n, "row bits must be 0 or 1");
            cur->rows.push_back(r110::row_from_string(t[2]));
        } else if (t[0] == "end") {
            if (!cur) bad(n, "'end' outside a block");
            cur = nullptr;
        } else if (t[0] == "crc32") {
            if (cur || t.size() != 2) bad(n, "expected 'crc32 <hex>' after the last block");
            declared = static_cast<std::uint32_t>(std::stoul(t[1], nullptr, 16));
            sawCrc = true;
        } else {
            bad(n, "unexpected '" + t[0] + "'");
        }
    }
    if (!header) fail(ErrorKind::Input, "empty block library");
    if (cur) fail(ErrorKind::Input, "block library ends inside a block");
    if (!sawCrc) fail(ErrorKind::CorruptLibrary, "block library has no checksum");
    auto actual = block_checksum(body_of(lib));
    if (actual != declared) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "block library checksum %08x does not match %08x", actual, declared);
        fail(ErrorKind::CorruptLibrary, buf);
    }
    return lib;
}

std::string format_block_library(const BlockLibrary& lib) {
    auto body = body_of(lib);
    char buf[32];
    std::snprintf(buf, sizeof buf, "crc32 %08x\n", block_checksum(body));
    return "forge-blocks 1\n" + body + buf;
}

std::string default_block_library_path() {
    if (const char* env = std::getenv("FORGE_BLOCK_LIBRARY"); env && *env) return env;
    return std::string(FORGE_ASSET_DIR) + "/blocks.lib";
}

BlockLibrary load_block_library(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error&) {
        fail(ErrorKind::CorruptLibrary, "block library not found at " + path);
    }
    auto lib = parse_block_library(text);
    lib.source = path;
    return lib;
}

std::vector<LibraryIssue> validate_block_library(const BlockLibrary& lib) {
    std::vector<LibraryIssue> out;
    for (const char* p = kBlockIds; *p; ++p)
        if (!lib.has(*p)) out.push_back({*p, -1, "missing"});
    for (const auto& [id, b] : lib.blocks) {
        if (std::string(kBlockIds).find(id) == std::string::npos) {
            out.push_back({id, -1, "unknown block id"});
            continue;
        }
        const int want = expected_period(id);
        if (b.period != want)
            out.push_back({id, -1, "period " + std::to_string(b.period) + ", expected " + std::to_string(want)});
        if (static_cast<int>(b.rows.size()) != b.period || b.left.size() != b.rows.size()) {
            out.push_back({id, -1, "has " + std::to_string(b.rows.size()) + " rows for period " + std::to_string(b.period)});
            continue;
        }
        if (b.periodic == (id == 'C')) out.push_back({id, -1, id == 'C' ? "must be aperiodic" : "must be periodic"});
        if (id == 'C' && (b.t0Row < 0 || b.t0Row >= b.period)) out.push_back({id, -1, "t0 row missing or out of range"});
        if (id != 'C' && b.t0Row >= 0) out.push_back({id, -1, "only block C marks the initial row"});
        if (b.periodic && (b.leftSeamPeriod != b.period || b.rightSeamPeriod != b.period))
            out.push_back({id, -1, "seam periods differ from the block period"});
        if (b.period % b.leftSeamPeriod != 0 || b.period % b.rightSeamPeriod != 0)
            out.push_back({id, -1, "seam periods must divide the block period"});
        for (int r = 0; r < b.period; ++r)
            if (b.rows[r].empty()) out.push_back({id, r, "empty row"});

        // Each row must evolve into the next wherever the next row's cell has all
        // three parents inside the block.
        const int last = b.periodic ? b.period : b.period - 1;
        for (int r = 0; r < last; ++r) {
            const auto& cur = b.rows[r];
            const auto curLeft = b.left[r];
            const int nr = (r + 1) % b.period;
            const auto& next = b.rows[nr];
            const auto nextLeft = b.left[nr] + (r + 1 == b.period ? b.drift : 0);
            for (std::size_t i = 0; i < next.size(); ++i) {
                const auto x = nextLeft + static_cast<std::int64_t>(i);
                const auto j = x - curLeft;
                if (j - 1 < 0 || j + 1 >= static_cast<std::int64_t>(cur.size())) continue;
                auto want = r110::local_rule(cur[j - 1], cur[j], cur[j + 1]);
                if (want != next[i]) {
                    out.push_back({id, nr, "cell " + std::to_string(x) + " is not the successor of row " + std::to_string(r)});
                    break;
                }
            }
        }
    }
    // Seams that can meet must have the same shape.
    for (const auto& [x, bx] : lib.blocks) {
        if (static_cast<int>(bx.rows.size()) != bx.period || bx.left.size() != bx.rows.size()) continue;
        for (const auto& [y, by] : lib.blocks) {
            if (!may_join(x, y)) continue;
            if (static_cast<int>(by.rows.size()) != by.period || by.left.size() != by.rows.size()) continue;
            if (by.leftSeamPeriod != bx.rightSeamPeriod) {
                out.push_back({x, -1, std::string("right seam period does not match block ") + y});
                continue;
            }
            for (int ry = 0; ry < by.period; ++ry) {
                if (ry + 1 == by.period && !by.periodic) continue;
                const int ph = by.left_phase(ry);
                for (int rx = 0; rx < bx.period; ++rx) {
                    if (bx.right_phase(rx) != ph || (rx + 1 == bx.period && !bx.periodic)) continue;
                    if (right_step(bx, rx) != left_step(by, ry)) {
                        out.push_back({x, rx, std::string("right seam does not fit block ") + y + " at phase " + std::to_string(ph)});
                        goto next_pair;
                    }
                }
            }
        next_pair:;
        }
    }
    return out;
}

std::string describe(const LibraryIssue& issue) {
    std::string s = std::string("block ") + issue.block;
    if (issue.row >= 0) s += " row " + std::to_string(issue.row);
    return s + ": " + issue.what;
}

}  // namespace forge
