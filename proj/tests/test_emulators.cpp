#include <doctest.h>

#include "forge/emulators.hpp"
#include "forge/error.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

std::string word(const emu::Emulator& e, const std::vector<Symbol>& w) {
    std::string out;
    for (auto a : w) out += (out.empty() ? "" : " ") + e.tm.symbol_name(a);
    return out;
}

std::size_t halting_transitions(const TuringMachine& tm) {
    std::size_t n = 0;
    for (const auto& tr : tm.table) n += tr.move == Move::Halt;
    return n;
}

struct MutantCount {
    std::size_t total = 0;
    std::size_t caught = 0;
};

// Every single change of the symbol written by one transition.
MutantCount write_mutants(const emu::Emulator& base, std::size_t rows) {
    MutantCount c;
    for (std::size_t i = 0; i < base.tm.table.size(); ++i) {
        if (base.tm.table[i].move == Move::Halt) continue;
        for (Symbol w = 0; w < base.tm.t; ++w) {
            if (w == base.tm.table[i].write) continue;
            auto e = base;
            e.tm.table[i].write = w;
            ++c.total;
            if (!emu::verify_ether(e, rows).ok) ++c.caught;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("built-in machines have the published shapes") {
    auto a = emu::builtin_machine("tm2x5");
    CHECK(a.tm.m == 2);
    CHECK(a.tm.t == 5);
    CHECK(halting_transitions(a.tm) == 1);
    CHECK(a.tm.state_name(a.cfg.state) == "S0");

    auto b = emu::builtin_machine("tm3x4");
    CHECK(b.tm.m == 3);
    CHECK(b.tm.t == 4);

    auto c = emu::builtin_machine("tm4x3");
    CHECK(c.tm.m == 4);
    CHECK(c.tm.t == 3);
    CHECK(word(c, c.cfg.leftPeriodic) == "B 0 1");
    CHECK(c.tm.symbol_name(c.cfg.head) == "B");
    CHECK(word(c, c.cfg.rightPeriodic) == "B 1 1 1 1 1 0 B");

    auto d = emu::builtin_machine("tm7x2");
    CHECK(d.tm.m == 7);
    CHECK(d.tm.t == 2);
    CHECK(d.tm.state_name(d.cfg.state) == "S11");
    CHECK(word(d, d.cfg.leftPeriodic) == "1 1 0 0 1 1");
    CHECK(d.tm.symbol_name(d.cfg.head) == "0");
    CHECK(word(d, d.cfg.rightPeriodic) == "1 0 1 1 0 1 0 0 1 0");

    CHECK_THROWS_AS(emu::builtin_machine("tm9x9"), Error);
}

TEST_CASE("every built-in machine computes the ether") {
    for (const auto& name : emu::builtin_names()) {
        auto rep = emu::verify_ether(name, 100);
        CAPTURE(rep.message);
        CHECK(rep.ok);
        CHECK(rep.rowsDecoded == 100);
        CHECK(rep.cellsChecked > 100);
    }
}

TEST_CASE("decoded rows agree with a ring-evolved ether") {
    for (const auto& name : emu::builtin_names()) {
        auto e = emu::builtin_machine(name);
        auto rows = emu::decode_sweeps(e, 30, 10'000'000);
        REQUIRE(rows.size() == 30);
        for (std::size_t k = 0; k < rows.size(); ++k)
            for (std::size_t i = 0; i < rows[k].cells.size(); ++i)
                REQUIRE(rows[k].cells[i] == oracle::ether_cell(rows[k].x0 + std::int64_t(i), k, e.decoder.phase));
    }
}

TEST_CASE("the seven-state machine keeps the row on every second cell") {
    auto e = emu::builtin_machine("tm7x2");
    CHECK(e.decoder.stride == 2);
}

TEST_CASE("single-transition mutants") {
    for (const auto& name : emu::builtin_names()) {
        auto count = write_mutants(emu::builtin_machine(name), 5);
        MESSAGE(name << ": " << count.caught << " of " << count.total << " write mutants caught within 5 rows");
        CHECK(count.total > 0);
        CHECK(count.caught > 0);
    }
}
