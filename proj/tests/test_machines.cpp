#include <doctest.h>

#include <random>

#include "forge/error.hpp"
#include "forge/formats.hpp"
#include "forge/machines.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

TuringMachine random_machine(std::mt19937& rng, std::uint32_t m, std::uint32_t t) {
    auto tm = TuringMachine::make(m, t);
    std::uniform_int_distribution<std::uint32_t> sym(0, t - 1), st(0, m - 1), mv(0, 1);
    for (StateId q = 0; q < m; ++q)
        for (Symbol a = 0; a < t; ++a) tm.set(q, a, sym(rng), mv(rng) ? Move::Right : Move::Left, st(rng));
    return tm;
}

TmConfiguration random_config(std::mt19937& rng, std::uint32_t m, std::uint32_t t) {
    std::uniform_int_distribution<std::uint32_t> sym(0, t - 1), len(1, 4), fin(0, 5);
    TmConfiguration c;
    c.state = std::uniform_int_distribution<std::uint32_t>(0, m - 1)(rng);
    for (auto n = len(rng); n--;) c.leftPeriodic.push_back(sym(rng));
    for (auto n = len(rng); n--;) c.rightPeriodic.push_back(sym(rng));
    for (auto n = fin(rng); n--;) c.leftFinite.push_back(sym(rng));
    for (auto n = fin(rng); n--;) c.rightFinite.push_back(sym(rng));
    c.head = sym(rng);
    return c;
}

}  // namespace

TEST_CASE("tm_step halts when the first transition is halt") {
    auto tm = oracle::halting_machine();
    CHECK_FALSE(tm_step(tm, oracle::blank()).has_value());
}

TEST_CASE("right mover leaves its writes behind") {
    auto tm = TuringMachine::make(1, 2);
    tm.set(0, 0, 1, Move::Right, 0);
    auto c = oracle::blank();
    for (int i = 0; i < 3; ++i) c = *tm_step(tm, c);
    CHECK(c.head == 0);
    for (int i = 1; i <= 3; ++i) CHECK(c.cell(-i) == 1);
    CHECK(c.cell(-4) == 0);
    CHECK(c.cell(1) == 0);
}

TEST_CASE("two-state flipper matches the wide-tape oracle") {
    auto tm = TuringMachine::make(2, 2);
    tm.set(0, 0, 1, Move::Right, 1);
    tm.set(0, 1, 0, Move::Right, 1);
    tm.set(1, 0, 1, Move::Left, 0);
    tm.set(1, 1, 0, Move::Right, 0);
    auto c = oracle::blank();
    auto w = oracle::unfold(c, 40);
    for (int i = 0; i < 20; ++i) c = *tm_step(tm, c);
    oracle::run_wide(tm, w, 20);
    CHECK(c.state == w.state);
    for (int x = -25; x <= 25; ++x) CHECK(c.cell(x) == oracle::wide_cell(w, x));
}

TEST_CASE("periodic ends agree with a pre-unfolded tape on random machines") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::uint32_t m = 1 + rng() % 4, t = 2 + rng() % 3;
        auto tm = random_machine(rng, m, t);
        auto c = random_config(rng, m, t);
        auto w = oracle::unfold(c, 1100);
        for (int k = 0; k < 1000; ++k) c = *tm_step(tm, c);
        oracle::run_wide(tm, w, 1000);
        REQUIRE(c.state == w.state);
        for (int x = -60; x <= 60; ++x) REQUIRE(c.cell(x) == oracle::wide_cell(w, x));
    }
}

TEST_CASE("configuration validation") {
    auto tm = TuringMachine::make(1, 2);
    auto c = oracle::blank();
    c.rightPeriodic.clear();
    CHECK_THROWS_AS(c.validate(tm), Error);
    c = oracle::blank(5);
    CHECK_THROWS_AS(c.validate(tm), Error);
}

TEST_CASE("De Mol tag system") {
    TagSystem sys;
    sys.s = 2;
    sys.alphabet = {"A", "C", "Y"};
    sys.appendants = {rle_from_symbols({1, 2}), rle_from_symbols({0}), rle_from_symbols({0, 0, 0})};
    auto next = tag_step(sys, TagTape::from_symbols({1, 0}));
    REQUIRE(next);
    CHECK(next->expand(10) == std::vector<Symbol>{0});
    CHECK_FALSE(tag_step(sys, *next).has_value());
}

TEST_CASE("Chapman tag system follows the 3x+1 map") {
    // A..F = 0..5; C D^(x-1) encodes x.
    std::vector<std::vector<Symbol>> rules{{2}, {3}, {0, 4}, {1, 5}, {2, 2, 3}, {3, 3, 3}};
    TagSystem sys;
    sys.s = 2;
    sys.alphabet = {"A", "B", "C", "D", "E", "F"};
    for (const auto& r : rules) sys.appendants.push_back(rle_from_symbols(r));

    auto encode = [](std::uint64_t x) {
        std::vector<Symbol> t{2};
        t.insert(t.end(), x - 1, 3);
        return t;
    };
    auto decode = [](const std::vector<Symbol>& t) -> std::uint64_t {
        if (t.empty() || t[0] != 2) return 0;
        for (std::size_t i = 1; i < t.size(); ++i)
            if (t[i] != 3) return 0;
        return t.size();
    };

    for (std::uint64_t x0 : {3u, 7u, 27u}) {
        auto expected = oracle::collatz_terras(x0);
        auto traj = oracle::tag_trajectory(rules, 2, encode(x0), 100000);
        std::vector<std::uint64_t> seen;
        for (const auto& t : traj)
            if (auto x = decode(t)) seen.push_back(x);
        CHECK(seen == expected);

        // the library interpreter visits the same tapes
        auto tape = TagTape::from_symbols(encode(x0));
        for (std::size_t i = 1; i < traj.size(); ++i) {
            auto n = tag_step(sys, tape);
            REQUIRE(n);
            REQUIRE(n->expand(1 << 20) == traj[i]);
            tape = *n;
        }
        CHECK_FALSE(tag_step(sys, tape).has_value());
    }
}

TEST_CASE("tag runner agrees with tag_step") {
    TagSystem sys;
    sys.s = 2;
    sys.alphabet = {"A", "B", "C", "D", "E", "F"};
    std::vector<std::vector<Symbol>> rules{{2}, {3}, {0, 4}, {1, 5}, {2, 2, 3}, {3, 3, 3}};
    for (const auto& r : rules) sys.appendants.push_back(rle_from_symbols(r));
    auto start = TagTape::from_symbols({2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3});
    TagRunner run(sys, start);
    auto tape = start;
    for (int i = 0; i < 300 && !run.halted(); ++i) {
        run.step();
        auto n = tag_step(sys, tape);
        if (!n) {
            CHECK(run.halted());
            break;
        }
        tape = *n;
        auto flat = run.flat_tape();
        REQUIRE(flat);
        REQUIRE(flat->expand(1 << 20) == tape.expand(1 << 20));
    }
}

TEST_CASE("cyclic tag example from a single Y") {
    CyclicTagSystem sys{{yn_to_bits("YYYYYY"), {}, yn_to_bits("NNNNNN"), {}}};
    auto st = cts_step(sys, {yn_to_bits("Y"), 0});
    REQUIRE(st);
    CHECK(bits_to_yn(st->tape) == "YYYYYY");
    CHECK(st->marker == 1);
    CHECK_FALSE(cts_step(sys, {{}, 0}).has_value());
}

TEST_CASE("cyclic tag lengths match the list interpreter for 10^4 steps") {
    std::vector<std::string> apps{"YYYYYY", "", "NNNNNN", ""};
    CyclicTagSystem sys;
    for (const auto& a : apps) sys.appendants.push_back(yn_to_bits(a));
    auto expected = oracle::cts_lengths(apps, "Y", 10000);
    CtsRunner run(sys, yn_to_bits("Y"));
    std::vector<std::size_t> got;
    for (std::size_t k = 0; k < 10000 && run.step(); ++k) got.push_back(run.size());
    CHECK(got == expected);
}

TEST_CASE("machine file round trip") {
    auto tm = oracle::counter_machine();
    auto text = format_tm(tm);
    CHECK(format_tm(parse_tm(text)) == text);
    auto c = oracle::blank();
    c.rightFinite = {2};
    auto ctext = format_config(c, tm);
    CHECK(parse_config(ctext, tm) == c);
    CHECK_THROWS_AS(parse_tm("forge-tm 2\n"), Error);
    CHECK_THROWS_AS(parse_tm("forge-tm 1\nstates a\nsymbols 0\na 0 -> 0 X a\n"), Error);
}
