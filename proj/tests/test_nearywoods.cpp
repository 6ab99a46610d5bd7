#include <doctest.h>

#include <cmath>
#include <random>

#include "forge/error.hpp"
#include "forge/nearywoods.hpp"
#include "oracles.hpp"

using namespace forge;
using namespace forge::nw;

namespace {

const char* kGrower = "forge-rtm 1\nstates q1\nq1 A -> BB q1\nq1 B -> A q1\n";
const char* kCopier = "forge-rtm 1\nstates q1\nq1 A -> A q1\nq1 B -> B q1\n";

std::string appendant_letters(const NwSystem& s, const NwSymbol& sym) {
    std::vector<NwSymbol> w;
    for (const auto& r : s.sys.appendants[s.layout.id(sym)])
        for (BigInt n = 0; n < r.count; ++n) w.push_back(s.layout.symbol(r.sym));
    return print_symbols(w);
}

std::vector<int> stages_of(const NwSystem& s, const NwSymbol& sym) {
    std::vector<int> out;
    for (const auto& r : s.sys.appendants[s.layout.id(sym)]) out.push_back(s.layout.symbol(r.sym).stage);
    return out;
}

RightTm random_rtm(std::mt19937& rng, std::uint32_t k) {
    auto tm = RightTm::make(k);
    for (StateId q = 0; q < k; ++q)
        for (std::uint8_t c = 0; c < 2; ++c) {
            std::vector<std::uint8_t> w{std::uint8_t(rng() & 1)};
            if (rng() % 4 == 0) w.push_back(rng() & 1);
            tm.set(q, c, w, rng() % k);
        }
    return tm;
}

std::string tape_string(const CircularConfig& c) { return cells_to_string({c.cells.begin(), c.cells.end()}); }

}  // namespace

TEST_CASE("production tables") {
    auto nws = build_nw_system(parse_rtm(kGrower));
    CHECK(appendant_letters(nws, {Letter::H, 2, 0}) == "H -");
    CHECK(stages_of(nws, {Letter::H, 2, 0}) == std::vector<int>{3, 0});
    CHECK(appendant_letters(nws, {Letter::u, 2, 0}) == "V");
    CHECK(appendant_letters(nws, {Letter::x, 4, 0}) == "U x");
    CHECK(stages_of(nws, {Letter::x, 4, 0}) == std::vector<int>{5, 4});
    CHECK(appendant_letters(nws, {Letter::Zero, 0, 0}).empty());
    CHECK_FALSE(nws.used[0]);
}

TEST_CASE("stage 6 writes the new cells with old-state subscripts") {
    auto tm = parse_rtm("forge-rtm 1\nstates p q\np A -> BA q\np B -> A p\nq A -> B p\nq B -> AB q\n");
    auto nws = build_nw_system(tm);
    CHECK(appendant_letters(nws, {Letter::P, 6, 0}) == "B b A a H -");
    auto st = stages_of(nws, {Letter::P, 6, 0});
    CHECK(st == std::vector<int>{6, 6, 6, 6, 3, 0});
    auto hid = nws.sys.appendants[nws.layout.id({Letter::P, 6, 0})][4].sym;
    CHECK(nws.layout.symbol(hid).state == 1);
    // two cells written: the counter pair survives as two U symbols
    CHECK(appendant_letters(nws, {Letter::U, 6, 0}) == "U U");
    CHECK(appendant_letters(nws, {Letter::u, 6, 0}) == "U");
    CHECK(appendant_letters(nws, {Letter::Q, 6, 0}) == "A a - H -");
}

TEST_CASE("alphabet size") {
    for (std::uint32_t k : {1u, 2u, 5u}) {
        auto tm = RightTm::make(k);
        for (StateId q = 0; q < k; ++q) {
            tm.set(q, A, {A}, q);
            tm.set(q, B, {B}, q);
        }
        auto nws = build_nw_system(tm);
        CHECK(nws.layout.size() == 2 + 20 * 6 * k);
        CHECK(nws.sys.s == 2);
    }
}

TEST_CASE("tape encoding") {
    auto tm = parse_rtm(kGrower);
    CHECK(print_symbols(encode_nw_tape(tm, cells_from_string("ABA"), 0)) == "H h A A U u U u U u U u B B A A");
    CHECK(print_symbols(encode_nw_tape(tm, cells_from_string("A"), 0)) == "H h A A U u");
    CHECK(print_symbols(encode_nw_tape(tm, cells_from_string("ABBAA"), 0, 0)) ==
          "H h U u U u U u U u U u U u U u U u A A B B B B A A A A");
    CHECK_THROWS_AS(encode_nw_tape(tm, {}, 0), Error);
}

TEST_CASE("the worked example is reproduced line by line") {
    auto tr = nw_trace(parse_rtm(kGrower), cells_from_string("ABA"), 0, 2);
    const auto& want = oracle::nw_example_lines();
    REQUIRE(tr.passes.size() >= want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CAPTURE(i);
        CHECK(tr.passes[i].text == want[i]);
    }
    REQUIRE(tr.steps.size() == 2);
    CHECK(tape_string(tr.steps[0].config) == "BABB");
    CHECK(tape_string(tr.steps[1].config) == "ABBA");
}

TEST_CASE("a machine that rewrites A as A keeps its tape") {
    auto tr = nw_trace(parse_rtm("forge-rtm 1\nstates q\nq A -> A q\nq B -> B q\n"), cells_from_string("A"), 0, 10);
    REQUIRE(tr.steps.size() == 10);
    for (const auto& st : tr.steps) CHECK(tape_string(st.config) == "A");
}

TEST_CASE("random machines agree with the circular-tape oracle") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        auto tm = random_rtm(rng, 1 + rng() % 3);
        std::string tape;
        for (auto n = 1 + rng() % 6; n--;) tape.push_back(rng() & 1 ? 'B' : 'A');
        NwOptions opt;
        opt.keepPasses = false;
        auto tr = nw_trace(tm, cells_from_string(tape), 0, 30, opt);
        oracle::Circular ref{0, tape};
        CAPTURE(format_rtm(tm));
        CAPTURE(tape);
        REQUIRE(tr.steps.size() == 30);
        for (const auto& st : tr.steps) {
            REQUIRE(oracle::circular_step(tm, ref));
            REQUIRE(st.config.state == ref.state);
            REQUIRE(tape_string(st.config) == ref.tape);
        }
    }
}

TEST_CASE("counter is a power of two covering the tape and cycles are its log") {
    NwOptions opt;
    opt.keepPasses = false;
    auto tr = nw_trace(parse_rtm(kGrower), cells_from_string("A"), 0, 40, opt);
    REQUIRE(tr.steps.size() == 40);
    std::size_t prev = 0;
    for (const auto& st : tr.steps) {
        const auto n = st.config.cells.size();
        CAPTURE(n);
        CHECK((st.counter & (st.counter - 1)) == 0);
        CHECK(st.counter >= n);
        std::size_t smallest = 1;
        while (smallest < n) smallest *= 2;
        CHECK(st.counter <= 2 * smallest);
        if (prev) CHECK((st.counter == prev || st.counter == 2 * prev));
        prev = st.counter;
    }
}

TEST_CASE("cycle count is the log of the counter at the start of the step") {
    NwOptions opt;
    opt.keepPasses = false;
    auto tr = nw_trace(parse_rtm(kCopier), cells_from_string("ABBABAAB"), 0, 4, opt);
    for (const auto& st : tr.steps) {
        CHECK(st.counter == 8);
        CHECK(st.cycles == 3);
    }
}

TEST_CASE("halting machines stop the tag system") {
    auto tm = parse_rtm("forge-rtm 1\nstates q\nq A -> B q\nq B -> halt\n");
    auto tr = nw_trace(tm, cells_from_string("AAB"), 0, 10);
    CHECK(tr.halted);
    CHECK(tr.steps.size() == 2);
}

TEST_CASE("machine file round trip") {
    auto tm = parse_rtm("forge-rtm 1\nstates p q\np A -> BA q\np B -> halt\nq A -> B p\nq B -> AB q\n");
    CHECK(format_rtm(parse_rtm(format_rtm(tm))) == format_rtm(tm));
    CHECK_THROWS_AS(parse_rtm("forge-rtm 1\nstates p\np C -> A p\n"), Error);
}

TEST_CASE("tag steps per simulated step grow like n log n") {
    auto tm = parse_rtm(kCopier);
    std::vector<double> ns, cost;
    for (std::size_t n = 4; n <= 256; n *= 2) {
        std::string tape;
        for (std::size_t i = 0; i < n; ++i) tape.push_back(i % 3 ? 'A' : 'B');
        NwOptions opt;
        opt.keepPasses = false;
        auto tr = nw_trace(tm, cells_from_string(tape), 0, 3, opt);
        REQUIRE(tr.steps.size() == 3);
        ns.push_back(double(n));
        cost.push_back(double(tr.steps[2].tagSteps));
    }
    // fit on the smaller half, then require the larger half to stay under it
    double c = 0;
    for (std::size_t i = 0; i < 3; ++i) c = std::max(c, cost[i] / (ns[i] * std::log2(ns[i])));
    for (std::size_t i = 0; i < ns.size(); ++i) {
        CAPTURE(ns[i]);
        CAPTURE(cost[i]);
        CHECK(cost[i] <= c * ns[i] * std::log2(ns[i]));
    }
}
