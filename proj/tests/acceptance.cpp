#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "forge/blocks.hpp"
#include "forge/cts2r110.hpp"
#include "forge/emulators.hpp"
#include "forge/error.hpp"
#include "forge/nearywoods.hpp"
#include "forge/r110.hpp"
#include "forge/tm2tag.hpp"
#include "forge/xcheck.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

Verdict local_rule() {
    int code = 0;
    bool words = true;
    for (int n = 0; n < 8; ++n) {
        std::uint8_t l = n >> 2 & 1, c = n >> 1 & 1, r = n & 1;
        std::uint8_t v = r110::local_rule(l, c, r);
        code |= v << n;
        // a cell turns on when it or its right neighbour is on, unless all three are on
        words &= v == ((c || r) && !(l && c && r));
    }
    return {words && code == 110, "rule number " + std::to_string(code)};
}

Verdict block_strings() {
    auto center = center_block_string(yn_to_bits("NNYN"));
    CyclicTagSystem sys{{yn_to_bits("YN"), yn_to_bits("NYYN"), {}, {}}};
    auto right = right_block_string(sys);
    auto v = compute_v(sys);
    bool ok = center == "CEDEDFDEG" && right == "HIIJKHJIIIIIJLLK" && v == 670;
    std::string detail = "center " + center + ", right " + right + ", v " + std::to_string(v);
    // the system has 3 Ys, 3 Ns, 2 nonempty and 2 empty appendants
    if (v != 670) detail += " (expected 670; 76*3 + 80*3 + 60*2 + 43*2 = 674)";
    return {ok, detail};
}

Verdict block_library() {
    auto path = default_block_library_path();
    BlockLibrary lib;
    try {
        lib = load_block_library(path);
    } catch (const Error& e) {
        return {false, std::string("no block library: ") + e.what()};
    }
    auto issues = validate_block_library(lib);
    if (!issues.empty()) return {false, std::to_string(issues.size()) + " problems, first: " + describe(issues[0])};
    CyclicTagSystem sys{{yn_to_bits("YYYYYY"), {}, yn_to_bits("NNNNNN"), {}}};
    auto a = assemble_state(sys, yn_to_bits("Y"), lib);
    auto rep = check_evolution(a, lib, 30);
    return {rep.ok, rep.ok ? std::to_string(rep.cellsChecked) + " cells checked over 30 steps" : rep.message};
}

TuringMachine busy_beaver2() {
    auto tm = TuringMachine::make(2, 2);
    tm.set(0, 0, 1, Move::Right, 1);
    tm.set(0, 1, 1, Move::Left, 1);
    tm.set(1, 0, 1, Move::Left, 0);
    return tm;
}

Verdict tm_lockstep() {
    auto counter = oracle::blank();
    counter.rightFinite = {2};
    struct Case {
        const char* name;
        TuringMachine tm;
        TmConfiguration cfg;
    };
    std::vector<Case> cases{{"halting", busy_beaver2(), oracle::blank()},
                            {"looping", oracle::looping_machine(), oracle::blank()},
                            {"counter", oracle::counter_machine(), counter}};
    std::ostringstream os;
    bool ok = true;
    for (const auto& c : cases) {
        auto rep = xcheck::tm_vs_tag(c.tm, c.cfg, 30);
        bool good = rep.ok && (rep.upperHalted ? rep.lowerHalted : rep.compared == 30);
        ok &= good;
        os << c.name << " " << rep.compared << " steps" << (rep.upperHalted ? " then halt" : "") << "; ";
        if (!good) os << rep.message << "; ";
    }
    return {ok, os.str()};
}

Verdict cts_normalization() {
    struct Case {
        std::vector<std::string> apps;
        std::string tape;
    };
    std::vector<Case> cases{{{"YYYYYY", "", "NNNNNN", ""}, "Y"},
                            {{"YN", "NYYN", "", ""}, "YY"},
                            {{"YYN", "N", "YNY"}, "YNY"}};
    std::ostringstream os;
    bool ok = true;
    for (const auto& c : cases) {
        CyclicTagSystem sys;
        for (const auto& a : c.apps) sys.appendants.push_back(yn_to_bits(a));
        auto rep = xcheck::cts_vs_normalized(sys, yn_to_bits(c.tape), 500);
        ok &= rep.ok;
        os << rep.compared << (rep.upperHalted ? " (halted)" : "") << " ";
        if (!rep.ok) os << rep.message << " ";
    }
    return {ok, "steps compared: " + os.str()};
}

Verdict ether_emulators() {
    std::ostringstream os;
    bool ok = true;
    for (const auto& name : emu::builtin_names()) {
        auto rep = emu::verify_ether(name, 100);
        ok &= rep.ok && rep.rowsDecoded >= 100;
        os << name << " " << rep.rowsDecoded << " rows" << (rep.ok ? "" : " FAILED") << "; ";
    }
    auto stride = emu::builtin_machine("tm7x2").decoder.stride;
    ok &= stride == 2;
    os << "tm7x2 stride " << stride;
    return {ok, os.str()};
}

Verdict end_to_end() {
    BlockLibrary lib;
    try {
        lib = load_block_library(default_block_library_path());
    } catch (const Error& e) {
        return {false, std::string("no block library: ") + e.what()};
    }
    if (!validate_block_library(lib).empty()) return {false, "block library does not validate"};
    auto loop = oracle::looping_machine();
    if (!xcheck::prove_loop(loop, oracle::blank(), 1000)) return {false, "loop proof missing"};
    auto h = xcheck::e2e_halt(oracle::halting_machine(), oracle::blank(), true, 1'000'000, lib);
    auto l = xcheck::e2e_halt(loop, oracle::blank(), false, 1'000'000, lib);
    bool ok = h.outcome == xcheck::Outcome::Pass && h.halt.temporalHalted && l.outcome == xcheck::Outcome::Pass;
    std::ostringstream os;
    os << "halting: " << xcheck::outcome_name(h.outcome);
    if (h.halt.halted) os << " at step " << h.halt.step;
    if (h.halt.temporalHalted) os << ", temporal at step " << h.halt.temporalStep;
    os << "; looping: " << xcheck::outcome_name(l.outcome) << " after " << l.halt.stepsRun << " steps";
    return {ok, os.str()};
}

Verdict nw_example() {
    auto tr = nw::nw_trace(nw::parse_rtm("forge-rtm 1\nstates q1\nq1 A -> BB q1\nq1 B -> A q1\n"),
                           nw::cells_from_string("ABA"), 0, 2);
    const auto& want = oracle::nw_example_lines();
    if (tr.passes.size() < want.size()) return {false, "only " + std::to_string(tr.passes.size()) + " passes"};
    for (std::size_t i = 0; i < want.size(); ++i)
        if (tr.passes[i].text != want[i]) return {false, "line " + std::to_string(i + 1) + ": " + tr.passes[i].text};
    return {true, std::to_string(want.size()) + " lines match"};
}

Verdict nw_cost() {
    auto rtm = nw::parse_rtm("forge-rtm 1\nstates q1\nq1 A -> A q1\nq1 B -> B q1\n");
    auto tm = TuringMachine::make(1, 2);
    tm.set(0, 0, 0, Move::Right, 0);
    tm.set(0, 1, 1, Move::Right, 0);

    std::vector<double> ns, cost, cmDigits;
    for (std::size_t n = 4; n <= 256; n *= 2) {
        std::string tape;
        for (std::size_t i = 0; i < n; ++i) tape.push_back(i % 3 ? 'A' : 'B');
        nw::NwOptions opt;
        opt.keepPasses = false;
        auto tr = nw::nw_trace(rtm, nw::cells_from_string(tape), 0, 3, opt);
        if (tr.steps.size() < 3) return {false, "trace stopped early at n = " + std::to_string(n)};
        ns.push_back(double(n));
        cost.push_back(double(tr.steps[2].tagSteps));

        // the same tape under the Cocke-Minsky encoding
        auto cfg = oracle::blank();
        cfg.head = tape[0] == 'B';
        for (std::size_t i = 1; i < n; ++i) cfg.rightFinite.push_back(tape[i] == 'B');
        auto rep = xcheck::tm_vs_tag(tm, cfg, 1);
        if (!rep.ok) return {false, "Cocke-Minsky lockstep failed at n = " + std::to_string(n)};
        cmDigits.push_back(double(rep.lowerSteps.size()));
    }
    double c = 0;
    for (std::size_t i = 0; i < 3; ++i) c = std::max(c, cost[i] / (ns[i] * std::log2(ns[i])));
    bool ok = true;
    for (std::size_t i = 0; i < ns.size(); ++i) ok &= cost[i] <= c * ns[i] * std::log2(ns[i]);
    // decimal digits of the tag step count grow linearly in n: exponential cost
    bool exponential = true;
    for (std::size_t i = 1; i < ns.size(); ++i) exponential &= cmDigits[i] >= 1.5 * cmDigits[i - 1];
    std::ostringstream os;
    os << "c = " << c << "; tag steps per step at n = 4..256:";
    for (auto x : cost) os << " " << x;
    os << "; Cocke-Minsky digits:";
    for (auto d : cmDigits) os << " " << d;
    return {ok && exponential, os.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"AC1 local rule", local_rule},        {"AC2 block strings", block_strings},
        {"AC3 block library", block_library},  {"AC4 tm/tag lockstep", tm_lockstep},
        {"AC5 cts normalization", cts_normalization}, {"AC6 ether emulators", ether_emulators},
        {"AC7 end-to-end halting", end_to_end}, {"AC8 polynomial trace", nw_example},
        {"AC9 polynomial cost", nw_cost},
    };
    int passed = 0;
    for (const auto& [name, fn] : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        passed += v.pass;
        std::cout << (v.pass ? "PASS " : "FAIL ") << name << " (" << secs << "s): " << v.detail << std::endl;
    }
    std::cout << passed << " of " << criteria.size() << " criteria pass" << std::endl;
    return 0;
}
