#include <CLI11.hpp>

#include <iostream>

#include "forge/blocks.hpp"
#include "forge/cts2r110.hpp"
#include "forge/emulators.hpp"
#include "forge/error.hpp"
#include "forge/formats.hpp"
#include "forge/nearywoods.hpp"
#include "forge/pipeline.hpp"
#include "forge/r110.hpp"
#include "forge/tag2cts.hpp"
#include "forge/tm2tag.hpp"
#include "forge/xcheck.hpp"

using namespace forge;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kVerifyFailed = 3;

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") std::cout << text;
    else write_file(path, text);
}

BlockLibrary library(const std::string& path) {
    return load_block_library(path.empty() ? default_block_library_path() : path);
}

std::pair<std::int64_t, std::int64_t> parse_window(const std::string& w) {
    auto colon = w.find(':');
    if (colon == std::string::npos) fail(ErrorKind::Input, "window must look like x0:x1");
    try {
        auto a = std::stoll(w.substr(0, colon)), b = std::stoll(w.substr(colon + 1));
        if (b <= a) fail(ErrorKind::Input, "window must have x1 > x0");
        return {a, b};
    } catch (const std::logic_error&) {
        fail(ErrorKind::Input, "window must look like x0:x1");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forge: Turing machine to Rule 110 compiler and simulators"};
    app.require_subcommand(1);
    int rc = kOk;

    // tm2tag
    std::string tmFile, cfgFile, out;
    auto* tm2tag = app.add_subcommand("tm2tag", "compile a Turing machine and configuration into a tag system");
    tm2tag->add_option("tm", tmFile, "Turing machine file")->required();
    tm2tag->add_option("--config", cfgFile, "configuration file")->required();
    tm2tag->add_option("-o,--output", out, "tag system file (default stdout)");
    tm2tag->callback([&] {
        auto tm = parse_tm(read_file(tmFile));
        auto cfg = parse_config(read_file(cfgFile), tm);
        auto ct = compile_tm_to_tag(tm, cfg);
        emit(out, format_tag(ct.sys, ct.tape));
    });

    // tag2cts
    std::string tagFile;
    std::uint64_t limit = std::uint64_t(1) << 26;
    auto* tag2cts = app.add_subcommand("tag2cts", "compile a tag system into a cyclic tag system");
    tag2cts->add_option("tag", tagFile, "tag system file")->required();
    tag2cts->add_option("-o,--output", out, "cyclic tag system file (default stdout)");
    tag2cts->add_option("--limit", limit, "refuse words longer than this many symbols")->capture_default_str();
    tag2cts->callback([&] {
        auto tf = parse_tag(read_file(tagFile));
        auto cc = compile_tag_to_cts(tf.sys, tf.tape, limit);
        emit(out, format_cts({cc.sys, cc.tape, cc.phiSize}));
    });

    // ctsnorm
    std::string ctsFile;
    auto* ctsnorm = app.add_subcommand("ctsnorm", "pad a cyclic tag system so every appendant length is a multiple of 6");
    ctsnorm->add_option("cts", ctsFile, "cyclic tag system file")->required();
    ctsnorm->add_option("-o,--output", out, "output file (default stdout)");
    ctsnorm->callback([&] {
        auto f = parse_cts(read_file(ctsFile));
        auto n = normalize_cts_mod6(f.sys, f.tape);
        emit(out, format_cts({n.sys, n.tape, 0}));
    });

    // cts2r110
    std::string libPath, manifestOut;
    auto* cts2r110 = app.add_subcommand("cts2r110", "assemble the Rule 110 initial state of a cyclic tag system");
    cts2r110->add_option("cts", ctsFile, "cyclic tag system file")->required();
    cts2r110->add_option("-o,--output", out, "state file (default stdout)");
    cts2r110->add_option("--library", libPath, "block library (default: FORGE_BLOCK_LIBRARY or the installed asset)");
    cts2r110->add_option("--manifest", manifestOut, "write a JSON manifest here");
    cts2r110->callback([&] {
        auto f = parse_cts(read_file(ctsFile));
        PipelineInput in;
        in.from = Level::Cts;
        in.cts = f.sys;
        in.ctsTape = f.tape;
        auto res = run_pipeline(in, library(libPath));
        emit(out, format_state(res.assembly.state));
        if (!manifestOut.empty()) write_file(manifestOut, res.manifest);
    });

    // run
    std::string stateFile, renderOut, window, format = "p1";
    std::uint64_t steps = 1000;
    bool detect = false, temporal = false;
    auto* run = app.add_subcommand("run", "evolve a Rule 110 state");
    run->add_option("state", stateFile, "state file")->required();
    run->add_option("--steps", steps, "number of steps")->capture_default_str();
    run->add_flag("--detect-halt", detect, "stop at the spatial halting signature");
    run->add_flag("--temporal", temporal, "also watch for the temporal halting signature");
    run->add_option("--render", renderOut, "write the space-time window to this file");
    run->add_option("--window", window, "cells x0:x1 to render (default: the center)");
    run->add_option("--format", format, "p1, p4 or ascii")->capture_default_str();
    run->callback([&] {
        auto s = parse_state(read_file(stateFile));
        if (!renderOut.empty()) {
            auto [x0, x1] = window.empty() ? std::pair{s.origin, std::max(s.end(), s.origin + 1)} : parse_window(window);
            auto w = r110::record(s, x0, x1, steps);
            write_file(renderOut, r110::render(w, r110::parse_format(format)));
        }
        if (detect) {
            auto rep = r110::run_until_halt(s, steps, temporal);
            std::cout << "halted " << (rep.halted ? "yes" : "no");
            if (rep.halted) std::cout << " step " << rep.step << " cell " << rep.position;
            if (temporal) {
                std::cout << "; temporal " << (rep.temporalHalted ? "yes" : "no");
                if (rep.temporalHalted) std::cout << " step " << rep.temporalStep << " cell " << rep.temporalPosition;
            }
            std::cout << "; steps run " << rep.stepsRun << "\n";
        } else if (renderOut.empty()) {
            r110::Evolver ev(s);
            for (std::uint64_t k = 0; k < steps; ++k) ev.step();
            std::cout << format_state(ev.state());
        }
    });

    // emulate
    std::string name;
    std::size_t rows = 100;
    bool check = false, print = false;
    auto* emulate = app.add_subcommand("emulate", "run a built-in Rule 110 emulating Turing machine");
    emulate->add_option("name", name, "tm2x5, tm3x4, tm4x3 or tm7x2")->required();
    emulate->add_option("--rows", rows, "rows to produce")->capture_default_str();
    emulate->add_flag("--check", check, "compare the rows with direct Rule 110 evolution");
    emulate->add_flag("--print", print, "print the decoded rows");
    emulate->callback([&] {
        auto e = emu::builtin_machine(name);
        if (print) {
            auto decoded = emu::decode_sweeps(e, rows, 400 * (rows + 10) * (rows + 10));
            for (const auto& r : decoded) std::cout << r.x0 << ' ' << r110::row_to_string(r.cells) << "\n";
        }
        if (check || !print) {
            auto rep = emu::verify_ether(e, rows);
            std::cout << rep.message << "\n";
            if (!rep.ok) rc = kVerifyFailed;
        }
    });

    // nw
    std::string rtmFile, tape = "A", state;
    std::size_t tmSteps = 10;
    bool profile = false, passes = false;
    auto* nw = app.add_subcommand("nw", "simulate a right-moving circular machine with the polynomial tag construction");
    nw->add_option("rtm", rtmFile, "right-moving machine file")->required();
    nw->add_option("--tape", tape, "initial circular tape over A and B, head on the first cell")->capture_default_str();
    nw->add_option("--state", state, "initial state (default: the first)");
    nw->add_option("--tm-steps", tmSteps, "machine steps to simulate")->capture_default_str();
    nw->add_flag("--passes", passes, "print every pass of the tag system");
    nw->add_flag("--profile", profile, "print tag steps per machine step as CSV");
    nw->callback([&] {
        auto tm = nw::parse_rtm(read_file(rtmFile));
        StateId q = 0;
        if (!state.empty()) {
            auto it = std::find(tm.stateNames.begin(), tm.stateNames.end(), state);
            if (it == tm.stateNames.end()) fail(ErrorKind::Input, "unknown state " + state);
            q = static_cast<StateId>(it - tm.stateNames.begin());
        }
        nw::NwOptions opt;
        opt.keepPasses = passes;
        auto tr = nw::nw_trace(tm, nw::cells_from_string(tape), q, tmSteps, opt);
        if (passes)
            for (const auto& p : tr.passes)
                std::cout << "stage " << p.stage << (p.counterRevisit ? ".5" : "") << ": " << p.text << "\n";
        nw::CircularConfig ref{q, {}};
        for (auto c : nw::cells_from_string(tape)) ref.cells.push_back(c);
        if (profile) std::cout << "tm_step,tape_length,counter,cycles,tag_steps\n";
        for (std::size_t i = 0; i < tr.steps.size(); ++i) {
            const auto& st = tr.steps[i];
            auto next = nw::circular_step(tm, ref);
            if (!next || !(*next == st.config)) {
                std::cerr << "step " << i + 1 << " disagrees with direct simulation\n";
                rc = kVerifyFailed;
                return;
            }
            ref = *next;
            if (profile)
                std::cout << i + 1 << ',' << st.config.cells.size() << ',' << st.counter << ',' << st.cycles << ','
                          << st.tagSteps << "\n";
            else if (!passes)
                std::cout << tm.state_name(st.config.state) << ' '
                          << nw::cells_to_string({st.config.cells.begin(), st.config.cells.end()}) << "\n";
        }
        if (tr.halted) std::cout << "halted after " << tr.steps.size() << " steps\n";
    });

    // xcheck
    std::string suite, junit;
    xcheck::SuiteOptions sopt;
    auto* xc = app.add_subcommand("xcheck", "cross-check every level of the tower on a suite of machines");
    xc->add_option("--suite", suite, "directory of <name>.tm / <name>.cfg / <name>.expect files")->required();
    xc->add_option("--junit", junit, "write a JUnit XML report here");
    xc->add_option("--tm-steps", sopt.tmSteps, "TM steps for the tag lockstep")->capture_default_str();
    xc->add_option("--tag-steps", sopt.tagSteps, "tag steps for the cyclic tag lockstep")->capture_default_str();
    xc->add_option("--e2e-steps", sopt.e2eSteps, "Rule 110 steps for end-to-end halting")->capture_default_str();
    xc->add_option("--library", sopt.libraryPath, "block library");
    xc->callback([&] {
        auto results = xcheck::run_suite(suite, sopt);
        bool failed = false;
        for (const auto& r : results) {
            std::cout << r.suite << ' ' << r.name << ": " << (r.skipped ? "skipped" : xcheck::outcome_name(r.outcome));
            if (!r.message.empty()) std::cout << " (" << r.message << ")";
            std::cout << "\n";
            failed |= !r.skipped && r.outcome == xcheck::Outcome::Fail;
        }
        if (!junit.empty()) write_file(junit, xcheck::junit_xml(suite, results));
        if (failed) rc = kVerifyFailed;
    });

    // pipeline
    std::string input, from = "tm";
    auto* pipe = app.add_subcommand("pipeline", "run every pass from a Turing machine (or a lower level) to Rule 110");
    pipe->add_option("input", input, "input file at the level given by --from")->required();
    pipe->add_option("--config", cfgFile, "configuration file (with --from tm)");
    pipe->add_option("--from", from, "tm, tag or cts")->capture_default_str();
    pipe->add_option("-o,--output", out, "state file (default stdout)");
    pipe->add_option("--manifest", manifestOut, "manifest file (default: <output>.json)");
    pipe->add_option("--library", libPath, "block library");
    pipe->callback([&] {
        PipelineInput in;
        in.from = parse_level(from);
        if (in.from == Level::Tm) {
            if (cfgFile.empty()) fail(ErrorKind::Input, "--config is required with --from tm");
            in.tm = parse_tm(read_file(input));
            in.cfg = parse_config(read_file(cfgFile), *in.tm);
        } else if (in.from == Level::Tag) {
            auto tf = parse_tag(read_file(input));
            in.tag = tf.sys;
            in.tagTape = tf.tape;
        } else {
            auto f = parse_cts(read_file(input));
            in.cts = f.sys;
            in.ctsTape = f.tape;
        }
        auto res = run_pipeline(in, library(libPath));
        emit(out, format_state(res.assembly.state));
        auto m = manifestOut.empty() && !out.empty() && out != "-" ? out + ".json" : manifestOut;
        if (!m.empty()) write_file(m, res.manifest);
        else std::cerr << res.manifest;
    });

    // blocks
    std::string blockFile;
    auto* blocks = app.add_subcommand("blocks", "check a block library");
    blocks->add_option("library", blockFile, "block library (default: the installed asset)");
    blocks->callback([&] {
        auto lib = library(blockFile);
        auto issues = validate_block_library(lib);
        for (const auto& i : issues) std::cout << describe(i) << "\n";
        std::cout << lib.source << ": " << (issues.empty() ? "valid" : std::to_string(issues.size()) + " problems") << "\n";
        if (!issues.empty()) rc = kVerifyFailed;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "forge: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::Parity || e.kind() == ErrorKind::Stuck ? kVerifyFailed : kInputError;
    } catch (const std::exception& e) {
        std::cerr << "forge: " << e.what() << "\n";
        return kInputError;
    }
    return rc;
}
