#include "forge/xcheck.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>
#include <sstream>

#include "forge/formats.hpp"
#include "forge/pipeline.hpp"
#include "forge/tag2cts.hpp"
#include "forge/tm2tag.hpp"

namespace forge::xcheck {

namespace {

std::string trace_key(const TmConfiguration& c) {
    std::ostringstream os;
    auto put = [&](const auto& w) {
        for (auto a : w) os << a << ',';
        os << '|';
    };
    os << c.state << '|' << c.head << '|';
    put(c.leftPeriodic);
    put(c.leftFinite);
    put(c.rightFinite);
    put(c.rightPeriodic);
    return os.str();
}

std::string xml_escape(const std::string& s) {
    std::string o;
    for (char ch : s) {
        switch (ch) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += ch;
        }
    }
    return o;
}

}  // namespace

LockstepReport tm_vs_tag(const TuringMachine& tm, const TmConfiguration& cfg, std::size_t tmSteps,
                         std::uint64_t segmentBudget) {
    LockstepReport rep;
    rep.levels = "tm/tag";
    std::vector<TmConfiguration> trace{cfg};
    while (trace.size() <= tmSteps) {
        auto n = tm_step(tm, trace.back());
        if (!n) {
            rep.upperHalted = true;
            break;
        }
        trace.push_back(std::move(*n));
    }
    rep.expected = trace.size() - 1;

    auto ct = compile_tm_to_tag(tm, cfg);
    TagRunner run(ct.sys, ct.tape);
    std::size_t idx = 0;
    const std::int64_t radius = 40;
    for (std::uint64_t n = 0; n < segmentBudget; ++n) {
        if (!run.advance()) break;
        if (run.segment_count() > 8) continue;
        auto flat = run.flat_tape();
        if (!flat) continue;
        TmConfiguration got;
        try {
            got = to_configuration(decode_tag_tape(*flat, ct.layout), ct.layout, cfg.leftPeriodic, cfg.rightPeriodic);
        } catch (const Error&) {
            continue;
        }
        if (idx + 1 < trace.size() && same_window(got, trace[idx + 1], radius)) {
            ++idx;
        } else if (!same_window(got, trace[idx], radius)) {
            rep.divergedAt = idx;
            rep.message = "after TM step " + std::to_string(idx) + " the tag tape decodes to " +
                          format_window(tm, got, 6) + " but the machine is at " + format_window(tm, trace[idx], 6);
            rep.lowerSteps = run.steps().str();
            return rep;
        }
        if (idx == rep.expected && !rep.upperHalted) break;
    }
    if (rep.upperHalted && !run.halted()) {
        // The halting configuration must lead the tag system to halt as well.
        for (std::uint64_t n = 0; n < segmentBudget && run.advance(); ++n) {
        }
    }
    rep.lowerHalted = run.halted();
    rep.lowerSteps = run.steps().str();
    rep.compared = idx;
    if (idx < rep.expected) {
        rep.divergedAt = idx;
        rep.message = "the tag system reached only TM step " + std::to_string(idx) + " of " + std::to_string(rep.expected);
        return rep;
    }
    if (rep.upperHalted && !rep.lowerHalted) {
        rep.message = "the machine halted but the tag system did not within the budget";
        return rep;
    }
    rep.ok = true;
    rep.message = std::to_string(idx) + " TM steps matched" + (rep.upperHalted ? ", both halted" : "");
    return rep;
}

LockstepReport tag_vs_cts(const TagSystem& sys, const TagTape& tape, std::size_t tagSteps,
                          const CyclicTagSystem* sysOverride) {
    LockstepReport rep;
    rep.levels = "tag/cts";
    auto cc = compile_tag_to_cts(sys, tape);
    const CyclicTagSystem& cts = sysOverride ? *sysOverride : cc.sys;
    if (cts.appendants.size() != cc.sys.appendants.size())
        fail(ErrorKind::Input, "replacement system has a different number of appendants");
    CtsRunner runner(cts, cc.tape);
    TagTape cur = tape;
    const std::uint64_t per = std::uint64_t(cc.s) * cc.phiSize;
    rep.expected = tagSteps;
    for (std::size_t k = 1; k <= tagSteps; ++k) {
        auto next = tag_step(sys, cur);
        if (!next) {
            rep.upperHalted = true;
            rep.expected = k - 1;
            break;
        }
        cur = std::move(*next);
        for (std::uint64_t i = 0; i < per; ++i)
            if (!runner.step()) break;
        rep.lowerHalted = runner.halted();
        TagTape got;
        std::string why;
        try {
            got = decode_cts_tape(runner.tape(), cc.phiSize);
        } catch (const Error& e) {
            why = e.what();
        }
        if (!why.empty() || !(got == cur) || runner.marker() != 0) {
            rep.divergedAt = k;
            rep.lowerSteps = std::to_string(runner.steps());
            rep.message = "tag step " + std::to_string(k) + ": " +
                          (why.empty() ? "the cyclic tag tape decodes to a different tag tape" : why);
            return rep;
        }
        rep.compared = k;
    }
    rep.lowerSteps = std::to_string(runner.steps());
    rep.ok = true;
    rep.message = std::to_string(rep.compared) + " tag steps matched" + (rep.upperHalted ? ", tag system halted" : "");
    return rep;
}

LockstepReport cts_vs_normalized(const CyclicTagSystem& sys, const Bits& tape, std::size_t steps) {
    LockstepReport rep;
    rep.levels = "cts/cts6";
    auto norm = normalize_cts_mod6(sys, tape);
    CtsRunner a(sys, tape), b(norm.sys, norm.tape);
    rep.expected = steps;
    for (std::size_t k = 1; k <= steps; ++k) {
        if (!a.step()) {
            rep.upperHalted = true;
            rep.expected = k - 1;
            break;
        }
        for (int i = 0; i < 6; ++i) b.step();
        Bits back;
        std::string why;
        try {
            back = collapse_mod6(b.tape());
        } catch (const Error& e) {
            why = e.what();
        }
        if (!why.empty() || back != a.tape() || b.marker() != 6 * a.marker()) {
            rep.divergedAt = k;
            rep.message = "step " + std::to_string(k) + ": " + (why.empty() ? "normalized run disagrees" : why);
            rep.lowerSteps = std::to_string(b.steps());
            return rep;
        }
        rep.compared = k;
    }
    rep.lowerHalted = b.halted();
    rep.lowerSteps = std::to_string(b.steps());
    rep.ok = true;
    rep.message = std::to_string(rep.compared) + " steps matched";
    return rep;
}

TmConfiguration canonical(const TmConfiguration& c) {
    TmConfiguration o = c;
    while (!o.leftFinite.empty() && o.leftFinite.front() == o.leftPeriodic.front()) {
        o.leftFinite.pop_front();
        std::rotate(o.leftPeriodic.begin(), o.leftPeriodic.begin() + 1, o.leftPeriodic.end());
    }
    while (!o.rightFinite.empty() && o.rightFinite.back() == o.rightPeriodic.back()) {
        o.rightFinite.pop_back();
        std::rotate(o.rightPeriodic.rbegin(), o.rightPeriodic.rbegin() + 1, o.rightPeriodic.rend());
    }
    return o;
}

std::optional<LoopProof> prove_loop(const TuringMachine& tm, const TmConfiguration& cfg, std::uint64_t maxSteps) {
    std::map<std::string, std::uint64_t> seen;
    TmConfiguration c = canonical(cfg);
    for (std::uint64_t t = 0; t <= maxSteps; ++t) {
        auto [it, fresh] = seen.emplace(trace_key(c), t);
        if (!fresh) return LoopProof{it->second, t - it->second};
        auto n = tm_step(tm, c);
        if (!n) return std::nullopt;
        c = canonical(*n);
    }
    return std::nullopt;
}

std::optional<std::uint64_t> halts_within(const TuringMachine& tm, const TmConfiguration& cfg, std::uint64_t maxSteps) {
    TmConfiguration c = cfg;
    for (std::uint64_t t = 0; t <= maxSteps; ++t) {
        auto n = tm_step(tm, c);
        if (!n) return t;
        c = std::move(*n);
    }
    return std::nullopt;
}

const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

E2eReport e2e_halt(const TuringMachine& tm, const TmConfiguration& cfg, bool expectHalt, std::uint64_t maxSteps,
                   const BlockLibrary& lib, bool temporal) {
    E2eReport rep;
    rep.expectHalt = expectHalt;
    PipelineInput in;
    in.tm = tm;
    in.cfg = cfg;
    auto res = run_pipeline(in, lib);
    const auto& s = res.assembly.state;
    rep.stateCells = s.leftWord.size() + s.center.size() + s.rightWord.size();
    rep.halt = r110::run_until_halt(s, maxSteps, temporal);
    const bool fired = rep.halt.halted || rep.halt.temporalHalted;
    if (expectHalt) {
        if (rep.halt.halted && (!temporal || rep.halt.temporalHalted)) {
            rep.outcome = Outcome::Pass;
            rep.message = "halting signature at step " + std::to_string(rep.halt.step);
        } else if (fired) {
            rep.outcome = Outcome::Fail;
            rep.message = "only one of the two halting signatures appeared";
        } else {
            rep.outcome = Outcome::Inconclusive;
            rep.message = "no halting signature within " + std::to_string(maxSteps) + " steps";
        }
    } else {
        rep.outcome = fired ? Outcome::Fail : Outcome::Pass;
        rep.message = fired ? "halting signature at step " + std::to_string(rep.halt.step) + " for a looping machine"
                            : "no halting signature in " + std::to_string(rep.halt.stepsRun) + " steps";
    }
    return rep;
}

namespace {

std::vector<CaseResult> run_case(const std::filesystem::path& p, const SuiteOptions& opt, const BlockLibrary* lib,
                                 const std::string& libProblem) {
    std::vector<CaseResult> out;
    const auto name = p.stem().string();
    auto timed = [&](const std::string& check, auto&& body) {
        CaseResult r;
        r.suite = name;
        r.name = check;
        auto t0 = std::chrono::steady_clock::now();
        try {
            body(r);
        } catch (const Error& e) {
            r.outcome = Outcome::Fail;
            r.message = std::string(error_kind_name(e.kind())) + ": " + e.what();
        } catch (const std::exception& e) {
            r.outcome = Outcome::Fail;
            r.message = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(r);
        return r.outcome == Outcome::Pass;
    };
    TuringMachine tm;
    TmConfiguration cfg;
    bool loaded = timed("load", [&](CaseResult& r) {
        tm = parse_tm(read_file(p.string()));
        auto cfgPath = p;
        cfgPath.replace_extension(".cfg");
        cfg = parse_config(read_file(cfgPath.string()), tm);
        r.outcome = Outcome::Pass;
    });
    if (!loaded) return out;
    bool sound = timed("tm/tag", [&](CaseResult& r) {
        auto rep = tm_vs_tag(tm, cfg, opt.tmSteps);
        r.outcome = rep.ok ? Outcome::Pass : Outcome::Fail;
        r.message = rep.message;
    });
    sound &= timed("tag/cts", [&](CaseResult& r) {
        auto ct = compile_tm_to_tag(tm, cfg);
        auto rep = tag_vs_cts(ct.sys, ct.tape, opt.tagSteps);
        r.outcome = rep.ok ? Outcome::Pass : Outcome::Fail;
        r.message = rep.message;
    });
    auto expectPath = p;
    expectPath.replace_extension(".expect");
    if (!std::filesystem::exists(expectPath)) return out;
    timed("e2e", [&](CaseResult& r) {
        std::istringstream es(read_file(expectPath.string()));
        std::string expect;
        es >> expect;
        if (expect != "halts" && expect != "loops") fail(ErrorKind::Input, "expect file must say halts or loops");
        if (!sound) {
            r.skipped = true;
            r.message = "skipped: an earlier lockstep check failed";
            return;
        }
        if (!lib) {
            r.skipped = true;
            r.message = "skipped: " + libProblem;
            return;
        }
        auto rep = e2e_halt(tm, cfg, expect == "halts", opt.e2eSteps, *lib);
        r.outcome = rep.outcome;
        r.message = rep.message;
    });
    return out;
}

}  // namespace

std::vector<CaseResult> run_suite(const std::string& dir, const SuiteOptions& opt) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) fail(ErrorKind::Input, "suite directory " + dir + " not found");
    std::vector<fs::path> tms;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".tm") tms.push_back(e.path());
    std::sort(tms.begin(), tms.end());

    std::optional<BlockLibrary> lib;
    std::string libProblem;
    try {
        lib = load_block_library(opt.libraryPath.empty() ? default_block_library_path() : opt.libraryPath);
        auto issues = validate_block_library(*lib);
        if (!issues.empty()) {
            libProblem = "block library invalid: " + describe(issues.front());
            lib.reset();
        }
    } catch (const Error& e) {
        libProblem = e.what();
    }

    std::vector<std::vector<CaseResult>> per(tms.size());
    const BlockLibrary* lp = lib ? &*lib : nullptr;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < tms.size(); ++i) per[i] = run_case(tms[i], opt, lp, libProblem);

    std::vector<CaseResult> out;
    for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::string junit_xml(const std::string& suiteName, const std::vector<CaseResult>& results) {
    std::size_t failures = 0, skipped = 0;
    double total = 0;
    for (const auto& r : results) {
        if (r.skipped || r.outcome == Outcome::Inconclusive) ++skipped;
        else if (r.outcome == Outcome::Fail) ++failures;
        total += r.seconds;
    }
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<testsuite name=\"" << xml_escape(suiteName) << "\" tests=\"" << results.size() << "\" failures=\""
       << failures << "\" skipped=\"" << skipped << "\" time=\"" << total << "\">\n";
    for (const auto& r : results) {
        os << "  <testcase classname=\"" << xml_escape(r.suite) << "\" name=\"" << xml_escape(r.name) << "\" time=\""
           << r.seconds << "\"";
        if (r.skipped || r.outcome == Outcome::Inconclusive) {
            os << ">\n    <skipped message=\"" << xml_escape(r.message) << "\"/>\n  </testcase>\n";
        } else if (r.outcome == Outcome::Fail) {
            os << ">\n    <failure message=\"" << xml_escape(r.message) << "\"/>\n  </testcase>\n";
        } else {
            os << "/>\n";
        }
    }
    os << "</testsuite>\n";
    return os.str();
}

}  // namespace forge::xcheck
