#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forge/blocks.hpp"
#include "forge/machines.hpp"
#include "forge/r110.hpp"

namespace forge::xcheck {

struct LockstepReport {
    bool ok = false;
    std::string levels;          // "tm/tag", "tag/cts", "cts/cts6"
    std::size_t compared = 0;    // upper level steps matched
    std::size_t expected = 0;
    bool upperHalted = false;
    bool lowerHalted = false;
    std::string lowerSteps;      // decimal, may be huge
    std::size_t divergedAt = 0;  // upper level step of the first divergence
    std::string message;
};

// Runs the compiled tag system and decodes every canonical tape; each one must
// equal the current or the next configuration of the direct run.
LockstepReport tm_vs_tag(const TuringMachine& tm, const TmConfiguration& cfg, std::size_t tmSteps,
                         std::uint64_t segmentBudget = 4'000'000);

// One tag step is s|Phi| reads of the cyclic tag system.  When sysOverride is
// given it replaces the compiled system (for mutation tests).
LockstepReport tag_vs_cts(const TagSystem& sys, const TagTape& tape, std::size_t tagSteps,
                          const CyclicTagSystem* sysOverride = nullptr);

// Step 6k of the normalized system against step k of the original.
LockstepReport cts_vs_normalized(const CyclicTagSystem& sys, const Bits& tape, std::size_t steps);

// Canonical form: finite cells that continue a periodic word are folded into it.
TmConfiguration canonical(const TmConfiguration& c);

struct LoopProof {
    std::uint64_t first = 0;   // step at which the repeated configuration first appears
    std::uint64_t period = 0;
};
// A repeated canonical configuration proves the machine never halts.
std::optional<LoopProof> prove_loop(const TuringMachine& tm, const TmConfiguration& cfg, std::uint64_t maxSteps);
std::optional<std::uint64_t> halts_within(const TuringMachine& tm, const TmConfiguration& cfg, std::uint64_t maxSteps);

enum class Outcome { Pass, Fail, Inconclusive };
const char* outcome_name(Outcome o);

struct E2eReport {
    Outcome outcome = Outcome::Fail;
    bool expectHalt = false;
    r110::HaltReport halt;
    std::size_t stateCells = 0;
    std::string message;
};

E2eReport e2e_halt(const TuringMachine& tm, const TmConfiguration& cfg, bool expectHalt, std::uint64_t maxSteps,
                   const BlockLibrary& lib, bool temporal = true);

// ---- suites ----------------------------------------------------------------

struct CaseResult {
    std::string suite;
    std::string name;
    Outcome outcome = Outcome::Fail;
    bool skipped = false;
    double seconds = 0;
    std::string message;
};

struct SuiteOptions {
    std::size_t tmSteps = 30;
    std::size_t tagSteps = 200;
    std::uint64_t e2eSteps = 1'000'000;
    std::string libraryPath;  // empty: default location
};

// A suite directory holds <name>.tm files, each with <name>.cfg and an
// optional <name>.expect containing "halts" or "loops".
std::vector<CaseResult> run_suite(const std::string& dir, const SuiteOptions& opt);
std::string junit_xml(const std::string& suiteName, const std::vector<CaseResult>& results);

}  // namespace forge::xcheck
