#pragma once

#include <optional>
#include <string>

#include "forge/blocks.hpp"
#include "forge/cts2r110.hpp"
#include "forge/machines.hpp"
#include "forge/tag2cts.hpp"
#include "forge/tm2tag.hpp"

namespace forge {

enum class Level { Tm, Tag, Cts };
Level parse_level(const std::string& name);

struct PipelineInput {
    Level from = Level::Tm;
    std::optional<TuringMachine> tm;
    std::optional<TmConfiguration> cfg;
    std::optional<TagSystem> tag;
    std::optional<TagTape> tagTape;
    std::optional<CyclicTagSystem> cts;
    std::optional<Bits> ctsTape;
};

struct PipelineResult {
    std::optional<CompiledTag> tag;
    std::optional<CompiledCts> cts;
    CyclicTagSystem finalCts;
    Bits finalTape;
    Assembly assembly;
    std::string manifest;  // JSON, stable key order
};

// Runs the remaining passes.  Errors are rethrown with the failing pass named
// at the front of the message.
PipelineResult run_pipeline(const PipelineInput& in, const BlockLibrary& lib);

// The passes before Rule 110 assembly, which need no block library.
PipelineResult compile_to_cts(const PipelineInput& in);

}  // namespace forge
