#include "forge/pipeline.hpp"

#include <json.hpp>

#include <cstdio>

#include "forge/error.hpp"

namespace forge {

namespace {

template <class F>
auto in_pass(const char* pass, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(pass) + ": " + e.what());
    }
}

std::size_t count_appendant_bits(const CyclicTagSystem& sys) {
    std::size_t n = 0;
    for (const auto& a : sys.appendants) n += a.size();
    return n;
}

}  // namespace

Level parse_level(const std::string& name) {
    if (name == "tm") return Level::Tm;
    if (name == "tag") return Level::Tag;
    if (name == "cts") return Level::Cts;
    fail(ErrorKind::Input, "unknown level '" + name + "' (expected tm, tag or cts)");
}

PipelineResult compile_to_cts(const PipelineInput& in) {
    PipelineResult out;
    TagSystem tag;
    TagTape tagTape;
    switch (in.from) {
    case Level::Tm:
        if (!in.tm || !in.cfg) fail(ErrorKind::Input, "a Turing machine and its configuration are required");
        out.tag = in_pass("tm2tag", [&] { return compile_tm_to_tag(*in.tm, *in.cfg); });
        tag = out.tag->sys;
        tagTape = out.tag->tape;
        break;
    case Level::Tag:
        if (!in.tag || !in.tagTape) fail(ErrorKind::Input, "a tag system and its tape are required");
        tag = *in.tag;
        tagTape = *in.tagTape;
        break;
    case Level::Cts:
        if (!in.cts || !in.ctsTape) fail(ErrorKind::Input, "a cyclic tag system and its tape are required");
        out.finalCts = *in.cts;
        out.finalTape = *in.ctsTape;
        return out;
    }
    out.cts = in_pass("tag2cts", [&] { return compile_tag_to_cts(tag, tagTape); });
    out.finalCts = out.cts->sys;
    out.finalTape = out.cts->tape;
    return out;
}

PipelineResult run_pipeline(const PipelineInput& in, const BlockLibrary& lib) {
    auto out = compile_to_cts(in);
    out.assembly = in_pass("cts2r110", [&] { return assemble_state(out.finalCts, out.finalTape, lib); });

    nlohmann::ordered_json m;
    m["format"] = "forge-manifest 1";
    m["from"] = in.from == Level::Tm ? "tm" : in.from == Level::Tag ? "tag" : "cts";
    if (in.tm) {
        m["tm"] = {{"states", in.tm->m}, {"symbols", in.tm->t}};
    }
    if (out.tag) {
        m["tag"] = {{"s", out.tag->sys.s},
                    {"alphabet", out.tag->layout.size()},
                    {"tape_runs", out.tag->tape.runs().size()},
                    {"tape_length", out.tag->tape.length().str()}};
    }
    if (out.cts) {
        m["cts"] = {{"phi", out.cts->phiSize}, {"s", out.cts->s}};
    }
    m["cts_system"] = {{"appendants", out.finalCts.appendants.size()},
                       {"appendant_bits", count_appendant_bits(out.finalCts)},
                       {"tape_length", out.finalTape.size()}};
    const auto& a = out.assembly;
    char crc[16];
    std::snprintf(crc, sizeof crc, "%08x", block_checksum(format_block_library(lib)));
    m["rule110"] = {{"v", a.v},
                    {"center_blocks", a.centerBlocks.size()},
                    {"right_blocks", a.rightBlocks.size()},
                    {"center_cells", a.state.center.size()},
                    {"left_period", a.state.leftWord.size()},
                    {"right_period", a.state.rightWord.size()},
                    {"left_passes", a.leftTraversals},
                    {"right_passes", a.rightTraversals},
                    {"library_crc32", crc}};
    out.manifest = m.dump(2) + "\n";
    return out;
}

}  // namespace forge
