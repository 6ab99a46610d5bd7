#pragma once

#include <string>

#include "forge/machines.hpp"
#include "forge/r110.hpp"

namespace forge {

// Every format starts with a header line "forge-<kind> 1".  Blank lines and
// text after '#' are ignored.  The grammar of each format is in docs/formats.md.

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

TuringMachine parse_tm(const std::string& text);
std::string format_tm(const TuringMachine& tm);

TmConfiguration parse_config(const std::string& text, const TuringMachine& tm);
std::string format_config(const TmConfiguration& cfg, const TuringMachine& tm);

struct TagFile {
    TagSystem sys;
    TagTape tape;
};
TagFile parse_tag(const std::string& text);
std::string format_tag(const TagSystem& sys, const TagTape& tape);

struct CtsFile {
    CyclicTagSystem sys;
    Bits tape;
    std::uint32_t phiSize = 0;  // unary block size when compiled from a tag system, else 0
};
CtsFile parse_cts(const std::string& text);
std::string format_cts(const CtsFile& f);

// Cell words use the b/o run-length alphabet: "3b2o" is 00011.
std::string rle_bits(const r110::Row& r);
r110::Row unrle_bits(const std::string& s);

r110::Rule110State parse_state(const std::string& text);
std::string format_state(const r110::Rule110State& s);

}  // namespace forge
