#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "forge/r110.hpp"

namespace forge {

// A strip of Rule 110 space-time between two zig-zag seams.  Row r+1 is the
// successor of row r; row `period` is row 0 moved `drift` cells to the right.
// The left seam of row r is at phase r (mod leftSeamPeriod) and the right seam
// at phase r + offset (mod rightSeamPeriod).  A block joined on the right uses
// the row whose left phase equals that right phase.
struct BitBlock {
    char id = '?';
    int period = 0;
    bool periodic = true;
    int offset = 0;
    std::int64_t drift = 0;
    int leftSeamPeriod = 0;
    int rightSeamPeriod = 0;
    int t0Row = -1;                   // only for the block that holds the initial row
    std::vector<std::int64_t> left;   // local x of the first cell of each row
    std::vector<r110::Row> rows;

    std::int64_t right(int r) const { return left[r] + static_cast<std::int64_t>(rows[r].size()); }
    int left_phase(int r) const { return r % leftSeamPeriod; }
    int right_phase(int r) const { return (r + offset) % rightSeamPeriod; }
    // Row entered from the left at phase p, and entered from the right at phase p.
    int row_from_left(int p) const;
    int row_from_right(int p) const;
};

struct BlockLibrary {
    std::map<char, BitBlock> blocks;
    std::string source;

    const BitBlock& at(char id) const;
    bool has(char id) const { return blocks.count(id) != 0; }
};

constexpr const char* kBlockIds = "ABCDEFGHIJKL";
int expected_period(char id);

BlockLibrary parse_block_library(const std::string& text);
std::string format_block_library(const BlockLibrary& lib);
std::uint32_t block_checksum(const std::string& body);

// Path given by FORGE_BLOCK_LIBRARY, else the installed asset.
std::string default_block_library_path();
BlockLibrary load_block_library(const std::string& path);

struct LibraryIssue {
    char block = '?';
    int row = -1;
    std::string what;
};

// Empty when every block is present, has the right period, evolves row to
// row under Rule 110, and every pair of blocks that can meet shares its seam.
std::vector<LibraryIssue> validate_block_library(const BlockLibrary& lib);
std::string describe(const LibraryIssue& issue);

}  // namespace forge
