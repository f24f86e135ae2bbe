#pragma once

#include "ebc/digits.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ebc {

struct BlockScanReport {
    BitSequence pattern;
    std::uint64_t window_start = 1; // positions are 1-indexed from the start of the scanned sequence
    std::uint64_t window_end = 0;
    std::uint64_t count = 0;
    std::vector<std::uint64_t> positions;
    bool overlapping = true;
};

// Empty patterns are rejected.
BlockScanReport scan_block(const BitSequence& digits, const BitSequence& pattern, bool overlapping = true);

// Accepts the sequence in chunks; matches spanning a seam are found exactly once.
class StreamingBlockScanner {
public:
    explicit StreamingBlockScanner(BitSequence pattern, bool overlapping = true);

    void feed(std::span<const std::uint8_t> chunk);
    BlockScanReport report() const;

private:
    BlockScanReport report_;
    BitSequence carry_;           // last |pattern| - 1 bits seen
    std::uint64_t consumed_ = 0;  // bits fed so far
    std::uint64_t next_allowed_ = 1;
};

struct FrequencyTable {
    unsigned block_len = 0;
    std::vector<std::uint64_t> counts; // indexed by the block read MSB first; all 2^block_len entries

    std::uint64_t total() const;
    std::string block(std::size_t index) const;
};

// Overlapping counts; 1 <= block_len <= min(24, |digits|).
FrequencyTable block_frequency_table(const BitSequence& digits, unsigned block_len);

// Position lists longer than max_positions are replaced by a suppression marker.
std::string to_json(const BlockScanReport& r, std::uint64_t max_positions);
std::string to_tsv(const BlockScanReport& r, std::uint64_t max_positions);
std::string to_json(const FrequencyTable& t);
std::string to_tsv(const FrequencyTable& t);

} // namespace ebc
