#include "ebc/scanner.hpp"

#include "ebc/errors.hpp"

#include <json.hpp>

#include <algorithm>

namespace ebc {
namespace {

void require_bits(std::span<const std::uint8_t> bits, const char* what) {
    if (std::any_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b > 1; }))
        throw PreconditionError(std::string(what) + ": entries must be 0 or 1");
}

} // namespace

StreamingBlockScanner::StreamingBlockScanner(BitSequence pattern, bool overlapping) {
    if (pattern.empty()) throw PreconditionError("scan: pattern must be nonempty");
    require_bits(pattern, "scan pattern");
    report_.pattern = std::move(pattern);
    report_.overlapping = overlapping;
}

void StreamingBlockScanner::feed(std::span<const std::uint8_t> chunk) {
    require_bits(chunk, "scan digits");
    const auto& pat = report_.pattern;
    BitSequence buffer;
    buffer.reserve(carry_.size() + chunk.size());
    buffer.insert(buffer.end(), carry_.begin(), carry_.end());
    buffer.insert(buffer.end(), chunk.begin(), chunk.end());
    const std::uint64_t base = consumed_ - carry_.size() + 1; // position of buffer[0]

    auto it = buffer.begin();
    while (true) {
        it = std::search(it, buffer.end(), pat.begin(), pat.end());
        if (it == buffer.end()) break;
        const std::uint64_t pos = base + static_cast<std::uint64_t>(it - buffer.begin());
        if (pos >= next_allowed_) {
            report_.positions.push_back(pos);
            next_allowed_ = report_.overlapping ? pos + 1 : pos + pat.size();
        }
        ++it;
    }
    consumed_ += chunk.size();
    const std::size_t keep = std::min(buffer.size(), pat.size() - 1);
    carry_.assign(buffer.end() - static_cast<std::ptrdiff_t>(keep), buffer.end());
}

BlockScanReport StreamingBlockScanner::report() const {
    BlockScanReport r = report_;
    r.window_start = 1;
    r.window_end = consumed_;
    r.count = r.positions.size();
    return r;
}

BlockScanReport scan_block(const BitSequence& digits, const BitSequence& pattern, bool overlapping) {
    StreamingBlockScanner scanner(pattern, overlapping);
    scanner.feed(digits);
    return scanner.report();
}

std::uint64_t FrequencyTable::total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

std::string FrequencyTable::block(std::size_t index) const {
    std::string s(block_len, '0');
    for (unsigned i = 0; i < block_len; ++i)
        if ((index >> (block_len - 1 - i)) & 1) s[i] = '1';
    return s;
}

FrequencyTable block_frequency_table(const BitSequence& digits, unsigned block_len) {
    if (block_len == 0) throw PreconditionError("block_frequency_table: block_len must be positive");
    if (block_len > 24) throw PreconditionError("block_frequency_table: block_len must be at most 24");
    if (block_len > digits.size())
        throw PreconditionError("block_frequency_table: block_len exceeds the sequence length " +
                                std::to_string(digits.size()));
    require_bits(digits, "block_frequency_table");
    FrequencyTable t;
    t.block_len = block_len;
    t.counts.assign(std::size_t{1} << block_len, 0);
    const std::size_t mask = (std::size_t{1} << block_len) - 1;
    std::size_t window = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        window = ((window << 1) | digits[i]) & mask;
        if (i + 1 >= block_len) ++t.counts[window];
    }
    return t;
}

std::string to_json(const BlockScanReport& r, std::uint64_t max_positions) {
    nlohmann::ordered_json j;
    j["pattern"] = to_ascii(r.pattern);
    j["window"] = {r.window_start, r.window_end};
    j["overlapping"] = r.overlapping;
    j["count"] = r.count;
    if (r.positions.size() <= max_positions) {
        j["positions"] = r.positions;
    } else {
        j["positions"] = nullptr;
        j["positions_suppressed"] = true;
    }
    return j.dump() + "\n";
}

std::string to_tsv(const BlockScanReport& r, std::uint64_t max_positions) {
    std::string positions;
    if (r.positions.size() > max_positions) {
        positions = "suppressed";
    } else {
        for (std::size_t i = 0; i < r.positions.size(); ++i)
            positions += (i ? "," : "") + std::to_string(r.positions[i]);
    }
    return "pattern\twindow_start\twindow_end\toverlapping\tcount\tpositions\n" + to_ascii(r.pattern) + "\t" +
           std::to_string(r.window_start) + "\t" + std::to_string(r.window_end) + "\t" +
           (r.overlapping ? "true" : "false") + "\t" + std::to_string(r.count) + "\t" + positions + "\n";
}

std::string to_json(const FrequencyTable& t) {
    nlohmann::ordered_json j;
    j["block_len"] = t.block_len;
    j["total"] = t.total();
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.counts.size(); ++i) counts[t.block(i)] = t.counts[i];
    j["counts"] = std::move(counts);
    return j.dump() + "\n";
}

std::string to_tsv(const FrequencyTable& t) {
    std::string out = "block\tcount\n";
    for (std::size_t i = 0; i < t.counts.size(); ++i) out += t.block(i) + "\t" + std::to_string(t.counts[i]) + "\n";
    return out;
}

} // namespace ebc
