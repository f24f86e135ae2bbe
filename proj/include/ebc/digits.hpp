#pragma once

#include "ebc/bigint.hpp"
#include "ebc/divisor.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ebc {

// One entry per binary digit, each 0 or 1.
using BitSequence = std::vector<std::uint8_t>;

enum class ExpansionMethod { naive, sieve };

const char* to_string(ExpansionMethod m);

// Binary digits of E = 1.b1 b2 b3 ... ; bits[0] holds b1.
struct DigitExpansion {
    std::uint64_t precision = 0;
    std::uint64_t integer_part = 0;
    BitSequence bits;
    std::uint64_t guard_bits = 0;
    std::uint64_t terms_used = 0;
    ExpansionMethod method = ExpansionMethod::naive;
    bool certified = false;
};

struct ExpansionOptions {
    SieveOptions sieve;
    // Defaults to ceil(log2 N) + 8.
    std::uint64_t initial_guard_bits = 0;
    unsigned max_doublings = 10;
};

std::uint64_t default_guard_bits(std::uint64_t precision);

// Sum over a <= K of floor(2^W / (2^a - 1)); one big division per term.
DigitExpansion expand_naive(std::uint64_t precision, const ExpansionOptions& options = {});

// Sum over n <= W of d(n) 2^(W-n) from a divisor table; the fast path for large N.
DigitExpansion expand_sieve(std::uint64_t precision, const ExpansionOptions& options = {});

// Digits pos .. pos+width-1 without computing earlier ones.
BitSequence digit_window(std::uint64_t pos, std::uint64_t width, unsigned max_retries = 10);

// Working precision used by the first digit_window attempt.
std::uint64_t window_working_bits(std::uint64_t pos, std::uint64_t width);

// Rigorous bounds lower <= frac(2^(n-1) E) <= upper.
struct FractionEnclosure {
    std::uint64_t n = 0;
    std::uint64_t requested_precision = 0;
    Dyadic lower;
    Dyadic upper;
    Dyadic width() const { return upper - lower; }
};

// Evaluated from frac(sum_{l>=0} d(n+l) / 2^(l+1)) with a closed-form remainder.
FractionEnclosure fractional_part_enclosure(std::uint64_t n, std::uint64_t precision, unsigned max_retries = 10);

enum class Membership { inside, outside, indeterminate };

const char* to_string(Membership m);

// Membership of the enclosed value in [low, high).
Membership locate(const FractionEnclosure& e, const Dyadic& low, const Dyadic& high);

// The n-th and (n+1)-th digits are both 1 exactly when frac(2^(n-1) E) lies in [3/4, 1).
Membership locate_in_top_quarter(const FractionEnclosure& e);

std::string to_ascii(const BitSequence& bits);
// Four bits per character, most significant first; a partial last nibble is zero-padded.
std::string to_hex(const BitSequence& bits);
BitSequence parse_ascii(std::string_view text);
// Inverse of to_hex for a known bit count.
BitSequence parse_hex(std::string_view text, std::uint64_t bit_count);

} // namespace ebc
