#include "ebc/digits.hpp"

#include "ebc/errors.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <string>

namespace ebc {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 ceil_log2(u64 x) { return x <= 1 ? 0 : 64 - static_cast<u64>(std::countl_zero(x - 1)); }

BigInt shifted_down(const BigInt& v, u64 shift) {
    BigInt r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), shift);
    return r;
}

BitSequence low_bits_msb_first(const BigInt& v, u64 count) {
    BitSequence bits(count);
    for (u64 i = 0; i < count; ++i) bits[i] = static_cast<std::uint8_t>(mpz_tstbit(v.get_mpz_t(), count - 1 - i));
    return bits;
}

// lower <= 2^W E < upper with W = precision + guard. The top precision+1 bits of
// both bounds agree exactly when the emitted digits are provably those of E.
std::optional<DigitExpansion> certify(const BigInt& lower, const BigInt& upper, u64 precision, u64 guard) {
    const BigInt lo = shifted_down(lower, guard);
    if (lo != shifted_down(upper, guard)) return std::nullopt;
    DigitExpansion out;
    out.precision = precision;
    out.integer_part = to_u64(shifted_down(lo, precision));
    out.bits = low_bits_msb_first(lo, precision);
    out.guard_bits = guard;
    out.certified = true;
    return out;
}

template <class Attempt>
DigitExpansion with_guard_doubling(u64 precision, const ExpansionOptions& options, const char* name, Attempt attempt) {
    if (precision == 0) throw PreconditionError(std::string(name) + ": precision must be positive");
    u64 guard = options.initial_guard_bits ? options.initial_guard_bits : default_guard_bits(precision);
    for (unsigned round = 0; round <= options.max_doublings; ++round, guard *= 2) {
        if (auto out = attempt(guard)) {
            if (out->integer_part != 1)
                throw CertificationError(std::string(name) + ": integer part is not 1");
            return *out;
        }
    }
    throw CertificationError(std::string(name) + ": digits still undetermined after " +
                             std::to_string(options.max_doublings) + " guard-bit doublings");
}

} // namespace

const char* to_string(ExpansionMethod m) { return m == ExpansionMethod::naive ? "naive" : "sieve"; }

const char* to_string(Membership m) {
    switch (m) {
    case Membership::inside: return "inside";
    case Membership::outside: return "outside";
    default: return "indeterminate";
    }
}

u64 default_guard_bits(u64 precision) { return ceil_log2(precision) + 8; }

DigitExpansion expand_naive(u64 precision, const ExpansionOptions& options) {
    return with_guard_doubling(precision, options, "expand_naive", [&](u64 guard) {
        const u64 W = precision + guard;
        const u64 K = W + 1; // omitted tail is below 2^(1-K), i.e. one unit at 2^-W
        const BigInt numerator = pow2(W);
        BigInt sum = 0, q, divisor;
        for (u64 a = 1; a <= std::min(K, W); ++a) {
            divisor = pow2(a) - 1;
            mpz_fdiv_q(q.get_mpz_t(), numerator.get_mpz_t(), divisor.get_mpz_t());
            sum += q;
        }
        BigInt upper = sum + from_u64(K + 1);
        auto out = certify(sum, upper, precision, guard);
        if (out) {
            out->terms_used = K;
            out->method = ExpansionMethod::naive;
        }
        return out;
    });
}

DigitExpansion expand_sieve(u64 precision, const ExpansionOptions& options) {
    return with_guard_doubling(precision, options, "expand_sieve", [&](u64 guard) {
        const u64 W = precision + guard;
        const DivisorTable table = divisor_sieve(W, options.sieve);

        // d(n) < 2^16, so each 128-bit limb slot absorbs at most 64 low and 64 high parts.
        std::vector<u128> slots(W / 64 + 2, 0);
        for (u64 n = 1; n <= W; ++n) {
            const u64 bit = W - n;
            const u128 v = static_cast<u128>(table[n]) << (bit & 63);
            slots[bit >> 6] += static_cast<u64>(v);
            slots[(bit >> 6) + 1] += static_cast<u64>(v >> 64);
        }
        std::vector<u64> limbs(slots.size() + 2, 0);
        u128 carry = 0;
        for (std::size_t i = 0; i < limbs.size(); ++i) {
            const u128 t = (i < slots.size() ? slots[i] : 0) + carry;
            limbs[i] = static_cast<u64>(t);
            carry = t >> 64;
        }
        BigInt sum;
        mpz_import(sum.get_mpz_t(), limbs.size(), -1, sizeof(u64), 0, 0, limbs.data());

        // sum_{n>W} d(n) 2^-n <= sum 2 sqrt(n) 2^-n <= 8 sqrt(W) 2^-W, i.e. ceil(sqrt(64 W)) units.
        BigInt upper = sum + from_u64(ceil_sqrt(64 * W));
        auto out = certify(sum, upper, precision, guard);
        if (out) {
            out->terms_used = W;
            out->method = ExpansionMethod::sieve;
        }
        return out;
    });
}

u64 window_working_bits(u64 pos, u64 width) {
    u64 P = width + 8;
    for (;;) {
        const u64 need = width + ceil_log2(pos + P) + 8;
        if (P >= need) return P;
        P = need;
    }
}

BitSequence digit_window(u64 pos, u64 width, unsigned max_retries) {
    if (pos == 0 || width == 0) throw PreconditionError("digit_window: pos and width must be positive");
    if (pos > (u64{1} << 62) || width > (u64{1} << 32)) throw ResourceError("digit_window: position or width too large");
    const u64 x = pos - 1;
    u64 P = window_working_bits(pos, width);

    for (unsigned attempt = 0; attempt <= max_retries; ++attempt, P *= 2) {
        // 2^x / (2^a - 1) = integer + 2^e / (2^a - 1) with e = x mod a; the a = 1 term is an integer.
        // floor(2^(P+e) / (2^a - 1)) = sum_{i >= 1, ia <= P+e} 2^(P+e-ia) for a >= 2.
        std::vector<u64> hits(P, 0);
        auto add_term = [&](u64 a, u64 e) {
            for (u64 b = P + e - a;; b -= a) {
                ++hits[b];
                if (b < a) break;
            }
        };
        // Only terms with P + e >= a have a nonzero fixed-point floor. For a <= x grouped by
        // q = x / a, that is a <= (P + x) / (q + 1).
        for (u64 a = 2; a <= x;) {
            const u64 q = x / a;
            const u64 a_hi = x / q;
            const u64 end = std::min(a_hi, (P + x) / (q + 1));
            for (u64 b = a; b <= end; ++b) add_term(b, x - q * b);
            a = a_hi + 1;
        }
        for (u64 a = std::max<u64>(2, x + 1); a <= x + P; ++a) add_term(a, x);

        BitSequence frac_bits(P);
        u128 carry = 0;
        for (u64 b = 0; b < P; ++b) {
            carry += hits[b];
            frac_bits[P - 1 - b] = static_cast<std::uint8_t>(carry & 1);
            carry >>= 1;
        }
        BigInt lower = 0;
        for (u64 i = 0; i < P; ++i)
            if (frac_bits[i]) mpz_setbit(lower.get_mpz_t(), P - 1 - i);
        // pos + P - 1 truncated terms below one unit each, plus a tail below one unit.
        const BigInt upper = lower + from_u64(pos + P);
        const u64 shift = P - width;
        const BigInt head = shifted_down(lower, shift);
        if (head == shifted_down(upper, shift)) return low_bits_msb_first(head, width);
    }
    throw CertificationError("digit_window: digits at position " + std::to_string(pos) +
                             " still undetermined after " + std::to_string(max_retries) + " retries");
}

FractionEnclosure fractional_part_enclosure(u64 n, u64 precision, unsigned max_retries) {
    if (n == 0) throw PreconditionError("fractional_part_enclosure: n must be positive");
    // frac(2^(n-1) E) = frac(sum_{l>=0} d(n+l) 2^-(l+1)); the part past l = c is at most
    // sum_{l>c} sqrt(n+l) 2^-l <= 2^-c (sqrt(n+c) + 3/2) using sqrt(t) <= (1+t)/2.
    u64 c = precision + 2 + ceil_log2(ceil_sqrt(n) + 2);
    for (unsigned attempt = 0; attempt <= max_retries; ++attempt, c += 16) {
        auto slack_units = [&](u64 cut) {
            if (cut > UINT64_MAX - n) throw ResourceError("fractional_part_enclosure: n + cutoff exceeds 64 bits");
            return 2 * ceil_sqrt(n + cut) + 3;
        };
        while (from_u64(slack_units(c)) > pow2(c + 1 - std::min(precision, c + 1))) ++c;

        BigInt sum = 0;
        for (u64 l = 0; l <= c; ++l) {
            BigInt term = from_u64(divisor_count(n + l));
            mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), c - l);
            sum += term;
        }
        const BigInt one = pow2(c + 1);
        BigInt lower;
        mpz_fdiv_r_2exp(lower.get_mpz_t(), sum.get_mpz_t(), c + 1);
        BigInt upper = lower + from_u64(slack_units(c));
        if (upper > one) continue; // straddles an integer; refine
        return FractionEnclosure{n, precision, Dyadic(lower, c + 1), Dyadic(upper, c + 1)};
    }
    throw CertificationError("fractional_part_enclosure: enclosure at n = " + std::to_string(n) +
                             " still straddles an integer");
}

Membership locate(const FractionEnclosure& e, const Dyadic& low, const Dyadic& high) {
    const Dyadic one = Dyadic::integer(1);
    const bool below_high = e.upper < high || (e.upper == high && high == one);
    if (e.lower >= low && below_high) return Membership::inside;
    if (e.upper < low || e.lower >= high) return Membership::outside;
    return Membership::indeterminate;
}

Membership locate_in_top_quarter(const FractionEnclosure& e) {
    return locate(e, Dyadic(3, 2), Dyadic::integer(1));
}

std::string to_ascii(const BitSequence& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) s[i] = '1';
    return s;
}

std::string to_hex(const BitSequence& bits) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string s;
    s.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned nibble = 0;
        for (std::size_t j = 0; j < 4; ++j) nibble = (nibble << 1) | (i + j < bits.size() ? bits[i + j] : 0u);
        s.push_back(kHex[nibble]);
    }
    return s;
}

BitSequence parse_ascii(std::string_view text) {
    BitSequence bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c == '0' || c == '1')
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        else
            throw PreconditionError(std::string("digit text contains '") + c + "'");
    }
    return bits;
}

BitSequence parse_hex(std::string_view text, u64 bit_count) {
    if (bit_count > text.size() * 4 || bit_count + 3 < text.size() * 4)
        throw PreconditionError("hex digit text does not match the bit count");
    BitSequence bits;
    bits.reserve(bit_count);
    for (char c : text) {
        unsigned v;
        if (c >= '0' && c <= '9')
            v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            v = static_cast<unsigned>(c - 'A' + 10);
        else
            throw PreconditionError(std::string("hex digit text contains '") + c + "'");
        for (int j = 3; j >= 0 && bits.size() < bit_count; --j) bits.push_back(static_cast<std::uint8_t>((v >> j) & 1));
    }
    return bits;
}

} // namespace ebc
