#include "ebc/divisor.hpp"

#include "ebc/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

namespace ebc {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::array<u64, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                              43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Sieved primes stop here; trial division continues over odd candidates beyond it.
constexpr std::uint32_t kTableCap = std::uint32_t{1} << 26;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 e, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return r;
}

bool strong_probable_prime(u64 n, u64 a, u64 d, unsigned s) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

std::vector<std::uint32_t> sieve_primes(std::uint32_t limit) {
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    std::vector<std::uint32_t> primes;
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

class PrimeTable {
public:
    std::shared_ptr<const std::vector<std::uint32_t>> through(std::uint32_t limit) {
        std::lock_guard lock(mutex_);
        if (!table_ || covered_ < limit) {
            const std::uint32_t target = std::max<std::uint32_t>(
                {limit, covered_ > kTableCap / 2 ? kTableCap : covered_ * 2, std::uint32_t{1} << 16});
            table_ = std::make_shared<const std::vector<std::uint32_t>>(sieve_primes(target));
            covered_ = target;
        }
        return table_;
    }

private:
    std::mutex mutex_;
    std::shared_ptr<const std::vector<std::uint32_t>> table_;
    std::uint32_t covered_ = 0;
};

PrimeTable& prime_table() {
    static PrimeTable table;
    return table;
}

} // namespace

FactorMap::FactorMap(std::vector<PrimePower> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
}

std::uint32_t FactorMap::exponent_of(std::uint64_t p) const noexcept {
    for (const auto& e : entries_)
        if (e.prime == p) return e.exponent;
    return 0;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 p : kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 101 * 101) return true;
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases decide primality for all n < 3.3e24.
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (!strong_probable_prime(n, a, d, s)) return false;
    return true;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t ceil_sqrt(std::uint64_t n) {
    const u64 r = isqrt(n);
    return static_cast<u128>(r) * r == n ? r : r + 1;
}

std::shared_ptr<const std::vector<std::uint32_t>> primes_through(std::uint32_t limit) {
    return prime_table().through(limit);
}

FactorMap factorize(std::uint64_t n) {
    if (n == 0) throw PreconditionError("factorize: n must be positive");
    std::vector<PrimePower> out;
    auto strip = [&](u64 p) {
        if (n % p != 0) return false;
        std::uint32_t e = 0;
        do {
            n /= p;
            ++e;
        } while (n % p == 0);
        out.push_back({p, e});
        return true;
    };
    auto finish_if_prime = [&] {
        if (n > 1 && is_prime(n)) {
            out.push_back({n, 1});
            n = 1;
        }
        return n == 1;
    };

    for (u64 p : kSmallPrimes) strip(p);
    if (finish_if_prime()) return FactorMap(std::move(out));

    const u64 root = isqrt(n);
    const auto table = primes_through(static_cast<std::uint32_t>(std::min<u64>(root, kTableCap)));
    u64 last = kSmallPrimes.back();
    for (std::uint32_t p32 : *table) {
        const u64 p = p32;
        if (p <= kSmallPrimes.back()) continue;
        if (p * p > n) break;
        last = p;
        if (strip(p) && finish_if_prime()) return FactorMap(std::move(out));
    }
    // Only reachable when sqrt(n) exceeds the sieved table.
    for (u64 c = last + 2; n > 1 && static_cast<u128>(c) * c <= n; c += 2)
        if (strip(c) && finish_if_prime()) return FactorMap(std::move(out));
    if (n > 1) out.push_back({n, 1});
    return FactorMap(std::move(out));
}

std::uint64_t divisor_count(const FactorMap& f) {
    u64 d = 1;
    for (const auto& e : f.entries()) d *= e.exponent + 1;
    return d;
}

std::uint64_t divisor_count(std::uint64_t n) { return divisor_count(factorize(n)); }

std::uint32_t valuation(std::uint64_t n, std::uint64_t p) {
    if (n == 0) throw PreconditionError("valuation: n must be positive");
    if (!is_prime(p)) throw PreconditionError("valuation: " + std::to_string(p) + " is not prime");
    std::uint32_t e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

std::uint64_t euler_totient(std::uint64_t n) {
    u64 phi = n;
    const FactorMap f = factorize(n);
    for (const auto& e : f.entries()) phi = phi / e.prime * (e.prime - 1);
    return phi;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t low, std::uint64_t high) {
    std::vector<u64> out;
    for (u64 x = low; x <= high; ++x) {
        if (is_prime(x)) out.push_back(x);
        if (x == UINT64_MAX) break;
    }
    return out;
}

std::size_t divisor_table_bytes(std::uint64_t limit) { return (static_cast<std::size_t>(limit) + 1) * sizeof(std::uint16_t); }

DivisorTable divisor_sieve(std::uint64_t limit, const SieveOptions& options) {
    if (limit == 0) throw PreconditionError("divisor_sieve: limit must be positive");
    const auto bytes = static_cast<long double>(limit + 1) * sizeof(std::uint16_t);
    if (bytes > static_cast<long double>(options.memory_budget_bytes)) {
        throw ResourceError("divisor_sieve: limit " + std::to_string(limit) + " needs " +
                            std::to_string(static_cast<u64>(bytes)) + " bytes, budget is " +
                            std::to_string(options.memory_budget_bytes) + " bytes (max limit " +
                            std::to_string(options.memory_budget_bytes / sizeof(std::uint16_t) - 1) + ")");
    }
    std::vector<std::uint16_t> counts(static_cast<std::size_t>(limit) + 1, 0);

    // Each n in a chunk gets +2 per divisor pair (i, n/i) with i < sqrt(n), +1 when n = i^2.
    constexpr u64 kChunk = u64{1} << 18;
    const u64 chunks = (limit + kChunk) / kChunk;
    std::atomic<u64> next{0};
    auto worker = [&] {
        for (u64 c = next++; c < chunks; c = next++) {
            const u64 lo = std::max<u64>(1, c * kChunk);
            const u64 hi = std::min<u64>(limit, (c + 1) * kChunk - 1);
            const u64 root = isqrt(hi);
            for (u64 i = 1; i <= root; ++i) {
                const u64 sq = i * i;
                u64 j = std::max(sq, (lo + i - 1) / i * i);
                if (j == sq) {
                    counts[j] += 1;
                    j += i;
                }
                for (; j <= hi; j += i) counts[j] += 2;
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(chunks)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return DivisorTable(limit, std::move(counts));
}

std::uint64_t progression_divisor_sum(std::uint64_t a, std::uint64_t A, std::uint64_t M) {
    if (a == 0 || A == 0 || M == 0) throw PreconditionError("progression_divisor_sum: a, A, M must be positive");
    u64 span = 0, last = 0;
    if (__builtin_mul_overflow(M - 1, A, &span) || __builtin_add_overflow(a, span, &last))
        throw ResourceError("progression_divisor_sum: a + (M-1)A exceeds the 64-bit range");
    u64 total = 0;
    // Dense progressions below 2^24 read a sieved table instead of factoring each term.
    if (last <= (u64{1} << 24) && M >= last / 32) {
        const auto table = divisor_sieve(last);
        for (u64 m = 0; m < M; ++m) total += table[a + m * A];
        return total;
    }
    for (u64 m = 0; m < M; ++m) total += divisor_count(a + m * A);
    return total;
}

} // namespace ebc
