#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace ebc {

struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization, ascending by prime. Empty for n = 1.
class FactorMap {
public:
    FactorMap() = default;
    explicit FactorMap(std::vector<PrimePower> entries);

    std::span<const PrimePower> entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    std::uint32_t exponent_of(std::uint64_t p) const noexcept;

    friend bool operator==(const FactorMap&, const FactorMap&) = default;

private:
    std::vector<PrimePower> entries_;
};

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// Trial division by sieved primes; stops once the cofactor is prime.
FactorMap factorize(std::uint64_t n);

std::uint64_t divisor_count(std::uint64_t n);
std::uint64_t divisor_count(const FactorMap& f);

// Largest e with p^e | n.
std::uint32_t valuation(std::uint64_t n, std::uint64_t p);

std::uint64_t euler_totient(std::uint64_t n);

std::uint64_t isqrt(std::uint64_t n);
std::uint64_t ceil_sqrt(std::uint64_t n);

// Shared snapshot of all primes <= limit (possibly more).
std::shared_ptr<const std::vector<std::uint32_t>> primes_through(std::uint32_t limit);

// Primes in the closed interval [low, high], ascending.
std::vector<std::uint64_t> primes_in_range(std::uint64_t low, std::uint64_t high);

struct SieveOptions {
    unsigned threads = 1;
    std::size_t memory_budget_bytes = std::size_t{1} << 30;
};

// counts[n] = d(n) for 1 <= n <= limit; counts[0] is unused.
class DivisorTable {
public:
    DivisorTable(std::uint64_t limit, std::vector<std::uint16_t> counts)
        : limit_(limit), counts_(std::move(counts)) {}

    std::uint64_t limit() const noexcept { return limit_; }
    std::uint16_t operator[](std::uint64_t n) const noexcept { return counts_[n]; }
    std::span<const std::uint16_t> counts() const noexcept { return counts_; }

private:
    std::uint64_t limit_;
    std::vector<std::uint16_t> counts_;
};

std::size_t divisor_table_bytes(std::uint64_t limit);

// Chunked divisor-pair sieve. The table is identical for every thread count.
DivisorTable divisor_sieve(std::uint64_t limit, const SieveOptions& options = {});

// Sum of d(a + m*A) for 0 <= m < M, exact.
std::uint64_t progression_divisor_sum(std::uint64_t a, std::uint64_t A, std::uint64_t M);

} // namespace ebc
