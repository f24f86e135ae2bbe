#include "ebc/divisor.hpp"
#include "ebc/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <type_traits>
#include <random>

using namespace ebc;

TEST_CASE("factorize small values") {
    CHECK(factorize(1).empty());
    CHECK(factorize(12) == FactorMap({{2, 2}, {3, 1}}));
    CHECK(factorize(45) == FactorMap({{3, 2}, {5, 1}}));
    CHECK(factorize(1797855775) == FactorMap({{5, 2}, {71914231, 1}}));
    CHECK_THROWS_AS(factorize(0), PreconditionError);
}

TEST_CASE("factorize large semiprimes and prime powers") {
    const std::uint64_t p = 4294967291ULL, q = 4294967279ULL;
    CHECK(factorize(p * q) == FactorMap({{q, 1}, {p, 1}}));
    CHECK(factorize(std::uint64_t{1} << 63) == FactorMap({{2, 63}}));
    CHECK(factorize(18446744073709551557ULL) == FactorMap({{18446744073709551557ULL, 1}}));
}

TEST_CASE("factor maps multiply back and hold primes") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t n = rng() >> (rng() % 40);
        if (n == 0) continue;
        const auto f = factorize(n);
        std::uint64_t product = 1;
        std::uint64_t prev = 0;
        for (const auto& e : f.entries()) {
            CHECK(e.prime > prev);
            CHECK(is_prime(e.prime));
            CHECK(e.exponent >= 1);
            for (std::uint32_t k = 0; k < e.exponent; ++k) product *= e.prime;
            prev = e.prime;
        }
        CHECK(product == n);
    }
}

TEST_CASE("is_prime against a sieve and strong pseudoprimes") {
    const auto d = oracle::enumerate_divisor_counts(100000);
    for (std::uint64_t n = 0; n <= 100000; ++n) CHECK(is_prime(n) == (n >= 2 && d[n] == 2));
    // Strong pseudoprimes to several small bases.
    for (std::uint64_t n : {2047ULL, 1373653ULL, 25326001ULL, 3215031751ULL, 2152302898747ULL, 3474749660383ULL,
                            341550071728321ULL, 3825123056546413051ULL})
        CHECK_FALSE(is_prime(n));
    CHECK(is_prime(2305843009213693951ULL));
}

TEST_CASE("divisor_count examples") {
    CHECK(divisor_count(1) == 1);
    CHECK(divisor_count(12) == 6);
    CHECK(divisor_count(45) == 6);
    CHECK(divisor_count(6160) == 40);
    CHECK_THROWS_AS(divisor_count(0), PreconditionError);
}

TEST_CASE("divisor_count matches enumeration and the pairing bound up to 10^6") {
    const std::uint64_t N = 1000000;
    const auto d = oracle::enumerate_divisor_counts(N);
    for (std::uint64_t n = 1; n <= N; ++n) {
        const auto c = divisor_count(n);
        if (c != d[n]) FAIL("d(" << n << ") = " << c << ", enumeration gives " << d[n]);
        if (c * c > 4 * n) FAIL("d(" << n << ")^2 > 4n");
    }
}

TEST_CASE("divisor_count is multiplicative on coprime pairs") {
    std::mt19937_64 rng(11);
    int checked = 0;
    while (checked < 5000) {
        const std::uint64_t m = 1 + rng() % 10000, n = 1 + rng() % 10000;
        if (std::gcd(m, n) != 1) continue;
        CHECK(divisor_count(m * n) == divisor_count(m) * divisor_count(n));
        ++checked;
    }
}

TEST_CASE("valuation") {
    CHECK(valuation(12, 7) == 0);
    CHECK(valuation(12, 2) == 2);
    CHECK(valuation(45, 3) == 2);
    CHECK(valuation(1797855775, 5) == 2);
    CHECK_THROWS_AS(valuation(12, 4), PreconditionError);
    CHECK_THROWS_AS(valuation(0, 3), PreconditionError);
}

TEST_CASE("euler_totient") {
    CHECK(euler_totient(1) == 1);
    CHECK(euler_totient(3) == 2);
    CHECK(euler_totient(12) == 4);
    CHECK(euler_totient(5010005) == 2882880);
}

TEST_CASE("isqrt and ceil_sqrt") {
    for (std::uint64_t n : {0ULL, 1ULL, 2ULL, 3ULL, 4ULL, 15ULL, 16ULL, 17ULL, 999999999999ULL, 18446744073709551615ULL}) {
        const auto r = isqrt(n);
        CHECK(static_cast<unsigned __int128>(r) * r <= n);
        CHECK(static_cast<unsigned __int128>(r + 1) * (r + 1) > n);
        const auto c = ceil_sqrt(n);
        CHECK(static_cast<unsigned __int128>(c) * c >= n);
        if (c > 0) CHECK(static_cast<unsigned __int128>(c - 1) * (c - 1) < n);
    }
}

TEST_CASE("primes_in_range is a closed interval") {
    CHECK(primes_in_range(5, 20) == std::vector<std::uint64_t>{5, 7, 11, 13, 17, 19});
    CHECK(primes_in_range(5, 11) == std::vector<std::uint64_t>{5, 7, 11});
    CHECK(primes_in_range(24, 28).empty());
}

TEST_CASE("divisor_sieve examples") {
    CHECK(divisor_sieve(1).counts().size() == 2);
    CHECK(divisor_sieve(1)[1] == 1);
    const auto t6 = divisor_sieve(6);
    const std::vector<std::uint16_t> expect{1, 2, 2, 3, 2, 4};
    for (std::uint64_t n = 1; n <= 6; ++n) CHECK(t6[n] == expect[n - 1]);
    CHECK(divisor_sieve(12)[12] == 6);
    CHECK_THROWS_AS(divisor_sieve(0), PreconditionError);
}

TEST_CASE("divisor_sieve agrees with divisor_count at random points") {
    const std::uint64_t limit = 3000000;
    const auto t = divisor_sieve(limit);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t n = 1 + rng() % limit;
        CHECK(t[n] == divisor_count(n));
    }
    const auto primes = primes_through(1000);
    for (auto p : *primes)
        if (p <= 1000) CHECK(t[p] == 2);
}

TEST_CASE("divisor_sieve entries are wide enough") {
    // 735134400 has 1344 divisors; every n below 10^9 has at most that many.
    CHECK(divisor_count(735134400) == 1344);
    using Entry = std::remove_cvref_t<decltype(divisor_sieve(1).counts()[0])>;
    static_assert(std::numeric_limits<Entry>::max() >= 1344);
    const auto t = divisor_sieve(8648640);
    CHECK(t[8648640] == 448);
    CHECK(t[8648640] == divisor_count(8648640));
}

TEST_CASE("divisor_sieve is identical across thread counts") {
    SieveOptions one, four;
    four.threads = 4;
    const auto a = divisor_sieve(1000003, one);
    const auto b = divisor_sieve(1000003, four);
    CHECK(std::ranges::equal(a.counts(), b.counts()));
}

TEST_CASE("divisor_sieve rejects limits beyond the memory budget") {
    SieveOptions opt;
    opt.memory_budget_bytes = 1000;
    try {
        divisor_sieve(10000, opt);
        FAIL("expected ResourceError");
    } catch (const ResourceError& e) {
        CHECK(std::string(e.what()).find("bytes") != std::string::npos);
    }
}

TEST_CASE("progression_divisor_sum examples") {
    CHECK(progression_divisor_sum(5, 7, 1) == 2);
    CHECK(progression_divisor_sum(1, 2, 5) == 10);
    CHECK(progression_divisor_sum(1, 1, 3) == 5);
    CHECK_THROWS_AS(progression_divisor_sum(0, 1, 1), PreconditionError);
    CHECK_THROWS_AS(progression_divisor_sum(1, std::uint64_t{1} << 40, std::uint64_t{1} << 30), ResourceError);
}

TEST_CASE("progression_divisor_sum equals term-by-term summation") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t a = 1 + rng() % 100000;
        const std::uint64_t A = 1 + rng() % (i % 2 ? 10 : 100000);
        const std::uint64_t M = 1 + rng() % 2000;
        std::uint64_t expect = 0;
        for (std::uint64_t m = 0; m < M; ++m) expect += divisor_count(a + m * A);
        CHECK(progression_divisor_sum(a, A, M) == expect);
    }
}
