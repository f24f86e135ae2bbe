#include "ebc/certificate_io.hpp"
#include "ebc/construction.hpp"
#include "ebc/digits.hpp"
#include "ebc/divisor.hpp"
#include "ebc/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace ebc;

namespace {

WitnessParams desk_params(std::uint64_t M) {
    WitnessParams p;
    p.k = 3;
    p.primes = PrimeWindow{5, 20};
    p.search_breadth = M;
    return p;
}

const WitnessSystem& desk_system() {
    static const WitnessSystem sys = build_witness_system(5, {{0, {7}}, {1, {11, 13}}});
    return sys;
}

const SearchOutcome& desk_outcome() {
    static const SearchOutcome o = search_witness(desk_params(10000), desk_system());
    return o;
}

} // namespace

TEST_CASE("required prime count") {
    CHECK(required_prime_count(3) == 4);
    CHECK(required_prime_count(4) == 8);
    for (unsigned k = 3; k < 20; ++k) CHECK(required_prime_count(k) == k * (k + 1) / 2 - 2);
}

TEST_CASE("select_primes assigns ascending") {
    const auto s = select_primes(desk_params(1));
    CHECK(s.q0 == 5);
    CHECK(s.groups.at(0) == std::vector<std::uint64_t>{7});
    CHECK(s.groups.at(1) == std::vector<std::uint64_t>{11, 13});
    CHECK(s.groups.size() == 2);

    WitnessParams p4;
    p4.k = 4;
    p4.primes = PrimeWindow{5, 40};
    const auto s4 = select_primes(p4);
    CHECK(s4.q0 == 5);
    CHECK(s4.groups.at(0) == std::vector<std::uint64_t>{7});
    CHECK(s4.groups.at(1) == std::vector<std::uint64_t>{11, 13});
    CHECK(s4.groups.at(3) == std::vector<std::uint64_t>{17, 19, 23, 29});
    CHECK(s4.groups.count(2) == 0);
}

TEST_CASE("select_primes rejects a small window naming the count") {
    WitnessParams p = desk_params(1);
    p.primes = PrimeWindow{5, 11};
    try {
        select_primes(p);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("needs 4") != std::string::npos);
        CHECK(std::string(e.what()).find("has 3") != std::string::npos);
    }
}

TEST_CASE("select_primes validates explicit lists") {
    WitnessParams p = desk_params(1);
    p.primes = std::vector<std::uint64_t>{13, 5, 11, 7};
    const auto s = select_primes(p);
    CHECK(s.q0 == 5);
    CHECK(s.groups.at(1) == std::vector<std::uint64_t>{11, 13});
    p.primes = std::vector<std::uint64_t>{5, 7, 11, 15};
    CHECK_THROWS_AS(select_primes(p), PreconditionError);
    p.primes = std::vector<std::uint64_t>{5, 7, 11, 11};
    CHECK_THROWS_AS(select_primes(p), PreconditionError);
    p.k = 2;
    CHECK_THROWS_AS(select_primes(p), PreconditionError);
}

TEST_CASE("witness system quantities") {
    const auto& sys = desk_system();
    CHECK(sys.k == 3);
    CHECK(sys.P.at(0) == 7);
    CHECK(sys.P.at(1) == 143);
    CHECK(sys.A == oracle::kA);
    CHECK(sys.B == oracle::kB);
    CHECK(sys.r == oracle::kR);
    CHECK(sys.s == oracle::kS);
    const std::uint64_t r = oracle::kR;
    CHECK(r % 125 == 23);
    CHECK(r % 49 == 7);
    CHECK(r % 20449 == 142);
    CHECK(oracle::kS * 25 == r + 2);
    CHECK(oracle::kS % 5 == 1);
    CHECK(std::gcd(oracle::kS, oracle::kB) == 1);
    CHECK(sys.congruences.size() == 3);
    CHECK(satisfies(sys.congruences, sys.r));
}

TEST_CASE("witness system for k = 4 meets its relations") {
    const auto sys = build_witness_system(5, {{0, {7}}, {1, {11, 13}}, {3, {17, 19, 23, 29}}});
    CHECK(sys.k == 4);
    const BigInt P3 = BigInt(17) * 19 * 23 * 29;
    CHECK(sys.A == BigInt(125) * 49 * 143 * 143 * P3 * P3);
    CHECK((sys.r - 23) % 125 == 0);
    for (const auto& [j, Pj] : sys.P) CHECK((sys.r - (Pj - j)) % (Pj * Pj) == 0);
    CHECK(sys.s * 25 == sys.r + 2);
}

TEST_CASE("build_witness_system rejects bad groups") {
    CHECK_THROWS_AS(build_witness_system(5, {{0, {7}}, {1, {7, 13}}}), PreconditionError);
    CHECK_THROWS_AS(build_witness_system(5, {{0, {5}}, {1, {11, 13}}}), PreconditionError);
    CHECK_THROWS_AS(build_witness_system(5, {{0, {7}}, {1, {11}}}), PreconditionError);
    CHECK_THROWS_AS(build_witness_system(5, {{0, {7}}, {1, {11, 13}}, {2, {17, 19, 23}}}), PreconditionError);
    CHECK_THROWS_AS(build_witness_system(6, {{0, {7}}, {1, {11, 13}}}), PreconditionError);
    CHECK_THROWS_AS(build_witness_system(5, {{0, {7}}, {1, {11, 15}}}), PreconditionError);
}

TEST_CASE("tail_estimate examples") {
    const auto t = tail_estimate(1, 3, 10);
    // d(4..11) = 3 2 4 2 4 3 4 2
    CHECK(t.value == Dyadic(726, 10));
    Dyadic term_by_term;
    for (std::uint64_t l = 3; l <= 10; ++l) term_by_term += Dyadic(from_u64(divisor_count(1 + l)), l);
    CHECK(t.value == term_by_term);
    CHECK(t.remainder_bound.sign() > 0);
    CHECK(tail_remainder_bound(1, 20) < tail_remainder_bound(1, 10));

    const auto single = tail_estimate(100, 5, 5);
    CHECK(single.value == Dyadic(from_u64(divisor_count(105)), 5));
    CHECK_THROWS_AS(tail_estimate(100, 5, 4), PreconditionError);
    CHECK_THROWS_AS(tail_estimate(0, 3, 10), PreconditionError);
}

TEST_CASE("tail remainder bound covers the omitted terms") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 40; ++i) {
        const std::uint64_t n = 1 + rng() % 1000000000;
        const std::uint64_t c = 3 + rng() % 30;
        const auto shortc = tail_estimate(n, 3, c);
        const auto longc = tail_estimate(n, 3, c + 120);
        CHECK(longc.value - shortc.value <= shortc.remainder_bound);
        CHECK(longc.upper_bound() <= shortc.upper_bound());
    }
}

TEST_CASE("default tail cutoff") {
    CHECK(default_tail_cutoff(oracle::kFirstHitN, 3) == 67);
    for (std::uint64_t n : {1ULL, 1000ULL, 1ULL << 40, 1ULL << 61}) {
        const auto c = default_tail_cutoff(n, 3);
        CHECK(compare_with_inverse_sqrt_pow2(tail_remainder_bound(n, c).times(4), 3) <= 0);
    }
}

TEST_CASE("tails from k are at least 2^(2-k) up to truncation") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t n = 1 + rng() % 4000000000ULL;
        const unsigned k = 3 + static_cast<unsigned>(rng() % 4);
        const std::uint64_t c = k + 60;
        const auto t = tail_estimate(n, k, c);
        CHECK(t.value >= Dyadic(1, k - 2) - Dyadic(1, c - 1));
        if (k <= 3) CHECK_FALSE(tail_within_threshold(t));
    }
}

TEST_CASE("search over the desk system") {
    const auto& o = desk_outcome();
    CHECK_FALSE(o.found());
    CHECK(o.scanned == 10000);
    std::uint64_t hits = 0;
    for (std::uint64_t m = 0; m < 10000; ++m) hits += is_prime(oracle::kS + m * oracle::kB);
    CHECK(o.prime_hits == hits);
    CHECK(o.tail_rejections + o.structure_rejections == hits);
    REQUIRE(o.first_structural_candidate.has_value());
    const auto& c = *o.first_structural_candidate;
    CHECK(c.m == oracle::kFirstHitM);
    CHECK(c.n == oracle::kFirstHitN);
    CHECK(c.p == oracle::kFirstHitP);
    CHECK(c.checks.residues);
    CHECK(c.checks.s_properties);
    CHECK(c.checks.d6);
    CHECK(c.checks.valuation);
    CHECK(c.checks.divisibility_pattern);
    CHECK_FALSE(c.checks.tail);
    CHECK_FALSE(c.checks.digits);
    CHECK(c.n + 2 >= 2 * c.q0 * c.q0);
}

TEST_CASE("search prime hits below 200") {
    const auto o = search_witness(desk_params(200), desk_system());
    CHECK(o.prime_hits == oracle::kPrimeHitsBelow200);
}

TEST_CASE("brute-force rescan confirms no acceptance was missed") {
    const auto& sys = desk_system();
    const std::uint64_t A = oracle::kA, B = oracle::kB, r = oracle::kR, s = oracle::kS;
    for (std::uint64_t m = 0; m < 3000; ++m) {
        const std::uint64_t p = s + m * B, n = r + m * A;
        if (!is_prime(p)) continue;
        const bool structure = divisor_count(n + 2) == 6 && valuation(n + 2, 5) == 2 && divisor_count(n) % 2 == 0 &&
                               divisor_count(n + 1) % 4 == 0;
        const bool tail = tail_within_threshold(tail_estimate(n, 3, default_tail_cutoff(n, 3)));
        CHECK_FALSE((structure && tail));
    }
    (void)sys;
}

TEST_CASE("empty scan") {
    const auto o = search_witness(desk_params(0), desk_system());
    CHECK_FALSE(o.found());
    CHECK(o.scanned == 0);
    CHECK(o.prime_hits == 0);
    CHECK_FALSE(o.first_structural_candidate.has_value());
}

TEST_CASE("search is identical across thread counts") {
    auto p = desk_params(50000);
    p.threads = 3;
    const auto threaded = search_witness(p, desk_system());
    p.threads = 1;
    const auto serial = search_witness(p, desk_system());
    CHECK(threaded.prime_hits == serial.prime_hits);
    CHECK(threaded.scanned == serial.scanned);
    CHECK(threaded.tail_rejections == serial.tail_rejections);
    REQUIRE(threaded.first_structural_candidate.has_value());
    CHECK(certificate_to_json(*threaded.first_structural_candidate) ==
          certificate_to_json(*serial.first_structural_candidate));
}

TEST_CASE("search rejects out-of-range breadth and mismatched k") {
    CHECK_THROWS_AS(search_witness(desk_params(std::uint64_t{1} << 40), desk_system()), ResourceError);
    auto p = desk_params(10);
    p.k = 4;
    CHECK_THROWS_AS(search_witness(p, desk_system()), PreconditionError);
}

TEST_CASE("pipeline matches the staged calls") {
    const auto o = run_witness_pipeline(desk_params(500));
    CHECK(o.prime_hits == search_witness(desk_params(500), desk_system()).prime_hits);
}

TEST_CASE("digit claim at n = 4 in isolation") {
    CHECK(to_ascii(digit_window(4, 2)) == "11");
    CHECK(locate_in_top_quarter(fractional_part_enclosure(4, 8)) == Membership::inside);
}

TEST_CASE("verification of the structural candidate") {
    const auto& c = *desk_outcome().first_structural_candidate;
    const auto rep = verify_certificate(c);
    CHECK_FALSE(rep.all_passed());
    for (const char* name : {"residues", "s_properties", "d6", "valuation", "divisibility_pattern", "recorded_flags"}) {
        REQUIRE(rep.find(name) != nullptr);
        CHECK_MESSAGE(rep.find(name)->status == CheckStatus::pass, name);
    }
    CHECK(rep.find("tail")->status == CheckStatus::fail);
    CHECK(rep.find("digits_enclosure")->status == CheckStatus::fail);
    CHECK(rep.find("digits_window")->status == CheckStatus::fail);
    CHECK(rep.recomputed == c.checks);
}

TEST_CASE("tampering is detected") {
    const auto& base = *desk_outcome().first_structural_candidate;
    for (int flag = 0; flag < 7; ++flag) {
        auto c = base;
        bool* flags[] = {&c.checks.residues, &c.checks.s_properties, &c.checks.d6, &c.checks.divisibility_pattern,
                         &c.checks.tail, &c.checks.digits, &c.checks.valuation};
        *flags[flag] = !*flags[flag];
        CHECK(verify_certificate(c).find("recorded_flags")->status == CheckStatus::fail);
    }
    {
        auto c = base;
        c.A += 1;
        const auto rep = verify_certificate(c);
        CHECK(rep.find("residues")->status == CheckStatus::fail);
        CHECK(rep.find("residues")->relation.find("A = q0^3") != std::string::npos);
    }
    {
        auto c = base;
        c.r += c.q0 * c.q0 * c.q0;
        CHECK(verify_certificate(c).find("residues")->status == CheckStatus::fail);
    }
    {
        auto c = base;
        c.s += 1;
        CHECK(verify_certificate(c).find("s_properties")->status == CheckStatus::fail);
    }
    {
        auto c = base;
        c.n += 1;
        CHECK(verify_certificate(c).find("d6")->status == CheckStatus::fail);
    }
    {
        auto c = base;
        c.tail.value = c.tail.value - Dyadic(1, 2);
        CHECK(verify_certificate(c).find("tail")->status == CheckStatus::fail);
    }
    {
        auto c = base;
        c.P[1] = 11 * 17;
        CHECK(verify_certificate(c).find("residues")->status == CheckStatus::fail);
    }
}

TEST_CASE("certificate JSON round trip is exact") {
    const auto& c = *desk_outcome().first_structural_candidate;
    const auto text = certificate_to_json(c);
    const auto back = certificate_from_json(text);
    CHECK(certificate_to_json(back) == text);
    CHECK(back.n == c.n);
    CHECK(back.tail == c.tail);
    CHECK(back.checks == c.checks);
    CHECK(text.find("\"A\": \"125250125\"") != std::string::npos);
    CHECK(text.find("\"paper_refs\"") != std::string::npos);
    CHECK(verify_certificate(back).recomputed == verify_certificate(c).recomputed);
}

TEST_CASE("certificate JSON rejects malformed input") {
    CHECK_THROWS_AS(certificate_from_json("{"), PreconditionError);
    CHECK_THROWS_AS(certificate_from_json("[]"), PreconditionError);
    auto text = certificate_to_json(*desk_outcome().first_structural_candidate);
    auto missing = text;
    missing.replace(missing.find("\"B\""), 3, "\"Z\"");
    CHECK_THROWS_AS(certificate_from_json(missing), PreconditionError);
    auto bad = text;
    bad.replace(bad.find("\"125250125\""), 11, "\"12x250125\"");
    CHECK_THROWS_AS(certificate_from_json(bad), PreconditionError);
}

TEST_CASE("erdos zero run examples") {
    const auto a = erdos_zero_run({2, {{3}}});
    CHECK(a.x == 3);
    CHECK(a.modulus == 9);
    CHECK(a.all_passed());
    const auto b = erdos_zero_run({3, {{5}}});
    CHECK(b.x == 25);
    CHECK(b.modulus == 125);
    CHECK(b.checks[0].divisor_count == 3);
    const auto c = erdos_zero_run({2, {{3}, {5, 7}}});
    CHECK(c.x == 6159);
    CHECK(c.modulus == 11025);
    CHECK(c.checks[0].divisor_count == 4);
    CHECK(c.checks[1].divisor_count == 40);
    CHECK(c.all_passed());
    CHECK_THROWS_AS(erdos_zero_run({2, {{3}, {3, 7}}}), PreconditionError);
    CHECK_THROWS_AS(erdos_zero_run({2, {{3}, {5}}}), PreconditionError);
    CHECK_THROWS_AS(erdos_zero_run({1, {{3}}}), PreconditionError);
}

TEST_CASE("erdos zero runs hold on random prime assignments") {
    std::mt19937_64 rng(50);
    const auto primes = primes_in_range(2, 60);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t t = 2 + rng() % 3;
        const std::size_t groups = 1 + rng() % 3;
        auto pool = primes;
        std::shuffle(pool.begin(), pool.end(), rng);
        ErdosRunParams params{t, {}};
        std::size_t next = 0;
        for (std::size_t j = 0; j < groups; ++j) {
            params.groups.emplace_back(pool.begin() + static_cast<std::ptrdiff_t>(next),
                                       pool.begin() + static_cast<std::ptrdiff_t>(next + j + 1));
            next += j + 1;
        }
        ErdosRunResult res;
        try {
            res = erdos_zero_run(params);
        } catch (const ResourceError&) {
            continue;
        }
        for (const auto& c : res.checks) {
            BigInt Pj = 1;
            for (auto q : params.groups[c.j]) Pj *= from_u64(q);
            BigInt low = 1, high;
            for (std::uint64_t i = 1; i < t; ++i) low *= Pj;
            high = low * Pj;
            CHECK((c.value - low) % high == 0);
            CHECK(c.passed);
            if (const auto v = try_u64(c.value)) {
                std::uint64_t factor = 1;
                for (unsigned i = 0; i <= c.j; ++i) factor *= t;
                CHECK(divisor_count(*v) % factor == 0);
            }
        }
        CHECK(res.x > 0);
        CHECK(res.x <= res.modulus);
    }
}
