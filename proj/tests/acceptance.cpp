// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include "ebc/construction.hpp"
#include "ebc/crt.hpp"
#include "ebc/digits.hpp"
#include "ebc/divisor.hpp"
#include "ebc/errors.hpp"
#include "ebc/lemmas.hpp"
#include "ebc/scanner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>

using namespace ebc;
using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kGolden = "1001101101010000010111111001111001000011111100100010";

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) {
        o.pass = false;
        o.detail += "; runtime limit " + std::to_string(limit_s) + " s exceeded";
    }
    if (!o.pass) ++failures;
    std::printf("%s  %2d  %-28s %9.3f s  %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.c_str());
    std::fflush(stdout);
}

BitSequence slice(const BitSequence& b, std::uint64_t from, std::uint64_t len) {
    return {b.begin() + static_cast<std::ptrdiff_t>(from), b.begin() + static_cast<std::ptrdiff_t>(from + len)};
}

std::uint64_t enumerate_divisors(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t i = 1; i <= n; ++i) c += n % i == 0;
    return c;
}

WitnessParams witness_params(std::uint64_t low, std::uint64_t high, std::uint64_t M) {
    WitnessParams p;
    p.k = 3;
    p.primes = PrimeWindow{low, high};
    p.search_breadth = M;
    return p;
}

std::string no_witness_reason(const SearchOutcome& o) {
    std::string s = "no witness among m < " + std::to_string(o.scanned) + " (" + std::to_string(o.prime_hits) +
                    " prime hits, " + std::to_string(o.tail_rejections) + " rejected by the tail, " +
                    std::to_string(o.structure_rejections) + " by structure)";
    if (o.first_structural_candidate) {
        const auto rep = verify_certificate(*o.first_structural_candidate);
        s += "; first structural candidate n=" + to_decimal(o.first_structural_candidate->n) + " fails";
        for (const auto& c : rep.checks)
            if (c.status != CheckStatus::pass) s += " " + c.name;
        s += " (tail " + std::to_string(o.first_structural_candidate->tail.value.to_double()) + ")";
    }
    s += "; unattainable at k=3: d(n+l) >= 2 forces T >= 2^(2-k) = 1/2 > 2^(-3/2)";
    return s;
}

} // namespace

int main() {
    criterion(1, "golden digits", 1.0, [] {
        const auto a = expand_naive(52);
        const auto b = expand_sieve(52);
        const bool ok = to_ascii(a.bits) == kGolden && to_ascii(b.bits) == kGolden && a.integer_part == 1 &&
                        b.integer_part == 1 && a.certified && b.certified;
        return Outcome{ok, "naive " + to_ascii(a.bits) + ", sieve " + to_ascii(b.bits)};
    });

    criterion(2, "naive = sieve at scale", 30.0, [] {
        std::string d;
        bool ok = true;
        for (std::uint64_t n : {64, 1024, 16384}) {
            const bool eq = expand_naive(n).bits == expand_sieve(n).bits;
            ok = ok && eq;
            d += "N=" + std::to_string(n) + (eq ? " equal " : " DIFFER ");
        }
        return Outcome{ok, d};
    });

    criterion(3, "window extraction", 30.0, [] {
        const auto ref = expand_sieve(16384).bits;
        std::mt19937_64 rng(2024);
        int agree = 0;
        for (int i = 0; i < 100; ++i) {
            const std::uint64_t width = draw_uniform(rng, 1, 64);
            const std::uint64_t pos = draw_uniform(rng, 1, 16384 - width + 1);
            agree += digit_window(pos, width) == slice(ref, pos - 1, width);
        }
        return Outcome{agree == 100, std::to_string(agree) + "/100 seeded slices agree"};
    });

    criterion(4, "sieve expansion at 10^7", 600.0, [] {
        const auto t0 = Clock::now();
        const auto big = expand_sieve(10000000);
        const double big_s = std::chrono::duration<double>(Clock::now() - t0).count();
        const auto small = expand_sieve(1000000);
        const bool prefix = std::equal(small.bits.begin(), small.bits.end(), big.bits.begin());
        bool windows = true;
        for (std::uint64_t pos : {4999937ULL, 9999900ULL})
            windows = windows && digit_window(pos, 64) == slice(big.bits, pos - 1, 64);
        return Outcome{big.certified && prefix && windows && big.bits.size() == 10000000,
                       "10^7 bits in " + std::to_string(big_s) + " s, prefix-consistent with 10^6: " +
                           (prefix ? "yes" : "no") + ", deep windows " + (windows ? "agree" : "DIFFER")};
    });

    criterion(5, "end-to-end witness k=3", 600.0, [] {
        const auto o = run_witness_pipeline(witness_params(5, 20, 1000000));
        if (!o.found()) return Outcome{false, no_witness_reason(o)};
        const auto& c = *o.certificate;
        const auto rep = verify_certificate(c);
        const auto n = to_u64(c.n);
        bool ok = rep.all_passed() && to_ascii(digit_window(n, 2)) == "11" &&
                  locate_in_top_quarter(fractional_part_enclosure(n, 64)) == Membership::inside;
        const auto m = to_u64(c.m);
        const auto rescan = run_witness_pipeline(witness_params(5, 20, m));
        ok = ok && !rescan.found();
        return Outcome{ok, "m=" + std::to_string(m) + " n=" + to_decimal(c.n)};
    });

    criterion(6, "growing windows", 0.0, [] {
        const std::pair<std::uint64_t, std::uint64_t> windows[] = {{5, 20}, {7, 30}, {11, 40}};
        std::string d;
        BigInt last = -1;
        bool ok = true;
        for (auto [lo, hi] : windows) {
            const auto o = run_witness_pipeline(witness_params(lo, hi, 100000));
            d += "[" + std::to_string(lo) + "," + std::to_string(hi) + "]: ";
            if (!o.found()) {
                ok = false;
                d += "no witness among " + std::to_string(o.prime_hits) + " prime hits; ";
                continue;
            }
            const auto& c = *o.certificate;
            ok = ok && c.n > last && c.n + 2 == c.q0 * c.q0 * c.p && c.n + 2 >= 2 * c.q0 * c.q0;
            last = c.n;
            d += "n=" + to_decimal(c.n) + "; ";
        }
        if (!ok) d += "tail condition unattainable at k=3 (T >= 1/2)";
        return Outcome{ok, d};
    });

    criterion(7, "divisor sums in progressions", 0.0, [] {
        const auto instances = generate_lemma2_instances(7, 1000, 1000000);
        int passed = 0, log_form = 0;
        for (const auto& in : instances) {
            const auto r = check_lemma2(in);
            passed += r.passed();
            log_form += r.log_form.verdict == Verdict::pass;
        }
        return Outcome{passed == 1000 && instances.size() == 1000,
                       std::to_string(passed) + "/1000 pass, " + std::to_string(log_form) +
                           " with the log form applicable and holding"};
    });

    criterion(8, "tail decomposition", 0.0, [] {
        int hyp = 0, ok_count = 0;
        const auto insts = generate_lemma3_instances(5, 12);
        for (const auto& in : insts) {
            const auto r = check_lemma3_decomposition(in);
            hyp += r.hypotheses_hold;
            ok_count += r.partition_exact && r.markov_holds && r.hypotheses_hold && r.s1_bound.verdict == Verdict::pass;
        }
        int markov = 0;
        const auto collections = generate_tail_collections(11, 500);
        for (const auto& c : collections)
            for (unsigned k : {1u, 2u, 3u, 6u}) markov += check_markov(c, k).holds;
        const auto sys = build_witness_system(5, {{0, {7}}, {1, {11, 13}}});
        const auto rows = check_lemma3_decomposition(
            Lemma3Instance{to_u64(sys.r), to_u64(sys.A), 200, 3, 12, 80, std::nullopt});
        const bool ok = ok_count == static_cast<int>(insts.size()) && markov == 2000 && rows.partition_exact &&
                        rows.markov_holds;
        return Outcome{ok, std::to_string(ok_count) + "/" + std::to_string(insts.size()) +
                               " hypothesis instances with partition, Markov and S1 bound; " +
                               std::to_string(markov) + "/2000 Markov collections; witness rows partition " +
                               (rows.partition_exact ? "exact" : "INEXACT")};
    });

    criterion(9, "zero-run construction", 0.0, [] {
        const auto r = erdos_zero_run({2, {{3}, {5, 7}}});
        std::uint64_t brute = 0;
        for (std::uint64_t x = 1; x <= 11025 && !brute; ++x)
            if (x % 9 == 3 && (x + 1) % 1225 == 35) brute = x;
        const auto d0 = enumerate_divisors(6159), d1 = enumerate_divisors(6160);
        const bool ok = r.x == 6159 && brute == 6159 && r.all_passed() && d0 % 2 == 0 && d1 % 4 == 0;
        return Outcome{ok, "x=" + to_decimal(r.x) + ", scan " + std::to_string(brute) + ", d(6159)=" +
                               std::to_string(d0) + ", d(6160)=" + std::to_string(d1)};
    });

    criterion(10, "CRT vs exhaustive scan", 0.0, [] {
        std::mt19937_64 rng(10);
        int done = 0, agree = 0;
        while (done < 500) {
            const std::size_t count = 1 + rng() % 4;
            std::vector<std::pair<std::uint64_t, std::uint64_t>> cs;
            std::uint64_t product = 1;
            for (std::size_t i = 0; i < count; ++i) {
                const std::uint64_t m = 2 + rng() % 80;
                const bool coprime =
                    std::all_of(cs.begin(), cs.end(), [&](const auto& c) { return std::gcd(c.second, m) == 1; });
                if (!coprime || product * m > 1000000) continue;
                product *= m;
                cs.push_back({rng() % m, m});
            }
            CongruenceSystem sys;
            for (auto [r, m] : cs) sys.add(from_u64(r), from_u64(m));
            const auto sol = crt_solve(sys);
            std::uint64_t x = 0;
            while (!std::all_of(cs.begin(), cs.end(), [&](const auto& c) { return x % c.second == c.first; })) ++x;
            agree += sol.residue == x && sol.modulus == product;
            ++done;
        }
        return Outcome{agree == 500, std::to_string(agree) + "/500 systems agree"};
    });

    criterion(11, "block scanner", 0.0, [] {
        const auto bits = parse_ascii(kGolden);
        const auto r = scan_block(bits, parse_ascii("11"));
        std::uint64_t brute = 0, first = 0;
        for (std::size_t i = 0; i + 1 < bits.size(); ++i)
            if (bits[i] && bits[i + 1]) {
                ++brute;
                if (!first) first = i + 1;
            }
        bool totals = true;
        for (unsigned L = 1; L <= 8; ++L) totals = totals && block_frequency_table(bits, L).total() == 52 - L + 1;
        const bool ok = r.count == brute && !r.positions.empty() && r.positions.front() == 4 && first == 4 && totals;
        return Outcome{ok, "count " + std::to_string(r.count) + " (brute " + std::to_string(brute) + "), first at " +
                               std::to_string(r.positions.empty() ? 0 : r.positions.front()) +
                               ", frequency totals " + (totals ? "exact" : "WRONG")};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
