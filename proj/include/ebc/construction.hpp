#pragma once

#include "ebc/bigint.hpp"
#include "ebc/crt.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ebc {

// Closed interval [low, high] of candidate primes.
struct PrimeWindow {
    std::uint64_t low = 0;
    std::uint64_t high = 0;
};

struct WitnessParams {
    unsigned k = 3;
    std::variant<PrimeWindow, std::vector<std::uint64_t>> primes = PrimeWindow{};
    // Scan breadth M: m ranges over [0, M).
    std::uint64_t search_breadth = 100000;
    // 0 selects the default policy (k + 64, doubled until the remainder is small).
    std::uint64_t tail_cutoff = 0;
    unsigned threads = 1;
};

// 1 + sum_{0 <= j < k, j != 2} (j + 1) = k(k+1)/2 - 2 for k >= 3.
std::uint64_t required_prime_count(unsigned k);

// Group j holds the j+1 primes whose product is P_j; j = 2 never appears.
using PrimeGroups = std::map<unsigned, std::vector<std::uint64_t>>;

struct PrimeSelection {
    std::uint64_t q0 = 0;
    PrimeGroups groups;
};

// Ascending assignment: q0 first, then groups j = 0, 1, 3, 4, ...
PrimeSelection select_primes(const WitnessParams& params);

struct WitnessSystem {
    unsigned k = 0;
    BigInt q0;
    std::map<unsigned, BigInt> P;
    BigInt A;
    BigInt B;
    BigInt r;
    BigInt s;
    CongruenceSystem congruences;
    CrtSolution solution;
};

// Builds A = q0^3 prod P_j^2, B = A / q0^2, r by CRT and s = (r + 2) / q0^2, verifying
// every defining relation before returning.
WitnessSystem build_witness_system(std::uint64_t q0, const PrimeGroups& groups);

// value = sum_{l=k}^{cutoff} d(n+l) / 2^l; remainder_bound >= sum_{l > cutoff} d(n+l) / 2^l.
struct TailEstimate {
    std::uint64_t n = 0;
    unsigned k = 0;
    std::uint64_t cutoff = 0;
    Dyadic value;
    Dyadic remainder_bound;

    Dyadic upper_bound() const { return value + remainder_bound; }
    friend bool operator==(const TailEstimate&, const TailEstimate&) = default;
};

TailEstimate tail_estimate(std::uint64_t n, unsigned k, std::uint64_t cutoff);

// (2 ceil(sqrt(n + cutoff)) + 3) / 2^cutoff, from d(N) <= 2 sqrt(N).
Dyadic tail_remainder_bound(std::uint64_t n, std::uint64_t cutoff);

// k + 64, doubled until the remainder bound is at most 2^(-k/2) / 4.
std::uint64_t default_tail_cutoff(std::uint64_t n, unsigned k);

// value + remainder_bound <= 2^(-k/2)
bool tail_within_threshold(const TailEstimate& t);

struct WitnessChecks {
    bool residues = false;
    bool s_properties = false;
    bool d6 = false;
    bool divisibility_pattern = false;
    bool tail = false;
    bool digits = false;
    bool valuation = false;

    bool all() const { return residues && s_properties && d6 && divisibility_pattern && tail && digits && valuation; }
    friend bool operator==(const WitnessChecks&, const WitnessChecks&) = default;
};

struct WitnessCertificate {
    unsigned k = 0;
    BigInt q0;
    std::map<unsigned, BigInt> P;
    BigInt A;
    BigInt B;
    BigInt r;
    BigInt s;
    BigInt m;
    BigInt p;
    BigInt n;
    TailEstimate tail;
    WitnessChecks checks;
};

struct SearchOutcome {
    std::optional<WitnessCertificate> certificate;
    std::uint64_t scanned = 0;
    // m with s + mB prime among the scanned ones.
    std::uint64_t prime_hits = 0;
    std::uint64_t tail_rejections = 0;
    std::uint64_t structure_rejections = 0;
    // Earliest prime hit whose structural checks hold; reported when no witness exists.
    std::optional<WitnessCertificate> first_structural_candidate;

    bool found() const { return certificate.has_value(); }
};

// Scans m = 0, 1, ..., M-1; the first m passing every check wins.
SearchOutcome search_witness(const WitnessParams& params, const WitnessSystem& system);

// select_primes, build_witness_system and search_witness in sequence.
SearchOutcome run_witness_pipeline(const WitnessParams& params);

enum class CheckStatus { pass, fail, indeterminate };

const char* to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    std::string relation;
    CheckStatus status = CheckStatus::fail;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    WitnessChecks recomputed;

    bool all_passed() const;
    const CheckResult* find(const std::string& name) const;
};

// Re-derives every relation from the certificate's raw quantities.
VerificationReport verify_certificate(const WitnessCertificate& cert);

// Relation embodied by each named check.
const std::map<std::string, std::string>& witness_relations();

struct ErdosRunParams {
    std::uint64_t t = 2;
    // Group j holds j + 1 distinct primes.
    std::vector<std::vector<std::uint64_t>> groups;
};

struct ErdosTermCheck {
    unsigned j = 0;
    BigInt value; // x + j
    std::uint64_t divisor_count = 0;
    BigInt required_factor; // t^(j+1)
    bool passed = false;
};

struct ErdosRunResult {
    BigInt x;
    BigInt modulus;
    CongruenceSystem system;
    std::vector<ErdosTermCheck> checks;

    bool all_passed() const;
};

// Solves x + j = P_j^(t-1) (mod P_j^t) and checks t^(j+1) | d(x + j); x is the least positive solution.
ErdosRunResult erdos_zero_run(const ErdosRunParams& params);

} // namespace ebc
