#pragma once

#include "ebc/bigint.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ebc {

enum class Verdict { pass, fail, indeterminate, not_applicable };

const char* to_string(Verdict v);

// Exact rational enclosure [lower, upper].
struct RationalBounds {
    mpq_class lower;
    mpq_class upper;
};

struct InequalityCheck {
    std::string name;
    std::string relation;
    Verdict verdict = Verdict::indeterminate;
    RationalBounds rhs; // certified enclosure of the right-hand side
    std::string note;
};

struct Lemma2Instance {
    std::uint64_t a = 1;
    std::uint64_t A = 1;
    std::uint64_t M = 1;
    mpq_class Y = 3;
};

struct Lemma2Report {
    Lemma2Instance instance;
    std::uint64_t lhs = 0; // sum_{m<M} d(a + mA)
    InequalityCheck general;    // lhs <= 2M(1 + log(Y)/2) + 2 sqrt(Y)
    InequalityCheck log_form;   // lhs <= 5 M log Y, when sqrt(Y) <= M log Y

    bool passed() const;
};

// Throws PreconditionError when gcd(a, A) != 1, a + (M-1)A > Y or Y < 3.
Lemma2Report check_lemma2(const Lemma2Instance& instance);

// Column-order sums S1 (l < L) and S2 (L <= l <= cutoff) against row-order sum of T values.
struct Lemma3Report {
    unsigned k = 0;
    std::uint64_t L = 0;
    std::uint64_t cutoff = 0;
    std::uint64_t rows = 0;
    Dyadic S1;
    Dyadic S2;
    Dyadic sumT;            // sum of truncated T values
    Dyadic joint_remainder; // sum of per-row remainder bounds
    bool partition_exact = false; // S1 + S2 = sumT
    bool bound_covers_sum = false; // S1 + S2 + joint_remainder >= sumT
    std::uint64_t exceed_count = 0;          // rows with truncated T > 2^(-k/2)
    std::uint64_t possibly_exceeding = 0;    // rows decided only up to the remainder
    bool markov_holds = false; // exceed_count * 2^(-k/2) <= sumT, exact
    std::optional<mpq_class> Y;
    bool hypotheses_hold = false;
    std::string hypotheses_note;
    InequalityCheck s1_bound; // S1 <= 10 M log(Y) 2^(-k)

    bool passed() const;
};

struct Lemma3Instance {
    std::uint64_t r = 0;
    std::uint64_t A = 1;
    std::uint64_t M = 1;
    unsigned k = 1;
    std::uint64_t L = 2;
    std::uint64_t cutoff = 0;    // 0 selects L + 64
    std::optional<mpq_class> Y;  // defaults to r + (L-1) + (M-1)A
};

Lemma3Report check_lemma3_decomposition(const Lemma3Instance& instance);
// Rows n_m taken from an explicit list; the S1 bound is not applicable.
Lemma3Report check_lemma3_decomposition(const std::vector<std::uint64_t>& ns, unsigned k, std::uint64_t L,
                                         std::uint64_t cutoff);

struct MarkovReport {
    unsigned k = 0;
    std::uint64_t exceed_count = 0; // values > 2^(-k/2)
    Dyadic sum;
    bool holds = false; // exceed_count * 2^(-k/2) <= sum
};

// Values must be nonnegative.
MarkovReport check_markov(const std::vector<Dyadic>& values, unsigned k);

struct AgpReport {
    std::uint64_t X = 0;
    std::uint64_t d = 0;
    std::uint64_t a = 0;
    std::uint64_t count = 0;
    std::optional<std::uint64_t> independent_count; // Miller-Rabin walk along the progression
    std::uint64_t phi_d = 0;
    RationalBounds bound; // X / (2 phi(d) log X)
    Verdict verdict = Verdict::indeterminate;
    std::string note;

    bool satisfied() const { return verdict == Verdict::pass; }
};

// Throws PreconditionError when gcd(a, d) != 1 or X < 3.
AgpReport check_agp_progression(std::uint64_t X, std::uint64_t d, std::uint64_t a);

// Uniform draw in [lo, hi] by rejection; identical on every platform for a given engine state.
std::uint64_t draw_uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

std::vector<Lemma2Instance> generate_lemma2_instances(std::uint64_t seed, std::size_t count, std::uint64_t y_max);
// Decomposition instances meeting every hypothesis: A is a product of primes in (L, 2L).
std::vector<Lemma3Instance> generate_lemma3_instances(std::uint64_t seed, std::size_t count);
std::vector<std::vector<Dyadic>> generate_tail_collections(std::uint64_t seed, std::size_t count);

// Line-delimited records.
std::string to_json_line(const Lemma2Report& r);
std::string to_json_line(const Lemma3Report& r);
std::string to_json_line(const AgpReport& r);
std::string lemma2_tsv_header();
std::string lemma3_tsv_header();
std::string agp_tsv_header();
std::string to_tsv_line(const Lemma2Report& r);
std::string to_tsv_line(const Lemma3Report& r);
std::string to_tsv_line(const AgpReport& r);

// "p/q", integer, or finite decimal; result must be nonnegative.
mpq_class parse_rational(std::string_view text);
std::string rational_to_string(const mpq_class& q);

} // namespace ebc
