#include "ebc/construction.hpp"

#include "ebc/digits.hpp"
#include "ebc/divisor.hpp"
#include "ebc/errors.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>

namespace ebc {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

BigInt floor_mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

BigInt power(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

const std::string kResidues = "residues";
const std::string kSProperties = "s_properties";
const std::string kD6 = "d6";
const std::string kValuation = "valuation";
const std::string kDivisibility = "divisibility_pattern";
const std::string kTail = "tail";
const std::string kDigits = "digits";

std::vector<unsigned> group_indices(unsigned k) {
    std::vector<unsigned> js;
    for (unsigned j = 0; j < k; ++j)
        if (j != 2) js.push_back(j);
    return js;
}

// A failed relation is reported as (relation, explanation).
struct Failure {
    std::string relation;
    std::string detail;
};

std::optional<Failure> residue_failure(unsigned k, const BigInt& q0, const std::map<unsigned, BigInt>& P,
                                       const BigInt& A, const BigInt& B, const BigInt& r) {
    std::vector<unsigned> keys;
    for (const auto& [j, _] : P) keys.push_back(j);
    if (k < 3 || keys != group_indices(k)) return Failure{"j in [0, k), j != 2", "P_j indices do not match k"};
    BigInt product = power(q0, 3);
    for (const auto& [j, Pj] : P) product *= Pj * Pj;
    if (A != product) return Failure{"A = q0^3 prod P_j^2", "A differs from q0^3 prod P_j^2"};
    if (B * q0 * q0 != A) return Failure{"B = A / q0^2", "B differs from A / q0^2"};
    if (r < 0 || r >= A) return Failure{"0 <= r < A", "r is not reduced modulo A"};
    const BigInt q0sq = q0 * q0;
    if (floor_mod(r - (q0sq - 2), q0sq * q0) != 0) return Failure{"r = q0^2 - 2 (mod q0^3)", "r mod q0^3 is wrong"};
    for (const auto& [j, Pj] : P)
        if (floor_mod(r - (Pj - j), Pj * Pj) != 0)
            return Failure{"r = P_j - j (mod P_j^2)", "r mod P_" + std::to_string(j) + "^2 is wrong"};
    return std::nullopt;
}

std::optional<Failure> s_failure(const BigInt& q0, const BigInt& B, const BigInt& r, const BigInt& s) {
    const BigInt q0sq = q0 * q0;
    if (floor_mod(r + 2, q0sq) != 0 || s * q0sq != r + 2) return Failure{"s = (r + 2) / q0^2", "s is not (r + 2) / q0^2"};
    if (floor_mod(s, q0) != 1) return Failure{"s = 1 (mod q0)", "s is not 1 modulo q0"};
    if (s < 1 || s >= B) return Failure{"1 <= s < B", "s is out of range"};
    if (gcd(s, B) != 1) return Failure{"gcd(s, B) = 1", "s shares a factor with B"};
    return std::nullopt;
}

struct Structure {
    bool d6 = false;
    bool valuation = false;
    bool divisibility = false;
    bool all() const { return d6 && valuation && divisibility; }
};

Structure evaluate_structure(u64 n, u64 p, u64 q0, unsigned k) {
    Structure st;
    const u64 n2 = n + 2;
    const FactorMap f = factorize(n2);
    st.d6 = is_prime(p) && static_cast<u128>(q0) * q0 * p == n2 && divisor_count(f) == 6;
    st.valuation = f.exponent_of(q0) == 2 && n2 >= 2 * q0 * q0;
    st.divisibility = true;
    for (unsigned j : group_indices(k))
        if (divisor_count(n + j) % (u64{1} << (j + 1)) != 0) st.divisibility = false;
    return st;
}

Membership top_quarter_membership(u64 n) {
    for (u64 precision = 8; precision <= 256; precision *= 2) {
        const auto m = locate_in_top_quarter(fractional_part_enclosure(n, precision));
        if (m != Membership::indeterminate) return m;
    }
    return Membership::indeterminate;
}

bool window_is_11(u64 n) {
    const auto w = digit_window(n, 2);
    return w[0] == 1 && w[1] == 1;
}

// Evaluates terms in order, giving up as soon as the partial sum plus the smallest
// possible remaining terms (d >= 2) already exceeds 2^(-k/2).
std::optional<TailEstimate> screen_tail(u64 n, unsigned k, u64 cutoff) {
    auto exceeds = [&](const BigInt& units) { return compare_with_inverse_sqrt_pow2(Dyadic(units, cutoff), k) > 0; };
    auto minimal_rest = [&](u64 first) -> BigInt { return 2 * (pow2(cutoff - first + 1) - 1); }; // sum_{l=first}^{cutoff} 2 * 2^(cutoff-l)
    if (exceeds(minimal_rest(k))) return std::nullopt;
    BigInt partial = 0;
    for (u64 l = k; l <= cutoff; ++l) {
        BigInt term = from_u64(divisor_count(n + l));
        mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), cutoff - l);
        partial += term;
        if (exceeds(partial + (l < cutoff ? minimal_rest(l + 1) : BigInt(0)))) return std::nullopt;
    }
    TailEstimate t{n, k, cutoff, Dyadic(partial, cutoff), tail_remainder_bound(n, cutoff)};
    if (!tail_within_threshold(t)) return std::nullopt;
    return t;
}

struct BlockResult {
    u64 scanned = 0;
    u64 prime_hits = 0;
    u64 tail_rejections = 0;
    u64 structure_rejections = 0;
    std::optional<u64> accepted_m;
    std::optional<TailEstimate> accepted_tail;
    std::optional<u64> candidate_m;
};

struct ScanContext {
    unsigned k;
    u64 q0, A, B, r, s;
    u64 fixed_cutoff;
};

BlockResult scan_block(const ScanContext& cx, u64 lo, u64 hi) {
    BlockResult out;
    for (u64 m = lo; m < hi; ++m) {
        ++out.scanned;
        const u64 p = cx.s + m * cx.B;
        if (!is_prime(p)) continue;
        ++out.prime_hits;
        const u64 n = cx.r + m * cx.A;
        const u64 cutoff = cx.fixed_cutoff ? cx.fixed_cutoff : default_tail_cutoff(n, cx.k);
        auto tail = screen_tail(n, cx.k, cutoff);
        if (!tail) {
            ++out.tail_rejections;
            if (!out.candidate_m && evaluate_structure(n, p, cx.q0, cx.k).all()) out.candidate_m = m;
            continue;
        }
        if (!evaluate_structure(n, p, cx.q0, cx.k).all()) {
            ++out.structure_rejections;
            continue;
        }
        if (!out.candidate_m) out.candidate_m = m;
        out.accepted_m = m;
        out.accepted_tail = std::move(tail);
        break;
    }
    return out;
}

WitnessCertificate make_certificate(const WitnessSystem& sys, u64 m, const TailEstimate& tail) {
    WitnessCertificate c;
    c.k = sys.k;
    c.q0 = sys.q0;
    c.P = sys.P;
    c.A = sys.A;
    c.B = sys.B;
    c.r = sys.r;
    c.s = sys.s;
    c.m = from_u64(m);
    c.p = sys.s + c.m * sys.B;
    c.n = sys.r + c.m * sys.A;
    c.tail = tail;

    const u64 n = to_u64(c.n);
    const auto st = evaluate_structure(n, to_u64(c.p), to_u64(c.q0), c.k);
    c.checks.residues = !residue_failure(c.k, c.q0, c.P, c.A, c.B, c.r);
    c.checks.s_properties = !s_failure(c.q0, c.B, c.r, c.s);
    c.checks.d6 = st.d6;
    c.checks.valuation = st.valuation;
    c.checks.divisibility_pattern = st.divisibility;
    c.checks.tail = tail_within_threshold(tail);
    c.checks.digits = top_quarter_membership(n) == Membership::inside && window_is_11(n);
    return c;
}

} // namespace

std::uint64_t required_prime_count(unsigned k) {
    u64 count = 1;
    for (unsigned j : group_indices(k)) count += j + 1;
    return count;
}

PrimeSelection select_primes(const WitnessParams& params) {
    if (params.k < 3) throw PreconditionError("select_primes: k must be at least 3");
    const u64 need = required_prime_count(params.k);
    std::vector<u64> pool;
    if (const auto* w = std::get_if<PrimeWindow>(&params.primes)) {
        if (w->low > w->high) throw PreconditionError("select_primes: empty prime window");
        pool = primes_in_range(w->low, w->high);
        if (pool.size() < need)
            throw PreconditionError("select_primes: k = " + std::to_string(params.k) + " needs " + std::to_string(need) +
                                    " primes, window [" + std::to_string(w->low) + ", " + std::to_string(w->high) +
                                    "] has " + std::to_string(pool.size()));
    } else {
        pool = std::get<std::vector<u64>>(params.primes);
        std::sort(pool.begin(), pool.end());
        if (std::adjacent_find(pool.begin(), pool.end()) != pool.end())
            throw PreconditionError("select_primes: prime list repeats a prime");
        for (u64 p : pool)
            if (!is_prime(p)) throw PreconditionError("select_primes: " + std::to_string(p) + " is not prime");
        if (pool.size() < need)
            throw PreconditionError("select_primes: k = " + std::to_string(params.k) + " needs " + std::to_string(need) +
                                    " primes, list has " + std::to_string(pool.size()));
    }
    PrimeSelection sel;
    auto it = pool.begin();
    sel.q0 = *it++;
    for (unsigned j : group_indices(params.k)) {
        auto& g = sel.groups[j];
        g.assign(it, it + (j + 1));
        it += j + 1;
    }
    return sel;
}

WitnessSystem build_witness_system(std::uint64_t q0, const PrimeGroups& groups) {
    if (!is_prime(q0)) throw PreconditionError("build_witness_system: q0 = " + std::to_string(q0) + " is not prime");
    // j = 2 is never a key, so groups {0, 1} already mean k = 3.
    unsigned k = 3;
    for (const auto& [j, _] : groups) k = std::max(k, j + 1);
    std::vector<unsigned> keys;
    for (const auto& [j, _] : groups) keys.push_back(j);
    if (k < 3 || keys != group_indices(k))
        throw PreconditionError("build_witness_system: groups must be exactly j = 0, 1, 3, ..., k-1 with k >= 3");

    std::set<u64> seen{q0};
    WitnessSystem sys;
    sys.k = k;
    sys.q0 = from_u64(q0);
    for (const auto& [j, primes] : groups) {
        if (primes.size() != j + 1)
            throw PreconditionError("build_witness_system: group " + std::to_string(j) + " needs " + std::to_string(j + 1) +
                                    " primes");
        BigInt Pj = 1;
        for (u64 p : primes) {
            if (!is_prime(p)) throw PreconditionError("build_witness_system: " + std::to_string(p) + " is not prime");
            if (!seen.insert(p).second)
                throw PreconditionError("build_witness_system: prime " + std::to_string(p) +
                                        " is used twice, so the moduli are not coprime");
            Pj *= from_u64(p);
        }
        sys.P[j] = Pj;
    }

    const BigInt q0sq = sys.q0 * sys.q0;
    sys.congruences.add(q0sq - 2, q0sq * sys.q0);
    for (const auto& [j, Pj] : sys.P) sys.congruences.add(floor_mod(Pj - j, Pj * Pj), Pj * Pj);
    sys.solution = crt_solve(sys.congruences);
    sys.A = sys.solution.modulus;
    sys.B = sys.A / q0sq;
    sys.r = sys.solution.residue;
    sys.s = (sys.r + 2) / q0sq;

    if (auto f = residue_failure(k, sys.q0, sys.P, sys.A, sys.B, sys.r)) throw ConstructionError(f->relation, f->detail);
    if (auto f = s_failure(sys.q0, sys.B, sys.r, sys.s)) throw ConstructionError(f->relation, f->detail);
    return sys;
}

Dyadic tail_remainder_bound(std::uint64_t n, std::uint64_t cutoff) {
    if (cutoff > UINT64_MAX - n) throw ResourceError("tail bound: n + cutoff exceeds 64 bits");
    return Dyadic(from_u64(2 * ceil_sqrt(n + cutoff) + 3), cutoff);
}

TailEstimate tail_estimate(std::uint64_t n, unsigned k, std::uint64_t cutoff) {
    if (n == 0) throw PreconditionError("tail_estimate: n must be positive");
    if (cutoff < k) throw PreconditionError("tail_estimate: cutoff must be at least k");
    const Dyadic remainder = tail_remainder_bound(n, cutoff);
    BigInt units = 0;
    for (u64 l = k; l <= cutoff; ++l) {
        BigInt term = from_u64(divisor_count(n + l));
        mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), cutoff - l);
        units += term;
    }
    return TailEstimate{n, k, cutoff, Dyadic(units, cutoff), remainder};
}

std::uint64_t default_tail_cutoff(std::uint64_t n, unsigned k) {
    u64 cutoff = k + 64;
    while (compare_with_inverse_sqrt_pow2(tail_remainder_bound(n, cutoff).times(4), k) > 0) cutoff *= 2;
    return cutoff;
}

bool tail_within_threshold(const TailEstimate& t) {
    return compare_with_inverse_sqrt_pow2(t.upper_bound(), t.k) <= 0;
}

SearchOutcome search_witness(const WitnessParams& params, const WitnessSystem& sys) {
    if (params.k != sys.k)
        throw PreconditionError("search_witness: params.k = " + std::to_string(params.k) + " but the system has k = " +
                                std::to_string(sys.k));
    SearchOutcome out;
    const u64 M = params.search_breadth;
    if (M == 0) return out;

    const BigInt last_n = sys.r + from_u64(M - 1) * sys.A;
    const BigInt last_p = sys.s + from_u64(M - 1) * sys.B;
    if (last_n >= pow2(62) || last_p >= pow2(62) || params.tail_cutoff >= (u64{1} << 62))
        throw ResourceError("search_witness: n_m for m < " + std::to_string(M) +
                            " leaves the 64-bit factorization range; lower M");
    const ScanContext cx{sys.k, to_u64(sys.q0), to_u64(sys.A), to_u64(sys.B), to_u64(sys.r), to_u64(sys.s),
                         params.tail_cutoff};

    constexpr u64 kBlock = u64{1} << 14;
    const u64 blocks = (M + kBlock - 1) / kBlock;
    const unsigned threads = std::max(1u, params.threads);
    std::optional<u64> candidate_m;
    std::optional<u64> accepted_m;
    std::optional<TailEstimate> accepted_tail;

    for (u64 first = 0; first < blocks && !accepted_m; first += threads) {
        const u64 last = std::min(blocks, first + threads);
        std::vector<BlockResult> wave(last - first);
        if (threads == 1) {
            wave[0] = scan_block(cx, first * kBlock, std::min(M, (first + 1) * kBlock));
        } else {
            std::vector<std::future<BlockResult>> jobs;
            for (u64 b = first; b < last; ++b)
                jobs.push_back(std::async(std::launch::async, scan_block, std::cref(cx), b * kBlock,
                                          std::min(M, (b + 1) * kBlock)));
            for (std::size_t i = 0; i < jobs.size(); ++i) wave[i] = jobs[i].get();
        }
        for (auto& br : wave) {
            out.scanned += br.scanned;
            out.prime_hits += br.prime_hits;
            out.tail_rejections += br.tail_rejections;
            out.structure_rejections += br.structure_rejections;
            if (!candidate_m && br.candidate_m) candidate_m = br.candidate_m;
            if (br.accepted_m) {
                accepted_m = br.accepted_m;
                accepted_tail = std::move(br.accepted_tail);
                break;
            }
        }
    }

    if (accepted_m) {
        out.certificate = make_certificate(sys, *accepted_m, *accepted_tail);
    } else if (candidate_m) {
        const u64 n = cx.r + *candidate_m * cx.A;
        const u64 cutoff = cx.fixed_cutoff ? cx.fixed_cutoff : default_tail_cutoff(n, cx.k);
        out.first_structural_candidate = make_certificate(sys, *candidate_m, tail_estimate(n, cx.k, cutoff));
    }
    return out;
}

SearchOutcome run_witness_pipeline(const WitnessParams& params) {
    const auto sel = select_primes(params);
    const auto sys = build_witness_system(sel.q0, sel.groups);
    return search_witness(params, sys);
}

const char* to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "indeterminate";
    }
}

const std::map<std::string, std::string>& witness_relations() {
    static const std::map<std::string, std::string> relations = {
        {kResidues, "A = q0^3 prod P_j^2; B = A / q0^2; r = q0^2 - 2 (mod q0^3); r = P_j - j (mod P_j^2); 0 <= r < A"},
        {kSProperties, "s = (r + 2) / q0^2; s = 1 (mod q0); 1 <= s < B; gcd(s, B) = 1"},
        {kD6, "n = r + m A; p = s + m B prime; n + 2 = q0^2 p; d(n + 2) = 6"},
        {kValuation, "nu_q0(n + 2) = 2; n + 2 >= 2 q0^2"},
        {kDivisibility, "2^(j+1) | d(n + j) for 0 <= j < k, j != 2"},
        {kTail, "sum_{l >= k} d(n + l) / 2^l <= 2^(-k/2)"},
        {kDigits, "frac(2^(n-1) E) in [3/4, 1); digits n and n+1 of E are 1 1"},
    };
    return relations;
}

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

VerificationReport verify_certificate(const WitnessCertificate& cert) {
    VerificationReport report;
    const auto& rel = witness_relations();
    auto add = [&](const std::string& name, const std::string& relation, CheckStatus status, std::string detail) {
        report.checks.push_back(CheckResult{name, relation, status, std::move(detail)});
        return status == CheckStatus::pass;
    };
    auto add_failure = [&](const std::string& name, const std::optional<Failure>& f) {
        if (f) return add(name, f->relation, CheckStatus::fail, f->detail);
        return add(name, rel.at(name), CheckStatus::pass, "");
    };

    // residues, including the prime structure of q0 and every P_j
    {
        std::optional<Failure> f;
        const auto q0 = try_u64(cert.q0);
        if (!q0 || !is_prime(*q0)) f = Failure{"q0 prime", "q0 is not a 64-bit prime"};
        for (const auto& [j, Pj] : cert.P) {
            if (f) break;
            const auto pj = try_u64(Pj);
            if (!pj || *pj < 2) {
                f = Failure{"P_j = product of j+1 distinct primes", "P_" + std::to_string(j) + " cannot be factored"};
                break;
            }
            const auto fm = factorize(*pj);
            const bool squarefree = std::all_of(fm.entries().begin(), fm.entries().end(),
                                                [](const PrimePower& e) { return e.exponent == 1; });
            if (fm.size() != j + 1 || !squarefree)
                f = Failure{"P_j = product of j+1 distinct primes",
                            "P_" + std::to_string(j) + " is not a product of " + std::to_string(j + 1) + " distinct primes"};
            else if (gcd(Pj, cert.q0) != 1)
                f = Failure{"primes distinct", "P_" + std::to_string(j) + " shares a prime with q0"};
            for (const auto& [i, Pi] : cert.P)
                if (!f && i < j && gcd(Pi, Pj) != 1)
                    f = Failure{"primes distinct", "P_" + std::to_string(i) + " and P_" + std::to_string(j) + " share a prime"};
        }
        if (!f) f = residue_failure(cert.k, cert.q0, cert.P, cert.A, cert.B, cert.r);
        report.recomputed.residues = add_failure(kResidues, f);
    }
    report.recomputed.s_properties = add_failure(kSProperties, s_failure(cert.q0, cert.B, cert.r, cert.s));

    const auto n = try_u64(cert.n);
    const auto q0 = try_u64(cert.q0);
    const bool in_range = n && q0 && cert.m >= 0 && *n < (u64{1} << 62);

    // d6
    {
        const BigInt q0sq = cert.q0 * cert.q0;
        std::optional<Failure> f;
        if (cert.n != cert.r + cert.m * cert.A) f = Failure{"n = r + m A", "n differs from r + m A"};
        else if (cert.p != cert.s + cert.m * cert.B) f = Failure{"p = s + m B", "p differs from s + m B"};
        else if (cert.n + 2 != q0sq * cert.p) f = Failure{"n + 2 = q0^2 p", "n + 2 differs from q0^2 p"};
        if (f) {
            report.recomputed.d6 = add_failure(kD6, f);
        } else if (!in_range || !try_u64(cert.p)) {
            add(kD6, rel.at(kD6), CheckStatus::indeterminate, "n is beyond the factorization range");
        } else if (!is_prime(to_u64(cert.p))) {
            report.recomputed.d6 = add_failure(kD6, Failure{"p prime", "p is composite"});
        } else {
            const auto d = divisor_count(*n + 2);
            report.recomputed.d6 = add_failure(
                kD6, d == 6 ? std::nullopt : std::optional<Failure>(Failure{"d(n + 2) = 6", "d(n + 2) = " + std::to_string(d)}));
        }
    }

    if (!in_range) {
        for (const auto* name : {&kValuation, &kDivisibility, &kTail})
            add(*name, rel.at(*name), CheckStatus::indeterminate, "n is beyond the factorization range");
        add("digits_enclosure", rel.at(kDigits), CheckStatus::indeterminate, "n is beyond the supported range");
        add("digits_window", rel.at(kDigits), CheckStatus::indeterminate, "n is beyond the supported range");
    } else {
        // valuation, and the growth bound n >= 2 q0^2 - 2
        {
            const auto v = is_prime(*q0) ? valuation(*n + 2, *q0) : 0u;
            std::optional<Failure> f;
            if (v != 2) f = Failure{"nu_q0(n + 2) = 2", "nu_q0(n + 2) = " + std::to_string(v)};
            else if (static_cast<u128>(*n) + 2 < 2 * static_cast<u128>(*q0) * *q0) f = Failure{"n + 2 >= 2 q0^2", "n is too small"};
            report.recomputed.valuation = add_failure(kValuation, f);
        }
        // divisibility pattern
        {
            std::optional<Failure> f;
            for (unsigned j : group_indices(cert.k)) {
                const auto d = divisor_count(*n + j);
                if (d % (u64{1} << (j + 1)) != 0) {
                    f = Failure{"2^(j+1) | d(n + j)", "d(n + " + std::to_string(j) + ") = " + std::to_string(d)};
                    break;
                }
            }
            report.recomputed.divisibility_pattern = add_failure(kDivisibility, f);
        }
        // tail
        {
            std::optional<Failure> f;
            if (cert.tail.n != *n || cert.tail.k != cert.k || cert.tail.cutoff < cert.k) {
                f = Failure{"tail parameters", "recorded tail does not belong to (n, k)"};
            } else {
                const auto fresh = tail_estimate(*n, cert.k, cert.tail.cutoff);
                if (!(fresh == cert.tail)) f = Failure{"tail value", "recorded tail differs from recomputation"};
                else if (!tail_within_threshold(fresh))
                    f = Failure{rel.at(kTail), "value + remainder = " + std::to_string(fresh.upper_bound().to_double()) +
                                                   " exceeds 2^(-k/2)"};
            }
            report.recomputed.tail = add_failure(kTail, f);
        }
        // digits, two independent ways
        {
            const auto m = top_quarter_membership(*n);
            const auto status = m == Membership::inside    ? CheckStatus::pass
                                : m == Membership::outside ? CheckStatus::fail
                                                           : CheckStatus::indeterminate;
            add("digits_enclosure", "frac(2^(n-1) E) in [3/4, 1)", status,
                m == Membership::indeterminate ? "enclosure straddles 3/4; retry at higher precision" : to_string(m));
            const auto w = digit_window(*n, 2);
            const bool ok = w[0] == 1 && w[1] == 1;
            add("digits_window", "digit_window(n, 2) = 11", ok ? CheckStatus::pass : CheckStatus::fail,
                "window = " + to_ascii(w));
            report.recomputed.digits = status == CheckStatus::pass && ok;
        }
    }

    // recorded flags must match the recomputation
    {
        const auto& a = cert.checks;
        const auto& b = report.recomputed;
        std::string diff;
        auto cmp = [&](const char* name, bool x, bool y) {
            if (x != y) diff += std::string(diff.empty() ? "" : ", ") + name;
        };
        cmp("residues", a.residues, b.residues);
        cmp("s_properties", a.s_properties, b.s_properties);
        cmp("d6", a.d6, b.d6);
        cmp("divisibility_pattern", a.divisibility_pattern, b.divisibility_pattern);
        cmp("tail", a.tail, b.tail);
        cmp("digits", a.digits, b.digits);
        cmp("valuation", a.valuation, b.valuation);
        add("recorded_flags", "recorded checks equal recomputed checks",
            diff.empty() ? CheckStatus::pass : CheckStatus::fail, diff.empty() ? "" : "mismatch: " + diff);
    }
    return report;
}

bool ErdosRunResult::all_passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const ErdosTermCheck& c) { return c.passed; });
}

ErdosRunResult erdos_zero_run(const ErdosRunParams& params) {
    if (params.t < 2) throw PreconditionError("erdos_zero_run: t must be at least 2");
    if (params.groups.empty()) throw PreconditionError("erdos_zero_run: at least one prime group is required");
    std::set<u64> seen;
    ErdosRunResult out;
    std::vector<BigInt> products;
    for (std::size_t j = 0; j < params.groups.size(); ++j) {
        const auto& g = params.groups[j];
        if (g.size() != j + 1)
            throw PreconditionError("erdos_zero_run: group " + std::to_string(j) + " needs " + std::to_string(j + 1) + " primes");
        BigInt Pj = 1;
        for (u64 p : g) {
            if (!is_prime(p)) throw PreconditionError("erdos_zero_run: " + std::to_string(p) + " is not prime");
            if (!seen.insert(p).second)
                throw PreconditionError("erdos_zero_run: prime " + std::to_string(p) + " repeats, moduli are not coprime");
            Pj *= from_u64(p);
        }
        const BigInt modulus = power(Pj, params.t);
        out.system.add(floor_mod(power(Pj, params.t - 1) - static_cast<long>(j), modulus), modulus);
        products.push_back(Pj);
    }
    const auto sol = crt_solve(out.system);
    out.modulus = sol.modulus;
    out.x = sol.residue == 0 ? sol.modulus : sol.residue;

    BigInt factor = 1;
    for (std::size_t j = 0; j < params.groups.size(); ++j) {
        factor *= from_u64(params.t);
        ErdosTermCheck c;
        c.j = static_cast<unsigned>(j);
        c.value = out.x + static_cast<unsigned long>(j);
        c.required_factor = factor;
        const auto v = try_u64(c.value);
        if (!v) throw ResourceError("erdos_zero_run: x + j = " + to_decimal(c.value) + " is beyond the factorization range");
        c.divisor_count = divisor_count(*v);
        c.passed = floor_mod(from_u64(c.divisor_count), factor) == 0;
        out.checks.push_back(std::move(c));
    }
    return out;
}

} // namespace ebc
