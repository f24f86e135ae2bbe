#include "ebc/lemmas.hpp"

#include "ebc/construction.hpp"
#include "ebc/crt.hpp"
#include "ebc/divisor.hpp"
#include "ebc/errors.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <numeric>

namespace ebc {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using ordered_json = nlohmann::ordered_json;

constexpr mpfr_prec_t kStartPrecision = 64;
constexpr mpfr_prec_t kMaxPrecision = 4096;

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }

    mpq_class to_rational() {
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return q;
    }

private:
    mpfr_t v_;
};

RationalBounds log_bounds(const mpq_class& y, mpfr_prec_t prec) {
    Mpfr lo(prec), hi(prec);
    mpfr_set_q(lo.get(), y.get_mpq_t(), MPFR_RNDD);
    mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_set_q(hi.get(), y.get_mpq_t(), MPFR_RNDU);
    mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
    return {lo.to_rational(), hi.to_rational()};
}

RationalBounds sqrt_bounds(const mpq_class& y, mpfr_prec_t prec) {
    Mpfr lo(prec), hi(prec);
    mpfr_set_q(lo.get(), y.get_mpq_t(), MPFR_RNDD);
    mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_set_q(hi.get(), y.get_mpq_t(), MPFR_RNDU);
    mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
    return {lo.to_rational(), hi.to_rational()};
}

using BoundsAt = std::function<RationalBounds(mpfr_prec_t)>;

// Decides lhs <= rhs from certified enclosures, raising precision while undecided.
InequalityCheck check_le(std::string name, std::string relation, const mpq_class& lhs, const BoundsAt& rhs) {
    InequalityCheck c{std::move(name), std::move(relation), Verdict::indeterminate, {}, ""};
    for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
        c.rhs = rhs(prec);
        if (lhs <= c.rhs.lower) {
            c.verdict = Verdict::pass;
            return c;
        }
        if (lhs > c.rhs.upper) {
            c.verdict = Verdict::fail;
            return c;
        }
    }
    c.note = "undecided at " + std::to_string(kMaxPrecision) + " bits";
    return c;
}

// Some(true) when left <= right is certain, Some(false) when left > right is certain.
std::optional<bool> decide_le(const BoundsAt& left, const BoundsAt& right) {
    for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
        const auto l = left(prec);
        const auto r = right(prec);
        if (l.upper <= r.lower) return true;
        if (l.lower > r.upper) return false;
    }
    return std::nullopt;
}

mpq_class to_q(u64 v) {
    return mpq_class(from_u64(v));
}

// c * 2^(-k/2) <= s, exactly: c^2 / 2^k <= s^2 with s >= 0.
bool count_times_threshold_le(u64 c, unsigned k, const Dyadic& s) {
    if (c == 0) return true;
    const mpq_class cq = to_q(c);
    const mpq_class sq = s.to_rational();
    mpq_class lhs = cq * cq;
    mpq_div_2exp(lhs.get_mpq_t(), lhs.get_mpq_t(), k);
    return lhs <= sq * sq;
}

std::string verdict_line(const InequalityCheck& c) {
    return std::string(to_string(c.verdict));
}

std::string q_str(const mpq_class& q) {
    return rational_to_string(q);
}

double q_double(const mpq_class& q) {
    return q.get_d();
}

struct Rows {
    std::vector<u64> ns;
    unsigned k;
    u64 L;
    u64 cutoff;
};

Lemma3Report decompose(const Rows& rows) {
    if (rows.k < 1) throw PreconditionError("lemma3: k must be at least 1");
    if (rows.L < rows.k) throw PreconditionError("lemma3: L must be at least k");
    if (rows.cutoff < rows.L || rows.cutoff < rows.k) throw PreconditionError("lemma3: cutoff must be at least L");
    if (rows.ns.empty()) throw PreconditionError("lemma3: at least one row is required");
    Lemma3Report rep;
    rep.k = rows.k;
    rep.L = rows.L;
    rep.cutoff = rows.cutoff;
    rep.rows = rows.ns.size();

    const u64 width = rows.cutoff - rows.k + 1;
    // d(n_m + l), row-major; summed column by column below.
    std::vector<u64> table(rows.ns.size() * width);
    for (std::size_t m = 0; m < rows.ns.size(); ++m) {
        if (rows.ns[m] == 0) throw PreconditionError("lemma3: rows must be positive");
        if (rows.ns[m] > UINT64_MAX - rows.cutoff) throw ResourceError("lemma3: n + cutoff exceeds 64 bits");
        for (u64 l = rows.k; l <= rows.cutoff; ++l) table[m * width + (l - rows.k)] = divisor_count(rows.ns[m] + l);
    }

    BigInt s1 = 0, s2 = 0;
    for (u64 l = rows.k; l <= rows.cutoff; ++l) {
        BigInt column = 0;
        for (std::size_t m = 0; m < rows.ns.size(); ++m) column += from_u64(table[m * width + (l - rows.k)]);
        mpz_mul_2exp(column.get_mpz_t(), column.get_mpz_t(), rows.cutoff - l);
        (l < rows.L ? s1 : s2) += column;
    }
    rep.S1 = Dyadic(s1, rows.cutoff);
    rep.S2 = Dyadic(s2, rows.cutoff);

    for (u64 n : rows.ns) {
        const auto t = tail_estimate(n, rows.k, rows.cutoff);
        rep.sumT += t.value;
        rep.joint_remainder += t.remainder_bound;
        if (compare_with_inverse_sqrt_pow2(t.value, rows.k) > 0)
            ++rep.exceed_count;
        else if (compare_with_inverse_sqrt_pow2(t.upper_bound(), rows.k) > 0)
            ++rep.possibly_exceeding;
    }
    rep.partition_exact = rep.S1 + rep.S2 == rep.sumT;
    rep.bound_covers_sum = rep.S1 + rep.S2 + rep.joint_remainder >= rep.sumT;
    rep.markov_holds = count_times_threshold_le(rep.exceed_count, rows.k, rep.sumT);
    rep.s1_bound = InequalityCheck{"s1_bound", "S1 <= 10 M log(Y) 2^(-k)", Verdict::not_applicable, {}, ""};
    return rep;
}

std::string tsv_escape(std::string s) {
    std::replace(s.begin(), s.end(), '\t', ' ');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
    default: return "not_applicable";
    }
}

bool Lemma2Report::passed() const {
    auto ok = [](Verdict v) { return v == Verdict::pass || v == Verdict::not_applicable; };
    return general.verdict == Verdict::pass && ok(log_form.verdict);
}

Lemma2Report check_lemma2(const Lemma2Instance& in) {
    if (in.a < 1 || in.A < 1 || in.M < 1) throw PreconditionError("lemma2: a, A, M must be positive");
    if (in.Y < 3) throw PreconditionError("lemma2: Y must be at least 3");
    if (std::gcd(in.a, in.A) != 1)
        throw PreconditionError("lemma2: gcd(a, A) = " + std::to_string(std::gcd(in.a, in.A)) + ", must be 1");
    const u128 last = static_cast<u128>(in.a) + static_cast<u128>(in.M - 1) * in.A;
    if (last > UINT64_MAX || mpq_class(from_u64(static_cast<u64>(last))) > in.Y)
        throw PreconditionError("lemma2: a + (M-1)A must not exceed Y");

    Lemma2Report rep;
    rep.instance = in;
    rep.lhs = progression_divisor_sum(in.a, in.A, in.M);
    const mpq_class lhs = to_q(rep.lhs);
    const mpq_class M = to_q(in.M);
    const mpq_class Y = in.Y;

    rep.general = check_le("general", "sum d(a + mA) <= 2M(1 + log(Y)/2) + 2 sqrt(Y)", lhs, [&](mpfr_prec_t prec) {
        const auto ln = log_bounds(Y, prec);
        const auto sq = sqrt_bounds(Y, prec);
        return RationalBounds{2 * M * (1 + ln.lower / 2) + 2 * sq.lower, 2 * M * (1 + ln.upper / 2) + 2 * sq.upper};
    });

    const auto applicable = decide_le([&](mpfr_prec_t prec) { return sqrt_bounds(Y, prec); },
                                      [&](mpfr_prec_t prec) {
                                          const auto ln = log_bounds(Y, prec);
                                          return RationalBounds{M * ln.lower, M * ln.upper};
                                      });
    const BoundsAt five_m_log = [&](mpfr_prec_t prec) {
        const auto ln = log_bounds(Y, prec);
        return RationalBounds{5 * M * ln.lower, 5 * M * ln.upper};
    };
    if (applicable == true) {
        rep.log_form = check_le("log_form", "sum d(a + mA) <= 5 M log(Y)", lhs, five_m_log);
    } else {
        rep.log_form = InequalityCheck{"log_form", "sum d(a + mA) <= 5 M log(Y)",
                                       applicable ? Verdict::not_applicable : Verdict::indeterminate,
                                       five_m_log(kStartPrecision),
                                       applicable ? "sqrt(Y) > M log(Y)" : "cannot decide sqrt(Y) <= M log(Y)"};
    }
    return rep;
}

bool Lemma3Report::passed() const {
    return partition_exact && bound_covers_sum && markov_holds &&
           (s1_bound.verdict == Verdict::pass || s1_bound.verdict == Verdict::not_applicable);
}

Lemma3Report check_lemma3_decomposition(const Lemma3Instance& in) {
    if (in.A < 1 || in.M < 1) throw PreconditionError("lemma3: A and M must be positive");
    if (in.r < 1) throw PreconditionError("lemma3: r must be positive");
    const u64 cutoff = in.cutoff ? in.cutoff : in.L + 64;
    const u128 last = static_cast<u128>(in.r) + static_cast<u128>(in.M - 1) * in.A + cutoff;
    if (last > UINT64_MAX) throw ResourceError("lemma3: r + (M-1)A + cutoff exceeds 64 bits");

    Rows rows{{}, in.k, in.L, cutoff};
    rows.ns.reserve(in.M);
    for (u64 m = 0; m < in.M; ++m) rows.ns.push_back(in.r + m * in.A);
    Lemma3Report rep = decompose(rows);

    const u128 longest = static_cast<u128>(in.r) + (in.L - 1) + static_cast<u128>(in.M - 1) * in.A;
    const mpq_class Y = in.Y ? *in.Y : std::max(mpq_class(3), mpq_class(from_u64(static_cast<u64>(longest))));
    rep.Y = Y;
    const mpq_class M = to_q(in.M);

    std::vector<std::string> failed;
    if (Y < 3) failed.push_back("Y >= 3");
    if (in.L >= 64 || Y > mpq_class(pow2(in.L))) failed.push_back("Y <= 2^L");
    const auto sqrt_ok = decide_le([&](mpfr_prec_t prec) { return sqrt_bounds(Y, prec); },
                                   [&](mpfr_prec_t prec) {
                                       const auto ln = log_bounds(Y, prec);
                                       return RationalBounds{M * ln.lower, M * ln.upper};
                                   });
    if (Y >= 3 && sqrt_ok != true) failed.push_back("sqrt(Y) <= M log(Y)");
    if (mpq_class(from_u64(static_cast<u64>(longest))) > Y) failed.push_back("r + (L-1) + (M-1)A <= Y");
    const FactorMap factors = factorize(in.A);
    for (const auto& e : factors.entries()) {
        if (e.prime <= in.L) {
            failed.push_back("p | A implies p > L (p = " + std::to_string(e.prime) + ")");
            continue;
        }
        bool has_jp = false;
        for (unsigned j = 0; j < in.k && !has_jp; ++j) has_jp = (in.r + j) % e.prime == 0;
        if (!has_jp) failed.push_back("p | r + j_p for some j_p < k (p = " + std::to_string(e.prime) + ")");
    }
    rep.hypotheses_hold = failed.empty();
    for (const auto& f : failed) rep.hypotheses_note += (rep.hypotheses_note.empty() ? "" : "; ") + f;

    const BoundsAt rhs = [&](mpfr_prec_t prec) {
        const auto ln = log_bounds(Y, prec);
        mpq_class lo = 10 * M * ln.lower, hi = 10 * M * ln.upper;
        mpq_div_2exp(lo.get_mpq_t(), lo.get_mpq_t(), in.k);
        mpq_div_2exp(hi.get_mpq_t(), hi.get_mpq_t(), in.k);
        return RationalBounds{lo, hi};
    };
    if (rep.hypotheses_hold) {
        rep.s1_bound = check_le("s1_bound", "S1 <= 10 M log(Y) 2^(-k)", rep.S1.to_rational(), rhs);
    } else if (Y >= 3) {
        rep.s1_bound.rhs = rhs(kStartPrecision);
        rep.s1_bound.note = "hypotheses fail: " + rep.hypotheses_note;
    }
    return rep;
}

Lemma3Report check_lemma3_decomposition(const std::vector<std::uint64_t>& ns, unsigned k, std::uint64_t L,
                                         std::uint64_t cutoff) {
    Lemma3Report rep = decompose(Rows{ns, k, L, cutoff ? cutoff : L + 64});
    rep.hypotheses_note = "rows given as a list, not a progression";
    rep.s1_bound.note = rep.hypotheses_note;
    return rep;
}

MarkovReport check_markov(const std::vector<Dyadic>& values, unsigned k) {
    MarkovReport rep;
    rep.k = k;
    for (const auto& v : values) {
        if (v.sign() < 0) throw PreconditionError("markov: values must be nonnegative");
        rep.sum += v;
        if (compare_with_inverse_sqrt_pow2(v, k) > 0) ++rep.exceed_count;
    }
    rep.holds = count_times_threshold_le(rep.exceed_count, k, rep.sum);
    return rep;
}

AgpReport check_agp_progression(std::uint64_t X, std::uint64_t d, std::uint64_t a) {
    if (X < 3) throw PreconditionError("agp: X must be at least 3");
    if (d < 1 || a < 1) throw PreconditionError("agp: d and a must be positive");
    if (std::gcd(a, d) != 1) throw PreconditionError("agp: gcd(a, d) = " + std::to_string(std::gcd(a, d)) + ", must be 1");
    if (X > (u64{1} << 26)) throw ResourceError("agp: X above 2^26 exceeds the prime sieve");

    AgpReport rep;
    rep.X = X;
    rep.d = d;
    rep.a = a;
    const u64 residue = a % d;
    const auto primes = primes_through(static_cast<std::uint32_t>(X));
    rep.count = static_cast<u64>(
        std::count_if(primes->begin(), primes->end(), [&](std::uint32_t p) { return p <= X && p % d == residue; }));
    if (X / d <= 2'000'000) {
        u64 c = 0;
        for (u64 x = residue; x <= X; x += d) {
            if (is_prime(x)) ++c;
            if (X - x < d) break;
        }
        rep.independent_count = c;
    }
    rep.phi_d = euler_totient(d);

    const mpq_class Xq = to_q(X);
    const mpq_class denom = 2 * to_q(rep.phi_d);
    const auto check = check_le("agp", "X / (2 phi(d) log X) <= count", -to_q(rep.count), [&](mpfr_prec_t prec) {
        const auto ln = log_bounds(Xq, prec);
        const mpq_class small_denominator = denom * ln.lower;
        const mpq_class large_denominator = denom * ln.upper;
        mpq_class lower = Xq / small_denominator;
        mpq_class upper = Xq / large_denominator;
        return RationalBounds{-lower, -upper};
    });
    rep.bound = RationalBounds{-check.rhs.upper, -check.rhs.lower};
    rep.verdict = check.verdict;
    if (d > X) rep.note = "d exceeds X: at most one term of the progression lies below X";
    return rep;
}

std::uint64_t draw_uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw PreconditionError("draw_uniform: empty range");
    const u64 span = hi - lo;
    if (span == UINT64_MAX) return rng();
    const u64 n = span + 1;
    const u64 limit = UINT64_MAX - UINT64_MAX % n;
    u64 x;
    do x = rng();
    while (x >= limit);
    return lo + x % n;
}

std::vector<Lemma2Instance> generate_lemma2_instances(std::uint64_t seed, std::size_t count, std::uint64_t y_max) {
    if (y_max < 3) throw PreconditionError("generate_lemma2_instances: y_max must be at least 3");
    std::mt19937_64 rng(seed);
    std::vector<Lemma2Instance> out;
    while (out.size() < count) {
        const u64 y = draw_uniform(rng, 3, y_max);
        unsigned bits = 0;
        while (bits < 63 && (u64{1} << (bits + 1)) <= y) ++bits;
        const u64 A = draw_uniform(rng, 1, std::min<u64>(y, u64{1} << draw_uniform(rng, 0, bits)));
        const u64 a = draw_uniform(rng, 1, std::min(A + 1, y));
        if (std::gcd(a, A) != 1) continue;
        const u64 M = draw_uniform(rng, 1, (y - a) / A + 1);
        mpq_class Y = mpq_class(from_u64(y));
        if (y < y_max) Y += mpq_class(static_cast<unsigned long>(draw_uniform(rng, 0, 15)), 16);
        Y.canonicalize();
        out.push_back(Lemma2Instance{a, A, M, Y});
    }
    return out;
}

std::vector<Lemma3Instance> generate_lemma3_instances(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::vector<Lemma3Instance> out;
    while (out.size() < count) {
        const u64 L = draw_uniform(rng, 16, 26);
        const unsigned k = static_cast<unsigned>(draw_uniform(rng, 1, std::min<u64>(6, L / 2)));
        auto pool = primes_in_range(L + 1, 2 * L - 1);
        const u64 want = draw_uniform(rng, 1, 2);
        CongruenceSystem sys;
        u64 A = 1;
        for (u64 i = 0; i < want && !pool.empty(); ++i) {
            const u64 idx = draw_uniform(rng, 0, pool.size() - 1);
            const u64 p = pool[idx];
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
            const u64 jp = draw_uniform(rng, 0, k - 1);
            sys.add(from_u64((p - jp % p) % p), from_u64(p));
            A *= p;
        }
        u64 r = to_u64(crt_solve(sys).residue);
        if (r == 0) r = A;
        const u64 budget = (u64{1} << L) - r - (L - 1);
        const u64 M = draw_uniform(rng, 50, std::min<u64>(600, budget / A + 1));
        Lemma3Instance in{r, A, M, k, L, L + 40, std::nullopt};
        const u64 longest = r + (L - 1) + (M - 1) * A;
        in.Y = mpq_class(from_u64(std::max<u64>(3, longest + draw_uniform(rng, 0, A))));
        if (*in.Y > mpq_class(pow2(L))) continue;
        // sqrt(Y) <= M log(Y); a coarse exact screen, rechecked rigorously by the harness.
        if (mpq_class(from_u64(M * M)) * 4 < *in.Y) continue;
        out.push_back(std::move(in));
    }
    return out;
}

std::vector<std::vector<Dyadic>> generate_tail_collections(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Dyadic>> out(count);
    for (auto& c : out) {
        c.resize(draw_uniform(rng, 0, 40));
        for (auto& v : c) {
            const bool zero = draw_uniform(rng, 0, 3) == 0;
            v = zero ? Dyadic() : Dyadic(from_u64(draw_uniform(rng, 0, u64{1} << 20)), draw_uniform(rng, 0, 26));
        }
    }
    return out;
}

std::string to_json_line(const Lemma2Report& r) {
    ordered_json j;
    j["record"] = "lemma2";
    j["a"] = r.instance.a;
    j["A"] = r.instance.A;
    j["M"] = r.instance.M;
    j["Y"] = q_str(r.instance.Y);
    j["lhs"] = r.lhs;
    for (const auto* c : {&r.general, &r.log_form}) {
        j[c->name + "_rhs_lower"] = q_double(c->rhs.lower);
        j[c->name + "_rhs_upper"] = q_double(c->rhs.upper);
        j[c->name + "_verdict"] = verdict_line(*c);
    }
    j["verdict"] = r.passed() ? "pass" : "fail";
    return j.dump() + "\n";
}

std::string to_json_line(const Lemma3Report& r) {
    ordered_json j;
    j["record"] = "lemma3";
    j["k"] = r.k;
    j["L"] = r.L;
    j["cutoff"] = r.cutoff;
    j["rows"] = r.rows;
    j["Y"] = r.Y ? q_str(*r.Y) : "";
    j["S1"] = r.S1.to_string();
    j["S2"] = r.S2.to_string();
    j["sumT"] = r.sumT.to_string();
    j["joint_remainder"] = r.joint_remainder.to_string();
    j["partition_exact"] = r.partition_exact;
    j["bound_covers_sum"] = r.bound_covers_sum;
    j["exceed_count"] = r.exceed_count;
    j["possibly_exceeding"] = r.possibly_exceeding;
    j["markov_holds"] = r.markov_holds;
    j["hypotheses_hold"] = r.hypotheses_hold;
    j["s1_bound_rhs_lower"] = q_double(r.s1_bound.rhs.lower);
    j["s1_bound_verdict"] = verdict_line(r.s1_bound);
    j["note"] = r.s1_bound.note;
    j["verdict"] = r.passed() ? "pass" : "fail";
    return j.dump() + "\n";
}

std::string to_json_line(const AgpReport& r) {
    ordered_json j;
    j["record"] = "agp";
    j["X"] = r.X;
    j["d"] = r.d;
    j["a"] = r.a;
    j["count"] = r.count;
    j["independent_count"] = r.independent_count ? ordered_json(*r.independent_count) : ordered_json(nullptr);
    j["phi_d"] = r.phi_d;
    j["bound_lower"] = q_double(r.bound.lower);
    j["bound_upper"] = q_double(r.bound.upper);
    j["satisfied"] = to_string(r.verdict);
    j["note"] = r.note;
    return j.dump() + "\n";
}

std::string lemma2_tsv_header() {
    return "record\ta\tA\tM\tY\tlhs\tgeneral_rhs_lower\tgeneral_verdict\tlog_form_rhs_lower\tlog_form_verdict\tverdict\n";
}

std::string lemma3_tsv_header() {
    return "record\tk\tL\tcutoff\trows\tS1\tS2\tsumT\tpartition_exact\texceed_count\tmarkov_holds\ts1_bound_verdict\tverdict\n";
}

std::string agp_tsv_header() {
    return "record\tX\td\ta\tcount\tphi_d\tbound_lower\tbound_upper\tsatisfied\tnote\n";
}

std::string to_tsv_line(const Lemma2Report& r) {
    return "lemma2\t" + std::to_string(r.instance.a) + "\t" + std::to_string(r.instance.A) + "\t" +
           std::to_string(r.instance.M) + "\t" + q_str(r.instance.Y) + "\t" + std::to_string(r.lhs) + "\t" +
           std::to_string(q_double(r.general.rhs.lower)) + "\t" + verdict_line(r.general) + "\t" +
           std::to_string(q_double(r.log_form.rhs.lower)) + "\t" + verdict_line(r.log_form) + "\t" +
           (r.passed() ? "pass" : "fail") + "\n";
}

std::string to_tsv_line(const Lemma3Report& r) {
    return "lemma3\t" + std::to_string(r.k) + "\t" + std::to_string(r.L) + "\t" + std::to_string(r.cutoff) + "\t" +
           std::to_string(r.rows) + "\t" + r.S1.to_string() + "\t" + r.S2.to_string() + "\t" + r.sumT.to_string() +
           "\t" + (r.partition_exact ? "true" : "false") + "\t" + std::to_string(r.exceed_count) + "\t" +
           (r.markov_holds ? "true" : "false") + "\t" + verdict_line(r.s1_bound) + "\t" + (r.passed() ? "pass" : "fail") +
           "\n";
}

std::string to_tsv_line(const AgpReport& r) {
    return "agp\t" + std::to_string(r.X) + "\t" + std::to_string(r.d) + "\t" + std::to_string(r.a) + "\t" +
           std::to_string(r.count) + "\t" + std::to_string(r.phi_d) + "\t" + std::to_string(q_double(r.bound.lower)) +
           "\t" + std::to_string(q_double(r.bound.upper)) + "\t" + to_string(r.verdict) + "\t" + tsv_escape(r.note) +
           "\n";
}

mpq_class parse_rational(std::string_view text) {
    const std::string s(text);
    if (s.empty()) throw PreconditionError("rational: empty text");
    mpq_class q;
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        const auto digits = [](const std::string& t) {
            return std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
        };
        if (whole.empty() || frac.empty() || !digits(whole) || !digits(frac))
            throw PreconditionError("rational: malformed \"" + s + "\"");
        BigInt den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        q = mpq_class(BigInt(whole + frac), den);
    } else {
        if (s.find_first_not_of("0123456789/") != std::string::npos || s.front() == '/' || s.back() == '/' ||
            std::count(s.begin(), s.end(), '/') > 1)
            throw PreconditionError("rational: malformed \"" + s + "\"");
        if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw PreconditionError("rational: malformed \"" + s + "\"");
    }
    q.canonicalize();
    return q;
}

std::string rational_to_string(const mpq_class& q) {
    return q.get_str();
}

} // namespace ebc
