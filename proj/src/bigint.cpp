#include "ebc/bigint.hpp"

#include "ebc/errors.hpp"

#include <limits>

namespace ebc {

BigInt from_u64(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

std::optional<std::uint64_t> try_u64(const BigInt& v) {
    if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) return std::nullopt;
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

std::uint64_t to_u64(const BigInt& v) {
    auto r = try_u64(v);
    if (!r) throw ResourceError("integer " + to_decimal(v) + " is outside the 64-bit range");
    return *r;
}

std::string to_decimal(const BigInt& v) { return v.get_str(10); }

BigInt parse_decimal(std::string_view s) {
    std::string_view digits = s;
    if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
    if (digits.empty()) throw PreconditionError("empty integer literal");
    for (char c : digits)
        if (c < '0' || c > '9') throw PreconditionError("malformed integer literal '" + std::string(s) + "'");
    return BigInt(std::string(s), 10);
}

BigInt pow2(std::uint64_t e) {
    BigInt r;
    mpz_setbit(r.get_mpz_t(), e);
    return r;
}

Dyadic::Dyadic(BigInt num, std::uint64_t exp) : num_(std::move(num)), exp_(exp) {}

BigInt Dyadic::scaled_to(std::uint64_t e) const {
    BigInt r;
    mpz_mul_2exp(r.get_mpz_t(), num_.get_mpz_t(), e - exp_);
    return r;
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
    const auto e = std::max(exp_, o.exp_);
    num_ = scaled_to(e) + o.scaled_to(e);
    exp_ = e;
    return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& o) {
    const auto e = std::max(exp_, o.exp_);
    num_ = scaled_to(e) - o.scaled_to(e);
    exp_ = e;
    return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const auto e = std::max(a.exp_, b.exp_);
    const int c = cmp(a.scaled_to(e), b.scaled_to(e));
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

double Dyadic::to_double() const {
    mpf_class f(num_, 128);
    mpf_div_2exp(f.get_mpf_t(), f.get_mpf_t(), exp_);
    return f.get_d();
}

mpq_class Dyadic::to_rational() const {
    mpq_class q(num_, pow2(exp_));
    q.canonicalize();
    return q;
}

Dyadic Dyadic::normalized() const {
    if (sgn(num_) == 0) return Dyadic(0, 0);
    const auto tz = mpz_scan1(num_.get_mpz_t(), 0);
    const auto shift = std::min<std::uint64_t>(tz, exp_);
    BigInt n;
    mpz_fdiv_q_2exp(n.get_mpz_t(), num_.get_mpz_t(), shift);
    return Dyadic(std::move(n), exp_ - shift);
}

std::string Dyadic::to_string() const {
    const auto n = normalized();
    return to_decimal(n.num_) + "/2^" + std::to_string(n.exp_);
}

Dyadic Dyadic::parse(std::string_view s) {
    const auto slash = s.find("/2^");
    if (slash == std::string_view::npos) throw PreconditionError("malformed dyadic '" + std::string(s) + "'");
    auto num = parse_decimal(s.substr(0, slash));
    const auto exp_text = s.substr(slash + 3);
    if (exp_text.empty() || exp_text.size() > 18) throw PreconditionError("malformed dyadic exponent");
    std::uint64_t e = 0;
    for (char c : exp_text) {
        if (c < '0' || c > '9') throw PreconditionError("malformed dyadic exponent");
        e = e * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return Dyadic(std::move(num), e);
}

int compare_with_inverse_sqrt_pow2(const Dyadic& v, std::uint64_t k) {
    if (v.sign() < 0) throw PreconditionError("comparison with 2^(-k/2) needs a nonnegative value");
    // v = a / 2^e ; v^2 vs 2^-k  <=>  a^2 * 2^k vs 2^(2e)
    BigInt lhs = v.numerator() * v.numerator();
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), k);
    const int c = cmp(lhs, pow2(2 * v.exponent()));
    return (c > 0) - (c < 0);
}

} // namespace ebc
