#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ebc {

using BigInt = mpz_class;

BigInt from_u64(std::uint64_t v);
// Throws ResourceError when v does not fit.
std::uint64_t to_u64(const BigInt& v);
std::optional<std::uint64_t> try_u64(const BigInt& v);

std::string to_decimal(const BigInt& v);
// Accepts an optional leading '-' followed by decimal digits only.
BigInt parse_decimal(std::string_view s);

BigInt pow2(std::uint64_t e);

// Exact dyadic rational num / 2^exp.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(BigInt num, std::uint64_t exp);
    static Dyadic integer(std::int64_t v) { return Dyadic(BigInt(static_cast<long>(v)), 0); }

    const BigInt& numerator() const noexcept { return num_; }
    std::uint64_t exponent() const noexcept { return exp_; }

    // Numerator scaled to denominator 2^e; e must be >= exponent().
    BigInt scaled_to(std::uint64_t e) const;

    Dyadic& operator+=(const Dyadic& o);
    Dyadic& operator-=(const Dyadic& o);
    friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
    friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
    Dyadic times(const BigInt& k) const { return Dyadic(num_ * k, exp_); }
    Dyadic halved(std::uint64_t times = 1) const { return Dyadic(num_, exp_ + times); }

    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) { return (a <=> b) == 0; }

    int sign() const { return sgn(num_); }
    double to_double() const;
    mpq_class to_rational() const;

    // Canonical "num/2^exp" with exp minimal; integers print as "num/2^0".
    std::string to_string() const;
    static Dyadic parse(std::string_view s);

    Dyadic normalized() const;

private:
    BigInt num_ = 0;
    std::uint64_t exp_ = 0;
};

// Sign of v - 2^(-k/2) for v >= 0, decided exactly by squaring.
int compare_with_inverse_sqrt_pow2(const Dyadic& v, std::uint64_t k);

} // namespace ebc
