#pragma once

#include "ebc/bigint.hpp"

#include <cstddef>
#include <vector>

namespace ebc {

struct Congruence {
    BigInt residue;
    BigInt modulus;
};

// Nonempty list of x = residue (mod modulus) with 0 <= residue < modulus, modulus >= 2.
class CongruenceSystem {
public:
    CongruenceSystem() = default;
    explicit CongruenceSystem(std::vector<Congruence> congruences);

    void add(BigInt residue, BigInt modulus);
    const std::vector<Congruence>& congruences() const noexcept { return congruences_; }
    std::size_t size() const noexcept { return congruences_.size(); }

private:
    std::vector<Congruence> congruences_;
};

// 0 <= residue < modulus, modulus = product of all input moduli.
struct CrtSolution {
    BigInt residue;
    BigInt modulus;
};

struct ExtendedGcd {
    BigInt gcd;
    BigInt x; // gcd = a x + b y
    BigInt y;
};

ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b);

// Inverse of a modulo m; throws PreconditionError when gcd(a, m) != 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m);

// Iterative pairwise merging. Non-coprime moduli are rejected naming both indices.
CrtSolution crt_solve(const CongruenceSystem& system);

bool satisfies(const CongruenceSystem& system, const BigInt& x);

} // namespace ebc
