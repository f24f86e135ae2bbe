#include "ebc/crt.hpp"

#include "ebc/errors.hpp"

#include <string>

namespace ebc {
namespace {

BigInt floor_mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

void validate(const Congruence& c) {
    if (c.modulus < 2) throw PreconditionError("congruence modulus " + to_decimal(c.modulus) + " is below 2");
    if (c.residue < 0 || c.residue >= c.modulus)
        throw PreconditionError("residue " + to_decimal(c.residue) + " is not reduced modulo " + to_decimal(c.modulus));
}

} // namespace

CongruenceSystem::CongruenceSystem(std::vector<Congruence> congruences) : congruences_(std::move(congruences)) {
    for (const auto& c : congruences_) validate(c);
}

void CongruenceSystem::add(BigInt residue, BigInt modulus) {
    Congruence c{std::move(residue), std::move(modulus)};
    validate(c);
    congruences_.push_back(std::move(c));
}

ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
    BigInt old_r = a, r = b;
    BigInt old_s = 1, s = 0;
    BigInt old_t = 0, t = 1;
    BigInt q, tmp;
    while (r != 0) {
        mpz_fdiv_q(q.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
        tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    const auto g = extended_gcd(floor_mod(a, m), m);
    if (g.gcd != 1) throw PreconditionError(to_decimal(a) + " is not invertible modulo " + to_decimal(m));
    return floor_mod(g.x, m);
}

CrtSolution crt_solve(const CongruenceSystem& system) {
    const auto& cs = system.congruences();
    if (cs.empty()) throw PreconditionError("crt_solve: empty congruence system");
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            BigInt g;
            mpz_gcd(g.get_mpz_t(), cs[i].modulus.get_mpz_t(), cs[j].modulus.get_mpz_t());
            if (g != 1)
                throw PreconditionError("crt_solve: moduli #" + std::to_string(i) + " (" + to_decimal(cs[i].modulus) +
                                        ") and #" + std::to_string(j) + " (" + to_decimal(cs[j].modulus) +
                                        ") share the factor " + to_decimal(g));
        }
    }

    // x = r (mod M) merged with x = c (mod m):  x = r + M * ((c - r) M^-1 mod m).
    BigInt r = cs.front().residue, M = cs.front().modulus;
    for (std::size_t i = 1; i < cs.size(); ++i) {
        const auto& [c, m] = cs[i];
        const BigInt t = floor_mod((c - r) * mod_inverse(M, m), m);
        r += M * t;
        M *= m;
    }
    CrtSolution out{floor_mod(r, M), M};
    if (!satisfies(system, out.residue))
        throw ConstructionError("x = a_i (mod M_i)", "crt_solve: solution fails back-substitution");
    return out;
}

bool satisfies(const CongruenceSystem& system, const BigInt& x) {
    for (const auto& c : system.congruences())
        if (floor_mod(x - c.residue, c.modulus) != 0) return false;
    return true;
}

} // namespace ebc
