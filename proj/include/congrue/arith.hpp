#pragma once

// Exact integer substrate: big integers, word-size modular arithmetic,
// sieving, valuations and the Legendre symbol.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace congrue {

using Int = mpz_class;
using Rational = mpq_class;

using PrimeList = std::vector<std::uint64_t>;

namespace arith {

struct Valuation {
    unsigned k = 0;
    Int cofactor;
};

/// n = q^k * cofactor with q not dividing cofactor. Throws std::invalid_argument for n == 0.
Valuation valuation(const Int& n, std::uint64_t q);

/// v_q(n), for n != 0.
unsigned ord(const Int& n, std::uint64_t q);

/// Legendre symbol (a | l) for an odd prime l.
int legendre(const Int& a, std::uint64_t l);
int legendre(std::int64_t a, std::uint64_t l);

/// All primes <= bound, ascending.
PrimeList primes_upto(std::uint64_t bound);

bool is_prime(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse of a modulo m; a must be a unit.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
/// a mod m in [0, m).
std::uint64_t mod(const Int& a, std::uint64_t m);
std::uint64_t mod(std::int64_t a, std::uint64_t m);

/// Square root of a modulo an odd prime l (Tonelli-Shanks); nullopt for non-residues.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t l);

struct PrimePower {
    Int prime;
    unsigned exponent = 0;
};

/// Prime factorization of |n|, ascending. Trial division, then Pollard rho on any
/// composite cofactor. n must be nonzero.
std::vector<PrimePower> factor(const Int& n);

/// Distinct primes dividing n, ascending.
std::vector<Int> prime_divisors(const Int& n);

/// Squarefree d with n = d * m^2 (sign kept). n must be nonzero.
Int squarefree_part(const Int& n);

bool is_squarefree(const Int& n);

/// Fits in an unsigned 64-bit word.
bool fits_u64(const Int& n);
std::uint64_t to_u64(const Int& n);
Int from_u64(std::uint64_t n);

std::string to_string(const Int& n);

} // namespace arith
} // namespace congrue
