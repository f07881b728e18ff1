#include "congrue/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace congrue::arith {

namespace {

constexpr std::uint64_t kTrialDivisionLimit = 1u << 20;

// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial factor of
// the odd composite n.
Int pollard_rho(const Int& n)
{
    for (unsigned long c = 1;; ++c) {
        Int y = 2, x, ys, g = 1, q = 1;
        const unsigned long m = 128;
        unsigned long r = 1;
        auto step = [&](const Int& v) -> Int { return (v * v + c) % n; };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = step(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = step(y);
                    Int diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                Int diff = x - ys;
                g = gcd(abs(diff), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

bool probably_prime(const Int& n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

void split_into(const Int& n, std::vector<Int>& out)
{
    if (n == 1)
        return;
    if (probably_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = pollard_rho(n);
    split_into(d, out);
    split_into(Int(n / d), out);
}

} // namespace

Valuation valuation(const Int& n, std::uint64_t q)
{
    if (n == 0)
        throw std::invalid_argument("valuation of zero is infinite");
    if (q < 2)
        throw std::invalid_argument("valuation base must be prime");
    Valuation v{0, n};
    const Int qq = from_u64(q);
    while (mpz_divisible_p(v.cofactor.get_mpz_t(), qq.get_mpz_t())) {
        v.cofactor /= qq;
        ++v.k;
    }
    return v;
}

unsigned ord(const Int& n, std::uint64_t q)
{
    return valuation(n, q).k;
}

int legendre(const Int& a, std::uint64_t l)
{
    if (l < 3 || l % 2 == 0 || !is_prime(l))
        throw std::invalid_argument("legendre: modulus " + std::to_string(l) + " is not an odd prime");
    const std::uint64_t r = mod(a, l);
    if (r == 0)
        return 0;
    return powmod(r, (l - 1) / 2, l) == 1 ? 1 : -1;
}

int legendre(std::int64_t a, std::uint64_t l)
{
    return legendre(Int(static_cast<long>(a)), l);
}

PrimeList primes_upto(std::uint64_t bound)
{
    PrimeList primes;
    if (bound < 2)
        return primes;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        if (i <= bound / i)
            for (std::uint64_t j = i * i; j <= bound; j += i)
                composite[j] = true;
    }
    return primes;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0)
            return n == p;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m)
{
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (r != 1)
        throw std::invalid_argument("invmod: not a unit");
    return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(m)) : static_cast<std::uint64_t>(t);
}

std::uint64_t mod(const Int& a, std::uint64_t m)
{
    if (m <= 0xffffffffUL)
        return mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(m));
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), from_u64(m).get_mpz_t());
    return to_u64(r);
}

std::uint64_t mod(std::int64_t a, std::uint64_t m)
{
    const std::int64_t r = a % static_cast<std::int64_t>(m);
    return r < 0 ? static_cast<std::uint64_t>(r + static_cast<std::int64_t>(m)) : static_cast<std::uint64_t>(r);
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t l)
{
    a %= l;
    if (a == 0)
        return 0;
    if (powmod(a, (l - 1) / 2, l) != 1)
        return std::nullopt;
    if (l % 4 == 3)
        return powmod(a, (l + 1) / 4, l);
    std::uint64_t q = l - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (l - 1) / 2, l) != l - 1)
        ++z;
    std::uint64_t m = s;
    std::uint64_t c = powmod(z, q, l);
    std::uint64_t t = powmod(a, q, l);
    std::uint64_t r = powmod(a, (q + 1) / 2, l);
    while (t != 1) {
        std::uint64_t i = 0, t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, l);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j)
            b = mulmod(b, b, l);
        m = i;
        c = mulmod(b, b, l);
        t = mulmod(t, c, l);
        r = mulmod(r, b, l);
    }
    return r;
}

std::vector<PrimePower> factor(const Int& n)
{
    if (n == 0)
        throw std::invalid_argument("factor: zero has no factorization");
    Int rest = abs(n);
    std::vector<PrimePower> result;
    for (std::uint64_t p = 2; p <= kTrialDivisionLimit; p += (p == 2 ? 1 : 2)) {
        if (rest == 1)
            break;
        const Int pp = from_u64(p);
        if (pp * pp > rest)
            break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) {
            PrimePower pw{pp, 0};
            while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) {
                rest /= pp;
                ++pw.exponent;
            }
            result.push_back(pw);
        }
    }
    if (rest != 1) {
        std::vector<Int> big;
        split_into(rest, big);
        std::sort(big.begin(), big.end());
        for (const auto& q : big) {
            if (!result.empty() && result.back().prime == q)
                ++result.back().exponent;
            else
                result.push_back({q, 1});
        }
    }
    return result;
}

std::vector<Int> prime_divisors(const Int& n)
{
    std::vector<Int> out;
    for (const auto& pw : factor(n))
        out.push_back(pw.prime);
    return out;
}

Int squarefree_part(const Int& n)
{
    Int d = sgn(n) < 0 ? -1 : 1;
    for (const auto& pw : factor(n))
        if (pw.exponent % 2 == 1)
            d *= pw.prime;
    return d;
}

bool is_squarefree(const Int& n)
{
    if (n == 0)
        return false;
    for (const auto& pw : factor(n))
        if (pw.exponent > 1)
            return false;
    return true;
}

bool fits_u64(const Int& n)
{
    return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Int& n)
{
    if (!fits_u64(n))
        throw std::out_of_range("integer does not fit in 64 bits: " + n.get_str());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
    return out;
}

Int from_u64(std::uint64_t n)
{
    Int out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(n), 0, 0, &n);
    return out;
}

std::string to_string(const Int& n)
{
    return n.get_str();
}

} // namespace congrue::arith
