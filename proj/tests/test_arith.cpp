#include <doctest.h>

#include <random>
#include <set>

#include "congrue/arith.hpp"
#include "fixtures.hpp"

using namespace congrue;

TEST_CASE("legendre matches enumerated squares")
{
    CHECK(arith::legendre(1, 7) == 1);
    CHECK(arith::legendre(0, 5) == 0);
    CHECK(arith::legendre(2, 13) == -1);

    for (std::uint64_t l : {3u, 5u, 7u, 13u, 17u, 101u}) {
        std::set<std::uint64_t> squares;
        for (std::uint64_t y = 1; y < l; ++y)
            squares.insert(y * y % l);
        for (long a = -60; a <= 60; ++a) {
            const auto r = static_cast<std::uint64_t>(((a % static_cast<long>(l)) + static_cast<long>(l)) % static_cast<long>(l));
            const int expected = r == 0 ? 0 : (squares.count(r) ? 1 : -1);
            CHECK(arith::legendre(a, l) == expected);
        }
    }
}

TEST_CASE("legendre rejects non-odd-prime moduli")
{
    CHECK_THROWS_AS(arith::legendre(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(arith::legendre(3, 9), std::invalid_argument);
    CHECK_THROWS_AS(arith::legendre(3, 1), std::invalid_argument);
}

TEST_CASE("legendre is multiplicative")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-100000, 100000);
    const auto primes = arith::primes_upto(400);
    for (int i = 0; i < 500; ++i) {
        const long a = dist(rng), b = dist(rng);
        const auto l = primes[1 + rng() % (primes.size() - 1)];
        CHECK(arith::legendre(Int(a) * b, l) == arith::legendre(a, l) * arith::legendre(b, l));
    }
}

TEST_CASE("valuation")
{
    auto v = arith::valuation(Int(-297675), 3);
    CHECK(v.k == 5);
    CHECK(v.cofactor == -1225);

    Int thirteen17;
    mpz_ui_pow_ui(thirteen17.get_mpz_t(), 13, 17);
    CHECK(arith::valuation(Int(-297675) * thirteen17, 13).k == 17);

    v = arith::valuation(Int(1), 7);
    CHECK(v.k == 0);
    CHECK(v.cofactor == 1);

    CHECK_THROWS_AS(arith::valuation(Int(0), 5), std::invalid_argument);
}

TEST_CASE("valuation round trip")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Int n = Int(static_cast<long>(rng() % 1000000) - 500000);
        if (n == 0)
            continue;
        n *= Int(static_cast<long>(rng() % 50 + 1));
        for (std::uint64_t q : {2u, 3u, 5u, 7u, 13u}) {
            const auto v = arith::valuation(n, q);
            Int qk;
            mpz_ui_pow_ui(qk.get_mpz_t(), q, v.k);
            CHECK(qk * v.cofactor == n);
            CHECK(arith::mod(v.cofactor, q) != 0);
        }
    }
}

TEST_CASE("primes_upto")
{
    CHECK(arith::primes_upto(10) == PrimeList{2, 3, 5, 7});
    CHECK(arith::primes_upto(1).empty());
    CHECK(arith::primes_upto(0).empty());
    CHECK(arith::primes_upto(100).size() == 25);

    const auto primes = arith::primes_upto(5000);
    std::set<std::uint64_t> got(primes.begin(), primes.end());
    for (std::uint64_t n = 0; n <= 5000; ++n)
        CHECK(got.count(n) == (fixtures::trial_division_prime(n) ? 1u : 0u));
    CHECK(std::is_sorted(primes.begin(), primes.end()));
}

TEST_CASE("is_prime agrees with trial division and handles 64-bit inputs")
{
    for (std::uint64_t n = 0; n < 20000; ++n)
        CHECK(arith::is_prime(n) == fixtures::trial_division_prime(n));
    CHECK(arith::is_prime(18446744073709551557ULL));
    CHECK_FALSE(arith::is_prime(18446744073709551557ULL - 2));
}

TEST_CASE("sqrt_mod")
{
    for (std::uint64_t l : {5u, 13u, 17u, 41u, 97u, 65537u}) {
        for (std::uint64_t a = 0; a < std::min<std::uint64_t>(l, 200); ++a) {
            const auto r = arith::sqrt_mod(a, l);
            if (a == 0 || arith::legendre(static_cast<std::int64_t>(a), l) == 1) {
                REQUIRE(r);
                CHECK(arith::mulmod(*r, *r, l) == a);
            } else {
                CHECK_FALSE(r);
            }
        }
    }
}

TEST_CASE("factor and squarefree part")
{
    Int thirteen17;
    mpz_ui_pow_ui(thirteen17.get_mpz_t(), 13, 17);
    const auto f = arith::factor(Int(-297675) * thirteen17);
    REQUIRE(f.size() == 4);
    CHECK(f[0].prime == 3);
    CHECK(f[0].exponent == 5);
    CHECK(f[3].prime == 13);
    CHECK(f[3].exponent == 17);

    // Product of two primes above the trial-division range.
    const Int big = Int("1000000007") * Int("998244353");
    const auto g = arith::factor(big);
    REQUIRE(g.size() == 2);
    CHECK(g[0].prime == Int("998244353"));
    CHECK(g[1].prime == Int("1000000007"));

    CHECK(arith::squarefree_part(Int(-12)) == -3);
    CHECK(arith::squarefree_part(Int(50)) == 2);
    CHECK(arith::is_squarefree(Int(-7)));
    CHECK_FALSE(arith::is_squarefree(Int(18)));
    CHECK_THROWS_AS(arith::factor(Int(0)), std::invalid_argument);
}

TEST_CASE("u64 conversions")
{
    const std::uint64_t big = 18446744073709551557ULL;
    CHECK(arith::to_u64(arith::from_u64(big)) == big);
    CHECK(arith::mod(Int(-1), big) == big - 1);
    CHECK_THROWS_AS(arith::to_u64(Int(-1)), std::out_of_range);
}
