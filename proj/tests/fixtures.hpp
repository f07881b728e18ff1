#pragma once

// Shared curves and brute-force oracles. Nothing here calls into the
// library's counting or local-data code.

#include <cstdint>
#include <random>
#include <vector>

#include "congrue/model.hpp"

namespace fixtures {

inline congrue::WeierstrassModel curve_e() { return {1, 0, 0, -8, 27}; }
inline congrue::WeierstrassModel curve_e_prime() { return {1, 0, 0, 8124402, congrue::Int("-11887136703")}; }
inline congrue::WeierstrassModel curve_11a() { return {0, -1, 1, -10, -20}; }

/// #E(F_l) by enumerating every (x, y) on the long Weierstrass equation.
inline long brute_count(const congrue::WeierstrassModel& m, std::uint64_t l)
{
    auto r = [l](const congrue::Int& a) {
        congrue::Int t;
        mpz_fdiv_r_ui(t.get_mpz_t(), a.get_mpz_t(), l);
        return static_cast<long>(t.get_ui());
    };
    const long L = static_cast<long>(l);
    const long a1 = r(m.a1), a2 = r(m.a2), a3 = r(m.a3), a4 = r(m.a4), a6 = r(m.a6);
    long n = 1;
    for (long x = 0; x < L; ++x)
        for (long y = 0; y < L; ++y)
            if (((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % L + L) % L == 0)
                ++n;
    return n;
}

inline long brute_ap(const congrue::WeierstrassModel& m, std::uint64_t l)
{
    return static_cast<long>(l) + 1 - brute_count(m, l);
}

inline bool trial_division_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Random nonsingular models with small coefficients.
inline std::vector<congrue::WeierstrassModel> random_models(std::size_t count, std::uint64_t seed, long range = 50)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> small(0, 1), mid(-1, 1), big(-range, range);
    std::vector<congrue::WeierstrassModel> out;
    while (out.size() < count) {
        congrue::WeierstrassModel m{small(rng), mid(rng), small(rng), big(rng), big(rng)};
        if (congrue::model::discriminant(m) != 0)
            out.push_back(m);
    }
    return out;
}

} // namespace fixtures
