#include <doctest.h>

#include <random>

#include "congrue/errors.hpp"
#include "congrue/local.hpp"
#include "fixtures.hpp"

using namespace congrue;

namespace {

Int radical(const Int& n)
{
    Int r = 1;
    for (const auto& q : arith::prime_divisors(n))
        r *= q;
    return r;
}

std::vector<WeierstrassModel> random_minimal(std::size_t count, std::uint64_t seed, long range = 50)
{
    std::vector<WeierstrassModel> out;
    for (const auto& m : fixtures::random_models(count, seed, range))
        out.push_back(model::minimal_model(m).model);
    return out;
}

} // namespace

TEST_CASE("local data of E")
{
    const auto prof = local::profile(fixtures::curve_e());
    CHECK(prof.conductor == 3675);
    REQUIRE(prof.bad.size() == 3);

    const auto* at3 = prof.at(3);
    REQUIRE(at3);
    CHECK(at3->kind == ReductionKind::MultiplicativeSplit);
    CHECK(at3->kodaira.str() == "I5");
    CHECK(at3->f == 1);
    CHECK_FALSE(at3->phi_order);

    for (std::uint64_t q : {5u, 7u}) {
        const auto* ld = prof.at(q);
        REQUIRE(ld);
        CHECK(ld->kind == ReductionKind::Additive);
        CHECK(ld->kodaira.str() == "II");
        CHECK(ld->f == 2);
        CHECK(ld->v_delta == 2);
        CHECK(ld->potentially_good);
        CHECK(ld->phi_order == 6u);
    }
    CHECK_FALSE(prof.at(13));
}

TEST_CASE("local data of E'")
{
    const auto prof = local::profile(fixtures::curve_e_prime());
    CHECK(prof.conductor == 47775);
    REQUIRE(prof.bad.size() == 4);
    CHECK(prof.at(3)->kind == ReductionKind::MultiplicativeSplit);
    CHECK(prof.at(3)->kodaira.str() == "I2");
    CHECK(prof.at(5)->kodaira.str() == "II");
    CHECK(prof.at(7)->kodaira.str() == "II");
    CHECK(prof.at(5)->phi_order == 6u);
    CHECK(prof.at(13)->kind == ReductionKind::MultiplicativeSplit);
    CHECK(prof.at(13)->kodaira.str() == "I17");
    CHECK(prof.at(13)->f == 1);
}

TEST_CASE("conductors of tabulated curves")
{
    struct Row {
        WeierstrassModel m;
        long n;
    };
    const std::vector<Row> rows{
        {{0, -1, 1, -10, -20}, 11}, {{0, -1, 1, 0, 0}, 11},     {{1, 0, 1, 4, -6}, 14},
        {{1, 1, 1, -10, -10}, 15},  {{1, -1, 1, -1, -14}, 17},  {{0, 1, 1, -9, -15}, 19},
        {{0, 1, 0, 4, 4}, 20},      {{0, -1, 0, -4, 4}, 24},    {{1, 0, 1, -5, -8}, 26},
        {{0, 0, 1, 0, -7}, 27},     {{0, 0, 1, 0, 0}, 27},      {{1, 0, 1, 1, 2}, 30},
        {{0, 0, 0, -1, 0}, 32},     {{0, 0, 0, 0, 1}, 36},      {{0, 0, 1, -1, 0}, 37},
        {{0, 1, 1, 0, 0}, 43},      {{0, 1, 0, -4, -4}, 48},    {{1, -1, 0, -2, -1}, 49},
        {{1, -1, 1, 0, 0}, 53},     {{0, 0, 0, -4, 0}, 64},     {{0, 1, 1, -2, 0}, 389},
        {{0, 0, 1, -7, 6}, 5077},
    };
    for (const auto& row : rows) {
        CAPTURE(model::format(row.m));
        CHECK(local::conductor(row.m) == row.n);
    }
}

TEST_CASE("Kodaira symbols at 2 and 3")
{
    // y^2 + y = x^3 - 7 has v_3(disc) = 9 and conductor exponent 3 (IV*); y^2 + y = x^3 has v = 3 (II).
    auto ld = local::reduction_type({0, 0, 1, 0, -7}, 3);
    CHECK(ld.kodaira.str() == "IV*");
    CHECK(ld.f == 3);
    ld = local::reduction_type({0, 0, 1, 0, 0}, 3);
    CHECK(ld.kodaira.str() == "II");
    CHECK(ld.f == 3);
    ld = local::reduction_type({0, 0, 0, -1, 0}, 2);
    CHECK(ld.kind == ReductionKind::Additive);
    CHECK(ld.f == 5);
    ld = local::reduction_type({1, 0, 1, 4, -6}, 2);
    CHECK(ld.kodaira.str() == "I6");
}

TEST_CASE("NotMinimalError on non-minimal models")
{
    CHECK_THROWS_AS(local::reduction_type({2, 0, 0, -128, 1728}, 2), NotMinimalError);
    Transformation fifth;
    fifth.u = Rational(1, 5);
    const auto scaled = model::transform(fixtures::curve_e(), fifth);
    CHECK_THROWS_AS(local::reduction_type(scaled, 5), NotMinimalError);
    CHECK_THROWS_AS(local::reduction_type_shortcut(scaled, 5), NotMinimalError);
}

TEST_CASE("rad(N) = rad(disc) and conductor exponent bounds")
{
    for (const auto& m : random_minimal(200, 7, 2000)) {
        CAPTURE(model::format(m));
        const auto prof = local::profile(m);
        CHECK(radical(prof.conductor) == radical(model::discriminant(m)));
        for (const auto& ld : prof.bad) {
            CHECK(ld.f >= 1);
            if (ld.q == 2)
                CHECK(ld.f <= 8);
            else if (ld.q == 3)
                CHECK(ld.f <= 5);
            else
                CHECK(ld.f <= 2);
            CHECK((ld.f == 1) == ld.is_multiplicative());
        }
    }
}

TEST_CASE("a_q at bad primes agrees with point counts on the singular reduction")
{
    // Split: q - 1 nonsingular points, nonsplit: q + 1, additive: q (each plus the node/cusp).
    for (const auto& m : random_minimal(200, 11, 300)) {
        for (const auto& ld : local::profile(m).bad) {
            if (ld.q > 400)
                continue;
            CAPTURE(model::format(m));
            CAPTURE(ld.q);
            const long a = fixtures::brute_ap(m, ld.q);
            switch (ld.kind) {
            case ReductionKind::MultiplicativeSplit: CHECK(a == 1); break;
            case ReductionKind::MultiplicativeNonsplit: CHECK(a == -1); break;
            case ReductionKind::Additive: CHECK(a == 0); break;
            case ReductionKind::Good: FAIL("good reduction listed as bad"); break;
            }
        }
    }
}

TEST_CASE("splitness agrees with the -c6 residue rule for odd q")
{
    for (const auto& m : random_minimal(200, 13, 3000)) {
        const auto c6 = model::invariants(m).c6;
        for (const auto& ld : local::profile(m).bad) {
            if (ld.q == 2 || !ld.is_multiplicative())
                continue;
            CAPTURE(model::format(m));
            const bool split = arith::legendre(Int(-c6), ld.q) == 1;
            CHECK(split == (ld.kind == ReductionKind::MultiplicativeSplit));
        }
    }
}

TEST_CASE("Tate agrees with the valuation shortcut for q >= 5")
{
    for (const auto& m : random_minimal(300, 19, 5000)) {
        for (const auto& ld : local::profile(m).bad) {
            if (ld.q < 5)
                continue;
            CAPTURE(model::format(m));
            CAPTURE(ld.q);
            const auto sc = local::reduction_type_shortcut(m, ld.q);
            CHECK(sc.kind == ld.kind);
            CHECK(sc.f == ld.f);
            CHECK(sc.kodaira == ld.kodaira);
            CHECK(sc.phi_order == ld.phi_order);
        }
    }
}

TEST_CASE("twisting flips splitness by the Legendre symbol; q = 1 mod 4 adds q^2")
{
    const auto e = fixtures::curve_e_prime();
    for (long d : {-1L, 2L, 5L, -7L, 11L, 17L, -23L}) {
        CAPTURE(d);
        const auto tw = model::quadratic_twist(e, Int(d));
        const auto prof = local::profile(tw);
        const auto* ld = prof.at(13);
        REQUIRE(ld);
        const bool split = arith::legendre(Int(d), 13) == 1;
        CHECK((ld->kind == ReductionKind::MultiplicativeSplit) == split);
    }
    const auto base = local::conductor(fixtures::curve_e());
    for (long q : {13L, 17L, 29L, 37L}) {
        const auto tw = model::quadratic_twist(fixtures::curve_e(), Int(q));
        CHECK(local::conductor(tw) == base * q * q);
        CHECK(local::profile(tw).at(q)->kodaira.str() == "I0*");
    }
}

TEST_CASE("phi_order")
{
    LocalData ld;
    ld.q = 7;
    ld.kind = ReductionKind::Additive;
    ld.potentially_good = true;
    const std::vector<std::pair<unsigned, unsigned>> expected{{2, 6}, {3, 4}, {4, 3}, {6, 2}, {8, 3}, {9, 4}, {10, 6}};
    for (const auto& [v, e] : expected) {
        ld.v_delta = v;
        CHECK(local::phi_order(ld) == e);
    }
    ld.q = 3;
    CHECK_FALSE(local::phi_order(ld));
    ld.q = 7;
    ld.potentially_good = false;
    CHECK_FALSE(local::phi_order(ld));
    ld.kind = ReductionKind::MultiplicativeSplit;
    CHECK_FALSE(local::phi_order(ld));
}

TEST_CASE("irreducibility certificates")
{
    auto cert = local::irreducibility_certificate(fixtures::curve_e(), 17);
    REQUIRE(cert);
    CHECK(cert->q == 5);
    CHECK(cert->e == 6);
    CHECK(cert->p == 17);
    cert = local::irreducibility_certificate(fixtures::curve_e_prime(), 17);
    REQUIRE(cert);
    CHECK(cert->q == 5);
    CHECK(local::irreducibility_certificate(fixtures::curve_e(), 11));
    // e = 6 divides p - 1, and q = p is excluded.
    CHECK_FALSE(local::irreducibility_certificate(fixtures::curve_e(), 7));
    CHECK_FALSE(local::irreducibility_certificate(fixtures::curve_e(), 13));
    CHECK_FALSE(local::irreducibility_certificate(fixtures::curve_11a(), 17));
    CHECK_THROWS_AS(local::irreducibility_certificate(fixtures::curve_e(), 3), std::invalid_argument);
    CHECK_THROWS_AS(local::irreducibility_certificate(fixtures::curve_e(), 2), std::invalid_argument);
}
