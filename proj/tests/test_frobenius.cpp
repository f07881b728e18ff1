#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "congrue/errors.hpp"
#include "congrue/frobenius.hpp"
#include "fixtures.hpp"

using namespace congrue;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path() /
               ("congrue-test-" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

bool good_at(const WeierstrassModel& m, std::uint64_t l)
{
    return arith::mod(model::discriminant(m), l) != 0;
}

} // namespace

TEST_CASE("a_l of E at small primes")
{
    const auto e = fixtures::curve_e();
    CHECK(frobenius::ap_good(e, 2) == -1);
    CHECK(frobenius::ap_good(e, 11) == 0);
    CHECK(frobenius::ap_good(e, 13) == -3);
    CHECK(frobenius::ap_good(e, 29) == -8);
    CHECK_THROWS_AS(frobenius::ap_good(e, 5), WrongDispatchError);
    CHECK_THROWS_AS(frobenius::ap_good(e, 3), WrongDispatchError);
    CHECK(frobenius::ap(e, 3) == 1);
    CHECK(frobenius::ap(e, 5) == 0);
    CHECK(frobenius::ap(e, 7) == 0);
}

TEST_CASE("a_l of E' at small primes")
{
    const auto ep = fixtures::curve_e_prime();
    CHECK(frobenius::ap(ep, 13) == 1);
    CHECK(frobenius::ap(ep, 29) == 9);
    CHECK(frobenius::ap(ep, 2) == -1);
    CHECK_THROWS_AS(frobenius::ap_good(ep, 13), WrongDispatchError);
}

TEST_CASE("Legendre sums agree with brute-force counting")
{
    for (const auto& m : fixtures::random_models(40, 29, 1000)) {
        for (const auto l : arith::primes_upto(60)) {
            if (!good_at(m, l))
                continue;
            CAPTURE(model::format(m));
            CAPTURE(l);
            CHECK(frobenius::ap_good(m, l) == fixtures::brute_ap(m, l));
        }
    }
}

TEST_CASE("tabulated a_l for E and E' up to 97")
{
    // Independent full (x, y) enumeration.
    const std::vector<std::tuple<std::uint64_t, long, long>> rows{
        {2, -1, -1},  {11, 0, 0},  {17, 2, 2},   {19, -1, -1}, {23, -2, -2}, {29, -8, 9},  {31, 8, -9},
        {37, -7, 10}, {41, 0, 0},  {43, 8, 8},   {47, -10, 7}, {53, 14, -3}, {59, -10, 7}, {61, -7, 10},
        {67, 5, -12}, {71, -12, 5}, {73, -11, 6}, {79, -7, 10}, {83, 14, -3}, {89, 6, 6},  {97, 9, -8},
    };
    for (const auto& [l, a, ap] : rows) {
        CAPTURE(l);
        CHECK(frobenius::ap(fixtures::curve_e(), l) == a);
        CHECK(frobenius::ap(fixtures::curve_e_prime(), l) == ap);
        CHECK((a - ap) % 17 == 0);
    }
}

TEST_CASE("BSGS agrees with naive counting")
{
    std::mt19937_64 rng(31);
    const auto primes = arith::primes_upto(5000);
    std::uniform_int_distribution<std::size_t> pick(2, primes.size() - 1);
    const auto models = fixtures::random_models(10, 37, 100000);
    for (int i = 0; i < 50; ++i) {
        const auto l = primes[pick(rng)];
        const auto& m = models[static_cast<std::size_t>(i) % models.size()];
        if (!good_at(m, l))
            continue;
        CAPTURE(model::format(m));
        CAPTURE(l);
        CHECK(frobenius::ap_good_bsgs(m, l) == frobenius::ap_good(m, l));
    }
    CHECK(frobenius::ap_good_bsgs(fixtures::curve_e(), 1009) == frobenius::ap_good(fixtures::curve_e(), 1009));
    for (std::uint64_t l : {5u, 7u, 11u, 13u})
        if (good_at(fixtures::curve_11a(), l))
            CHECK(frobenius::ap_good_bsgs(fixtures::curve_11a(), l) == fixtures::brute_ap(fixtures::curve_11a(), l));
}

TEST_CASE("BSGS above the dispatch threshold respects the Hasse bound")
{
    const auto l = 1000003u;
    for (const auto& m : {fixtures::curve_e(), fixtures::curve_e_prime(), fixtures::curve_11a()}) {
        const long a = frobenius::ap(m, l);
        CHECK(static_cast<double>(a) * a <= 4.0 * l);
        CHECK(a == frobenius::ap_good_bsgs(m, l));
    }
}

TEST_CASE("Hasse bound")
{
    for (const auto& m : fixtures::random_models(20, 43, 1000))
        for (const auto l : arith::primes_upto(400))
            if (good_at(m, l)) {
                const long a = frobenius::ap_good(m, l);
                CHECK(a * a <= 4 * static_cast<long>(l));
            }
}

TEST_CASE("twisting by d multiplies a_l by (d/l)")
{
    const auto e = fixtures::curve_e();
    for (long d : {-1L, 5L, -7L}) {
        const auto tw = model::quadratic_twist(e, Int(d));
        for (const auto l : arith::primes_upto(200)) {
            if (l == 2 || !good_at(e, l) || !good_at(tw, l))
                continue;
            CAPTURE(d);
            CAPTURE(l);
            CHECK(frobenius::ap(tw, l) == arith::legendre(Int(d), l) * frobenius::ap(e, l));
        }
    }
}

TEST_CASE("ap_table")
{
    const auto t = frobenius::ap_table(fixtures::curve_e(), 10);
    CHECK(t.values == std::map<std::uint64_t, long>{{2, -1}, {3, 1}, {5, 0}, {7, 0}});
    CHECK(t.bound == 10);
    CHECK(t.computed == 4);
    CHECK(t.curve_key == frobenius::curve_key(fixtures::curve_e()));
    // Keyed by the minimal model.
    CHECK(frobenius::ap_table(WeierstrassModel{2, 0, 0, -128, 1728}, 10).values == t.values);
}

TEST_CASE("cache hits, extension and determinism")
{
    TempDir dir;
    const ApCache cache(dir.path);
    const auto first = frobenius::ap_table(fixtures::curve_e(), 500, &cache);
    CHECK(first.computed == first.values.size());
    const auto file = cache.file_for(fixtures::curve_e());
    REQUIRE(std::filesystem::exists(file));
    CHECK(file.parent_path().filename() == frobenius::curve_key(fixtures::curve_e()));

    const auto second = frobenius::ap_table(fixtures::curve_e(), 500, &cache);
    CHECK(second.computed == 0);
    CHECK(second.values == first.values);

    const auto smaller = frobenius::ap_table(fixtures::curve_e(), 100, &cache);
    CHECK(smaller.computed == 0);
    CHECK(smaller.values.rbegin()->first == 97);

    const auto larger = frobenius::ap_table(fixtures::curve_e(), 1000, &cache);
    CHECK(larger.computed == arith::primes_upto(1000).size() - arith::primes_upto(500).size());

    std::ifstream a(file);
    const std::string before((std::istreambuf_iterator<char>(a)), {});
    frobenius::ap_table(fixtures::curve_e(), 1000, &cache);
    std::ifstream b(file);
    const std::string after((std::istreambuf_iterator<char>(b)), {});
    CHECK(before == after);
}

TEST_CASE("corrupt cache entries are rejected")
{
    TempDir dir;
    const ApCache cache(dir.path);
    frobenius::ap_table(fixtures::curve_e(), 50, &cache);
    const auto file = cache.file_for(fixtures::curve_e());

    std::ifstream in(file);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    in.close();

    SUBCASE("out-of-range trace")
    {
        const auto pos = text.find("13\t-3");
        REQUIRE(pos != std::string::npos);
        std::ofstream(file) << text.substr(0, pos) + "13\t99" + text.substr(pos + 5);
    }
    SUBCASE("wrong curve header")
    {
        std::ofstream(file) << "# curve [0,0,0,0,1]\n" + text.substr(text.find('\n') + 1);
    }
    SUBCASE("garbage")
    {
        std::ofstream(file) << text + "not a row\n";
    }
    CHECK_THROWS_AS(frobenius::ap_table(fixtures::curve_e(), 50, &cache), CacheIntegrityError);
}
