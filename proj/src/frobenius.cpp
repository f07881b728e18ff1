#include "congrue/frobenius.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <vector>

#include <unistd.h>

#include "congrue/digest.hpp"
#include "congrue/errors.hpp"
#include "congrue/local.hpp"

namespace congrue {

namespace {

using u64 = std::uint64_t;

bool hasse_ok(long a, u64 l)
{
    const auto sq = static_cast<unsigned __int128>(static_cast<u64>(std::labs(a))) * static_cast<u64>(std::labs(a));
    return sq <= static_cast<unsigned __int128>(4) * l;
}

u64 isqrt(u64 n)
{
    auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

// Affine arithmetic on y^2 = x^3 + a x + b over F_l, l >= 5.
class ShortCurve {
public:
    struct Point {
        u64 x = 0, y = 0;
        bool infinity = true;
    };

    ShortCurve(u64 a, u64 b, u64 l) : a_(a), b_(b), l_(l) {}

    u64 rhs(u64 x) const
    {
        using arith::mulmod;
        return (mulmod(mulmod(x, x, l_), x, l_) + mulmod(a_, x, l_) + b_) % l_;
    }

    Point add(const Point& p, const Point& q) const
    {
        using arith::mulmod;
        if (p.infinity)
            return q;
        if (q.infinity)
            return p;
        u64 lambda;
        if (p.x == q.x) {
            if ((p.y + q.y) % l_ == 0)
                return {};
            const u64 num = (3 * mulmod(p.x, p.x, l_) % l_ + a_) % l_;
            lambda = mulmod(num, arith::invmod(2 * p.y % l_, l_), l_);
        } else {
            const u64 num = (q.y + l_ - p.y) % l_;
            const u64 den = (q.x + l_ - p.x) % l_;
            lambda = mulmod(num, arith::invmod(den, l_), l_);
        }
        const u64 x3 = (mulmod(lambda, lambda, l_) + 2 * l_ - p.x - q.x) % l_;
        const u64 y3 = (mulmod(lambda, (p.x + l_ - x3) % l_, l_) + l_ - p.y) % l_;
        return {x3, y3, false};
    }

    Point multiply(Point p, u64 k) const
    {
        Point acc;
        while (k) {
            if (k & 1)
                acc = add(acc, p);
            p = add(p, p);
            k >>= 1;
        }
        return acc;
    }

    std::optional<Point> random_point(std::mt19937_64& rng) const
    {
        for (int tries = 0; tries < 64; ++tries) {
            const u64 x = rng() % l_;
            const auto y = arith::sqrt_mod(rhs(x), l_);
            if (y)
                return Point{x, (rng() & 1) ? *y : (l_ - *y) % l_, false};
        }
        return std::nullopt;
    }

    // Some positive multiple of ord(p) in [lo, hi]; the curve order lies there.
    u64 multiple_in_interval(const Point& p, u64 lo, u64 hi) const
    {
        const u64 m = isqrt(hi - lo + 1) + 1;
        std::unordered_map<u64, u64> baby;
        Point jp = p;
        for (u64 j = 1; j < m; ++j) {
            baby.emplace(jp.x, j);
            jp = add(jp, p);
        }
        const Point giant = multiply(p, m);
        Point r = multiply(p, lo);
        for (u64 base = lo; base <= hi + m; base += m) {
            if (r.infinity)
                return base;
            if (auto it = baby.find(r.x); it != baby.end()) {
                const u64 j = it->second;
                const Point pj = multiply(p, j);
                if (pj.y == r.y) {
                    if (base > j)
                        return base - j;
                } else {
                    return base + j;
                }
            }
            r = add(r, giant);
        }
        throw std::logic_error("bsgs: no multiple of the point order in the Hasse interval");
    }

    u64 order(const Point& p, u64 lo, u64 hi) const
    {
        u64 n = multiple_in_interval(p, lo, hi);
        for (const auto& pw : arith::factor(arith::from_u64(n))) {
            const u64 q = arith::to_u64(pw.prime);
            for (unsigned e = 0; e < pw.exponent && n % q == 0; ++e) {
                if (!multiply(p, n / q).infinity)
                    break;
                n /= q;
            }
        }
        return n;
    }

private:
    u64 a_, b_, l_;
};

void require_prime(u64 l, const char* who)
{
    if (!arith::is_prime(l))
        throw std::invalid_argument(std::string(who) + ": " + std::to_string(l) + " is not prime");
}

void require_good(const Invariants& inv, u64 l)
{
    if (arith::mod(inv.discriminant, l) == 0)
        throw WrongDispatchError("prime " + std::to_string(l) + " divides the discriminant; not a good prime");
}

long count_at_two(const WeierstrassModel& m)
{
    long points = 1;
    const std::array<u64, 5> a{arith::mod(m.a1, 2), arith::mod(m.a2, 2), arith::mod(m.a3, 2), arith::mod(m.a4, 2),
                               arith::mod(m.a6, 2)};
    for (u64 x = 0; x < 2; ++x)
        for (u64 y = 0; y < 2; ++y)
            if ((y * y + a[0] * x * y + a[2] * y + x * x * x + a[1] * x * x + a[3] * x + a[4]) % 2 == 0)
                ++points;
    return 3 - points;
}

} // namespace

namespace frobenius {

std::string curve_key(const WeierstrassModel& minimal)
{
    return sha256_hex(model::format(minimal));
}

long ap_good(const WeierstrassModel& m, std::uint64_t l)
{
    require_prime(l, "ap_good");
    const auto inv = model::invariants(m);
    require_good(inv, l);
    if (l == 2)
        return count_at_two(m);

    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    std::vector<signed char> chi(l, -1);
    chi[0] = 0;
    for (u64 y = 1; y <= l / 2; ++y)
        chi[arith::mulmod(y, y, l)] = 1;
    const u64 c2 = arith::mod(inv.b2, l);
    const u64 c1 = arith::mod(Int(2 * inv.b4), l);
    const u64 c0 = arith::mod(inv.b6, l);
    const u64 c3 = 4 % l;
    long sum = 0;
    for (u64 x = 0; x < l; ++x) {
        u64 f = (arith::mulmod(c3, x, l) + c2) % l;
        f = (arith::mulmod(f, x, l) + c1) % l;
        f = (arith::mulmod(f, x, l) + c0) % l;
        sum += chi[f];
    }
    return -sum;
}

long ap_good_bsgs(const WeierstrassModel& m, std::uint64_t l)
{
    require_prime(l, "ap_good_bsgs");
    const auto inv = model::invariants(m);
    require_good(inv, l);
    if (l < 5)
        return ap_good(m, l);

    const u64 a = arith::mod(Int(-27 * inv.c4), l);
    const u64 b = arith::mod(Int(-54 * inv.c6), l);
    u64 nonresidue = 2;
    while (arith::powmod(nonresidue, (l - 1) / 2, l) != l - 1)
        ++nonresidue;
    const u64 g2 = arith::mulmod(nonresidue, nonresidue, l);
    const ShortCurve curve(a, b, l);
    const ShortCurve twist(arith::mulmod(a, g2, l), arith::mulmod(b, arith::mulmod(g2, nonresidue, l), l), l);

    const u64 width = isqrt(4 * l);
    const u64 lo = l + 1 - width, hi = l + 1 + width;
    std::mt19937_64 rng(l * 0x9e3779b97f4a7c15ULL + 1);
    u64 exponent_curve = 1, exponent_twist = 1;
    for (int round = 0; round < 64; ++round) {
        const bool on_twist = round % 2 == 1;
        const ShortCurve& c = on_twist ? twist : curve;
        const auto point = c.random_point(rng);
        if (!point)
            continue;
        const u64 ord = c.order(*point, lo, hi);
        u64& exponent = on_twist ? exponent_twist : exponent_curve;
        exponent = std::lcm(exponent, ord);

        // #E = N and #E^twist = 2l + 2 - N, both in [lo, hi].
        std::optional<u64> found;
        bool unique = true;
        for (u64 n = (lo + exponent_curve - 1) / exponent_curve * exponent_curve; n <= hi; n += exponent_curve) {
            if ((2 * l + 2 - n) % exponent_twist != 0)
                continue;
            if (found) {
                unique = false;
                break;
            }
            found = n;
        }
        if (found && unique)
            return static_cast<long>(l + 1) - static_cast<long>(*found);
    }
    // Only reachable for very small l, where the group structure can defeat
    // the exponent argument; count directly.
    return ap_good(m, l);
}

long ap(const WeierstrassModel& minimal, std::uint64_t l)
{
    require_prime(l, "ap");
    if (arith::mod(model::discriminant(minimal), l) != 0)
        return l > kBsgsThreshold ? ap_good_bsgs(minimal, l) : ap_good(minimal, l);
    switch (local::reduction_type(minimal, l).kind) {
    case ReductionKind::MultiplicativeSplit: return 1;
    case ReductionKind::MultiplicativeNonsplit: return -1;
    case ReductionKind::Additive: return 0;
    case ReductionKind::Good: break;
    }
    throw std::logic_error("ap: good reduction at a prime dividing the discriminant");
}

ApTable ap_table(const WeierstrassModel& m, std::uint64_t bound, const ApCache* cache)
{
    if (bound < 2)
        throw std::invalid_argument("ap_table: bound must be at least 2");
    const auto minimal = model::minimal_model(m).model;
    ApTable cached = cache ? cache->load(minimal) : ApTable{};

    ApTable out;
    out.curve_key = curve_key(minimal);
    out.bound = bound;
    for (const u64 l : arith::primes_upto(bound)) {
        if (auto it = cached.values.find(l); it != cached.values.end()) {
            out.values.emplace(l, it->second);
            continue;
        }
        const long a = ap(minimal, l);
        if (!hasse_ok(a, l))
            throw std::logic_error("Hasse bound violated at l = " + std::to_string(l));
        out.values.emplace(l, a);
        cached.values.emplace(l, a);
        ++out.computed;
    }
    if (cache && out.computed > 0) {
        cached.bound = std::max(cached.bound, bound);
        cache->store(minimal, cached);
    }
    return out;
}

} // namespace frobenius

std::filesystem::path ApCache::file_for(const WeierstrassModel& minimal) const
{
    return root_ / frobenius::curve_key(minimal) / "ap.tsv";
}

ApTable ApCache::load(const WeierstrassModel& minimal) const
{
    ApTable table;
    table.curve_key = frobenius::curve_key(minimal);
    const auto path = file_for(minimal);
    std::ifstream in(path);
    if (!in)
        return table;

    const std::string expected_header = "# curve " + model::format(minimal);
    std::string line;
    std::size_t lineno = 0;
    u64 previous = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (lineno == 1) {
            if (line != expected_header)
                throw CacheIntegrityError(where + ": header '" + line + "' does not match " + expected_header);
            continue;
        }
        if (line.empty())
            continue;
        std::istringstream fields(line);
        u64 l = 0;
        long a = 0;
        char tab = 0;
        if (!(fields >> l) || !fields.get(tab) || tab != '\t' || !(fields >> a) || !fields.eof())
            throw CacheIntegrityError(where + ": malformed entry '" + line + "'");
        if (!arith::is_prime(l) || l <= previous)
            throw CacheIntegrityError(where + ": entry for l = " + std::to_string(l) +
                                      " is not a prime in ascending order");
        if (!hasse_ok(a, l))
            throw CacheIntegrityError(where + ": entry a_" + std::to_string(l) + " = " + std::to_string(a) +
                                      " violates the Hasse bound");
        previous = l;
        table.values.emplace(l, a);
    }
    if (lineno == 0)
        throw CacheIntegrityError(path.string() + ": empty cache file");
    table.bound = previous;
    return table;
}

void ApCache::store(const WeierstrassModel& minimal, const ApTable& table) const
{
    const auto path = file_for(minimal);
    std::filesystem::create_directories(path.parent_path());
    std::random_device rd;
    const auto tmp = path.parent_path() /
                     ("ap.tsv.tmp." + std::to_string(::getpid()) + "." + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << "# curve " << model::format(minimal) << '\n';
        for (const auto& [l, a] : table.values)
            out << l << '\t' << a << '\n';
        if (!out.flush())
            throw std::runtime_error("failed to write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace congrue
