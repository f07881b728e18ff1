#include "congrue/local.hpp"

#include <numeric>
#include <stdexcept>

#include "congrue/errors.hpp"

namespace congrue {

std::string Kodaira::str() const
{
    switch (family) {
    case KodairaFamily::I: return "I" + std::to_string(n);
    case KodairaFamily::IStar: return "I" + std::to_string(n) + "*";
    case KodairaFamily::II: return "II";
    case KodairaFamily::III: return "III";
    case KodairaFamily::IV: return "IV";
    case KodairaFamily::IVStar: return "IV*";
    case KodairaFamily::IIIStar: return "III*";
    case KodairaFamily::IIStar: return "II*";
    }
    return "?";
}

std::string to_string(ReductionKind kind)
{
    switch (kind) {
    case ReductionKind::Good: return "Good";
    case ReductionKind::MultiplicativeSplit: return "MultiplicativeSplit";
    case ReductionKind::MultiplicativeNonsplit: return "MultiplicativeNonsplit";
    case ReductionKind::Additive: return "Additive";
    }
    return "?";
}

const LocalData* LocalProfile::at(std::uint64_t q) const
{
    for (const auto& ld : bad)
        if (ld.q == q)
            return &ld;
    return nullptr;
}

namespace local {

namespace {

constexpr unsigned kUnboundedValuation = 1u << 30;

// Mutable a-invariants for Tate's algorithm. Only integral (r, s, t) shifts
// with u = 1 are applied, so the discriminant never changes.
struct Coefficients {
    Int a1, a2, a3, a4, a6;

    Int b2() const { return a1 * a1 + 4 * a2; }
    Int b6() const { return a3 * a3 + 4 * a6; }
    Int b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }

    void shift(const Int& r, const Int& s, const Int& t)
    {
        const Int n1 = a1 + 2 * s;
        const Int n2 = a2 - s * a1 + 3 * r - s * s;
        const Int n3 = a3 + r * a1 + 2 * t;
        const Int n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        const Int n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        a1 = n1;
        a2 = n2;
        a3 = n3;
        a4 = n4;
        a6 = n6;
    }
};

class Tate {
public:
    Tate(const WeierstrassModel& m, std::uint64_t q)
        : c_{m.a1, m.a2, m.a3, m.a4, m.a6}, q_(q), p_(arith::from_u64(q))
    {
    }

    LocalData run();

private:
    bool divides(const Int& x, unsigned k) const
    {
        if (x == 0)
            return true;
        return arith::ord(x, q_) >= k;
    }
    Int pow(unsigned k) const
    {
        Int out;
        mpz_pow_ui(out.get_mpz_t(), p_.get_mpz_t(), k);
        return out;
    }
    Int reduce(const Int& x, const Int& modulus) const
    {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
        return r;
    }
    Int inverse(const Int& x, const Int& modulus) const
    {
        Int out;
        if (!mpz_invert(out.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t()))
            throw std::logic_error("Tate: non-invertible element");
        return out;
    }
    Int exact(const Int& x, unsigned k) const
    {
        if (!divides(x, k))
            throw std::logic_error("Tate: expected divisibility by " + p_.get_str() + "^" + std::to_string(k));
        Int out;
        mpz_divexact(out.get_mpz_t(), x.get_mpz_t(), pow(k).get_mpz_t());
        return out;
    }
    // a X^2 + b X + c with a a unit mod p.
    bool quadratic_has_root(const Int& a, const Int& b, const Int& c) const
    {
        if (q_ == 2) {
            for (int x = 0; x < 2; ++x)
                if (reduce(Int(a * x * x + b * x + c), p_) == 0)
                    return true;
            return false;
        }
        return arith::legendre(Int(b * b - 4 * a * c), q_) >= 0;
    }
    bool quadratic_distinct_roots(const Int& a, const Int& b, const Int& c) const
    {
        if (q_ == 2)
            return reduce(b, p_) != 0;
        return reduce(Int(b * b - 4 * a * c), p_) != 0;
    }
    // The repeated root of a X^2 + b X + c when it has one.
    Int quadratic_double_root(const Int& a, const Int& b, const Int& c) const
    {
        if (q_ == 2)
            return reduce(Int(c * a), p_);
        return reduce(Int(-b * inverse(Int(2 * a), p_)), p_);
    }
    void translate_singular_point();
    LocalData finish(ReductionKind kind, unsigned f, Kodaira kod) const;

    Coefficients c_;
    std::uint64_t q_;
    Int p_;
    unsigned n_ = 0;
    Invariants inv_;
};

void Tate::translate_singular_point()
{
    Int r, t;
    if (q_ <= 3) {
        bool found = false;
        for (std::uint64_t x = 0; x < q_ && !found; ++x) {
            for (std::uint64_t y = 0; y < q_ && !found; ++y) {
                const Int X = arith::from_u64(x), Y = arith::from_u64(y);
                const Int F = Y * Y + c_.a1 * X * Y + c_.a3 * Y - X * X * X - c_.a2 * X * X - c_.a4 * X - c_.a6;
                const Int Fx = c_.a1 * Y - 3 * X * X - 2 * c_.a2 * X - c_.a4;
                const Int Fy = 2 * Y + c_.a1 * X + c_.a3;
                if (reduce(F, p_) == 0 && reduce(Fx, p_) == 0 && reduce(Fy, p_) == 0) {
                    r = X;
                    t = Y;
                    found = true;
                }
            }
        }
        if (!found)
            throw std::logic_error("Tate: no singular point found mod " + p_.get_str());
    } else {
        const Int b2 = inv_.b2;
        if (reduce(inv_.c4, p_) == 0)
            r = reduce(Int(-b2 * inverse(Int(12), p_)), p_);
        else
            r = reduce(Int(-(inv_.c6 + b2 * inv_.c4) * inverse(Int(12 * inv_.c4), p_)), p_);
        t = reduce(Int(-(c_.a1 * r + c_.a3) * inverse(Int(2), p_)), p_);
    }
    c_.shift(r, 0, t);
    if (!divides(c_.a3, 1) || !divides(c_.a4, 1) || !divides(c_.a6, 1))
        throw std::logic_error("Tate: singular point not moved to the origin");
}

LocalData Tate::finish(ReductionKind kind, unsigned f, Kodaira kod) const
{
    LocalData ld;
    ld.q = q_;
    ld.v_delta = n_;
    ld.v_c4 = inv_.c4 == 0 ? kUnboundedValuation : arith::ord(inv_.c4, q_);
    ld.kind = kind;
    ld.f = f;
    ld.kodaira = kod;
    ld.potentially_good = inv_.c4 == 0 || 3 * ld.v_c4 >= n_;
    ld.phi_order = phi_order(ld);
    return ld;
}

LocalData Tate::run()
{
    inv_ = model::invariants(WeierstrassModel{c_.a1, c_.a2, c_.a3, c_.a4, c_.a6});
    n_ = arith::ord(inv_.discriminant, q_);
    if (n_ == 0)
        return finish(ReductionKind::Good, 0, {KodairaFamily::I, 0});

    translate_singular_point();

    if (!divides(c_.b2(), 1)) {
        const bool split = quadratic_has_root(Int(1), c_.a1, Int(-c_.a2));
        return finish(split ? ReductionKind::MultiplicativeSplit : ReductionKind::MultiplicativeNonsplit, 1,
                      {KodairaFamily::I, n_});
    }
    if (!divides(c_.a6, 2))
        return finish(ReductionKind::Additive, n_, {KodairaFamily::II, 0});
    if (!divides(c_.b8(), 3))
        return finish(ReductionKind::Additive, n_ - 1, {KodairaFamily::III, 0});
    if (!divides(c_.b6(), 3))
        return finish(ReductionKind::Additive, n_ - 2, {KodairaFamily::IV, 0});

    // Make p | a1, a2; p^2 | a3, a4; p^3 | a6.
    {
        Int s, t;
        if (q_ == 2) {
            s = reduce(c_.a2, p_);
            t = 2 * reduce(exact(c_.a6, 2), p_);
        } else {
            const Int p2 = p_ * p_;
            s = reduce(Int(-c_.a1 * inverse(Int(2), p_)), p_);
            t = reduce(Int(-c_.a3 * inverse(Int(2), p2)), p2);
        }
        c_.shift(0, s, t);
        if (!divides(c_.a1, 1) || !divides(c_.a2, 1) || !divides(c_.a3, 2) || !divides(c_.a4, 2) ||
            !divides(c_.a6, 3))
            throw std::logic_error("Tate: step 6 normalization failed");
    }

    // P(T) = T^3 + A T^2 + B T + C over F_p.
    const Int A = reduce(exact(c_.a2, 1), p_);
    const Int B = reduce(exact(c_.a4, 2), p_);
    const Int C = reduce(exact(c_.a6, 3), p_);
    enum class Roots { Distinct, Double, Triple } roots = Roots::Distinct;
    Int alpha;
    if (q_ <= 3) {
        for (std::uint64_t x = 0; x < q_; ++x) {
            const Int T = arith::from_u64(x);
            const Int P = T * T * T + A * T * T + B * T + C;
            const Int dP = 3 * T * T + 2 * A * T + B;
            if (reduce(P, p_) == 0 && reduce(dP, p_) == 0) {
                alpha = T;
                roots = reduce(Int(3 * T + A), p_) == 0 ? Roots::Triple : Roots::Double;
                break;
            }
        }
    } else {
        const Int disc = 18 * A * B * C - 4 * A * A * A * C + A * A * B * B - 4 * B * B * B - 27 * C * C;
        if (reduce(disc, p_) != 0) {
            roots = Roots::Distinct;
        } else if (reduce(Int(A * A - 3 * B), p_) == 0) {
            roots = Roots::Triple;
            alpha = reduce(Int(-A * inverse(Int(3), p_)), p_);
        } else {
            roots = Roots::Double;
            alpha = reduce(Int((A * B - 9 * C) * inverse(Int(2 * (3 * B - A * A)), p_)), p_);
        }
    }

    if (roots == Roots::Distinct)
        return finish(ReductionKind::Additive, n_ - 4, {KodairaFamily::IStar, 0});

    if (roots == Roots::Double) {
        c_.shift(p_ * alpha, 0, 0);
        unsigned ix = 3, iy = 3;
        Int mx = p_ * p_, my = p_ * p_;
        for (;;) {
            if (ix + iy > n_ + 5)
                throw std::logic_error("Tate: I_m* subprocedure did not terminate");
            const Int xa3 = exact(c_.a3, iy - 1);
            const Int xa6 = exact(c_.a6, ix + iy - 2);
            if (quadratic_distinct_roots(Int(1), xa3, Int(-xa6)))
                break;
            c_.shift(0, 0, my * quadratic_double_root(Int(1), xa3, Int(-xa6)));
            my *= p_;
            ++iy;
            const Int xa2 = exact(c_.a2, 1);
            const Int xa4 = exact(c_.a4, ix);
            const Int ya6 = exact(c_.a6, ix + iy - 2);
            if (quadratic_distinct_roots(xa2, xa4, ya6))
                break;
            c_.shift(mx * quadratic_double_root(xa2, xa4, ya6), 0, 0);
            mx *= p_;
            ++ix;
        }
        return finish(ReductionKind::Additive, n_ - ix - iy + 1, {KodairaFamily::IStar, ix + iy - 5});
    }

    // Triple root: move it to T = 0.
    c_.shift(p_ * alpha, 0, 0);
    if (!divides(c_.a2, 2) || !divides(c_.a4, 3) || !divides(c_.a6, 4))
        throw std::logic_error("Tate: triple-root translation failed");
    const Int ya3 = exact(c_.a3, 2);
    const Int ya6 = exact(c_.a6, 4);
    if (quadratic_distinct_roots(Int(1), ya3, Int(-ya6)))
        return finish(ReductionKind::Additive, n_ - 6, {KodairaFamily::IVStar, 0});
    c_.shift(0, 0, p_ * p_ * quadratic_double_root(Int(1), ya3, Int(-ya6)));
    if (!divides(c_.a3, 3) || !divides(c_.a6, 5))
        throw std::logic_error("Tate: step 8 translation failed");
    if (!divides(c_.a4, 4))
        return finish(ReductionKind::Additive, n_ - 7, {KodairaFamily::IIIStar, 0});
    if (!divides(c_.a6, 6))
        return finish(ReductionKind::Additive, n_ - 8, {KodairaFamily::IIStar, 0});
    throw NotMinimalError("model is not minimal at " + p_.get_str());
}

} // namespace

LocalData reduction_type(const WeierstrassModel& m, std::uint64_t q)
{
    if (!arith::is_prime(q))
        throw std::invalid_argument("reduction_type: " + std::to_string(q) + " is not prime");
    return Tate(m, q).run();
}

LocalData reduction_type_shortcut(const WeierstrassModel& m, std::uint64_t q)
{
    if (q < 5 || !arith::is_prime(q))
        throw std::invalid_argument("reduction_type_shortcut: needs a prime q >= 5");
    const auto inv = model::invariants(m);
    LocalData ld;
    ld.q = q;
    ld.v_delta = arith::ord(inv.discriminant, q);
    ld.v_c4 = inv.c4 == 0 ? kUnboundedValuation : arith::ord(inv.c4, q);
    if (ld.v_delta >= 12 && ld.v_c4 >= 4)
        throw NotMinimalError("model is not minimal at " + std::to_string(q));
    ld.potentially_good = inv.c4 == 0 || 3 * ld.v_c4 >= ld.v_delta;
    if (ld.v_delta == 0) {
        ld.kind = ReductionKind::Good;
        ld.kodaira = {KodairaFamily::I, 0};
    } else if (ld.v_c4 == 0) {
        ld.kind = arith::legendre(Int(-inv.c6), q) == 1 ? ReductionKind::MultiplicativeSplit
                                                         : ReductionKind::MultiplicativeNonsplit;
        ld.f = 1;
        ld.kodaira = {KodairaFamily::I, ld.v_delta};
    } else {
        ld.kind = ReductionKind::Additive;
        ld.f = 2;
        if (!ld.potentially_good) {
            ld.kodaira = {KodairaFamily::IStar, ld.v_delta - 6};
        } else {
            switch (ld.v_delta) {
            case 2: ld.kodaira = {KodairaFamily::II, 0}; break;
            case 3: ld.kodaira = {KodairaFamily::III, 0}; break;
            case 4: ld.kodaira = {KodairaFamily::IV, 0}; break;
            case 6: ld.kodaira = {KodairaFamily::IStar, 0}; break;
            case 8: ld.kodaira = {KodairaFamily::IVStar, 0}; break;
            case 9: ld.kodaira = {KodairaFamily::IIIStar, 0}; break;
            case 10: ld.kodaira = {KodairaFamily::IIStar, 0}; break;
            default: throw std::logic_error("unexpected discriminant valuation for potentially good reduction");
            }
        }
    }
    ld.phi_order = phi_order(ld);
    return ld;
}

LocalProfile profile(const WeierstrassModel& m)
{
    LocalProfile out;
    out.conductor = 1;
    for (const auto& pw : arith::factor(model::discriminant(m))) {
        if (!arith::fits_u64(pw.prime))
            throw std::domain_error("bad prime " + pw.prime.get_str() + " exceeds the 64-bit range");
        auto ld = reduction_type(m, arith::to_u64(pw.prime));
        Int qf;
        mpz_pow_ui(qf.get_mpz_t(), pw.prime.get_mpz_t(), ld.f);
        out.conductor *= qf;
        out.bad.push_back(std::move(ld));
    }
    return out;
}

Int conductor(const WeierstrassModel& m)
{
    return profile(m).conductor;
}

std::optional<unsigned> phi_order(const LocalData& ld)
{
    if (ld.kind != ReductionKind::Additive || ld.q < 5 || !ld.potentially_good)
        return std::nullopt;
    return 12 / std::gcd(ld.v_delta, 12u);
}

std::optional<IrreducibilityCertificate> irreducibility_certificate(const WeierstrassModel& m, std::uint64_t p)
{
    if (p < 5 || !arith::is_prime(p))
        throw std::invalid_argument("irreducibility certificate unsupported for p = " + std::to_string(p) +
                                    " (needs a prime p >= 5)");
    const auto minimal = model::minimal_model(m).model;
    for (const auto& ld : profile(minimal).bad) {
        if (ld.q < 5 || ld.q == p)
            continue;
        const auto e = phi_order(ld);
        if (!e || *e % p == 0 || (p - 1) % *e == 0)
            continue;
        IrreducibilityCertificate cert;
        cert.q = ld.q;
        cert.e = *e;
        cert.p = p;
        cert.reason = "additive potentially good reduction at " + std::to_string(ld.q) + " with v(disc) = " +
                      std::to_string(ld.v_delta) + ": inertia acts through a cyclic group of order " +
                      std::to_string(*e) + ", which does not divide p - 1 = " + std::to_string(p - 1) +
                      ", so the image is not contained in a Borel subgroup";
        return cert;
    }
    return std::nullopt;
}

} // namespace local
} // namespace congrue
