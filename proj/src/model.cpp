#include "congrue/model.hpp"

#include <array>
#include <cctype>
#include <stdexcept>

#include "congrue/errors.hpp"

namespace congrue {

Transformation Transformation::then(const Transformation& next) const
{
    Transformation out;
    out.u = u * next.u;
    out.r = r + u * u * next.r;
    out.s = s + u * next.s;
    out.t = t + u * u * s * next.r + u * u * u * next.t;
    return out;
}

Transformation Transformation::inverse() const
{
    Transformation out;
    out.u = 1 / u;
    out.r = -r / (u * u);
    out.s = -s / u;
    out.t = (r * s - t) / (u * u * u);
    return out;
}

namespace model {

namespace {

void skip_spaces(std::string_view text, std::size_t& pos)
{
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
        ++pos;
}

Int parse_integer(std::string_view text, std::size_t& pos)
{
    skip_spaces(text, pos);
    const std::size_t start = pos;
    std::string digits;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        if (text[pos] == '-')
            digits.push_back('-');
        ++pos;
    }
    const std::size_t digit_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        digits.push_back(text[pos++]);
    if (pos == digit_start)
        throw ParseError("expected an integer", pos == text.size() ? start : pos);
    skip_spaces(text, pos);
    return Int(digits, 10);
}

void expect(std::string_view text, std::size_t& pos, char c)
{
    skip_spaces(text, pos);
    if (pos >= text.size() || text[pos] != c)
        throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
}

// Kraus's local conditions for (c4, c6) to be the invariants of a model integral at p.
bool kraus_valid_at(const Int& c4, const Int& c6, unsigned p)
{
    if (p == 3)
        return c6 == 0 || arith::ord(c6, 3) != 2;
    if (p == 2) {
        const auto b = arith::mod(c6, 32);
        if (b % 4 == 3)
            return true;
        return arith::mod(c4, 16) == 0 && (b == 0 || b == 8);
    }
    return true;
}

Int exact_div(const Int& a, const Int& b)
{
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool divides(const Int& d, const Int& n)
{
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Representative of a mod m in (-m/2, m/2].
Int centered_mod(const Int& a, long m)
{
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
    if (r > m / 2)
        r -= m;
    return r;
}

Int as_integer(const Rational& q)
{
    if (q.get_den() != 1)
        throw std::domain_error("transformation produces a non-integral coefficient");
    return q.get_num();
}

} // namespace

WeierstrassModel parse(std::string_view text)
{
    std::size_t pos = 0;
    expect(text, pos, '[');
    std::array<Int, 5> a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i)
            expect(text, pos, ',');
        a[i] = parse_integer(text, pos);
    }
    expect(text, pos, ']');
    skip_spaces(text, pos);
    if (pos != text.size())
        throw ParseError("trailing characters after curve", pos);
    WeierstrassModel m{a[0], a[1], a[2], a[3], a[4]};
    if (discriminant(m) == 0)
        throw SingularCurveError("singular curve " + format(m) + ": discriminant is zero");
    return m;
}

std::string format(const WeierstrassModel& m)
{
    return "[" + m.a1.get_str() + "," + m.a2.get_str() + "," + m.a3.get_str() + "," + m.a4.get_str() + "," +
           m.a6.get_str() + "]";
}

Invariants invariants(const WeierstrassModel& m)
{
    Invariants inv;
    const auto& [a1, a2, a3, a4, a6] = m;
    inv.b2 = a1 * a1 + 4 * a2;
    inv.b4 = 2 * a4 + a1 * a3;
    inv.b6 = a3 * a3 + 4 * a6;
    inv.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
    inv.c6 = -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
    inv.discriminant = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 - 27 * inv.b6 * inv.b6 +
                       9 * inv.b2 * inv.b4 * inv.b6;
    if (inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6 != 1728 * inv.discriminant)
        throw std::logic_error("invariant identity c4^3 - c6^2 = 1728 disc failed");
    if (inv.discriminant != 0) {
        inv.j = Rational(inv.c4 * inv.c4 * inv.c4, inv.discriminant);
        inv.j.canonicalize();
    }
    return inv;
}

Int discriminant(const WeierstrassModel& m)
{
    return invariants(m).discriminant;
}

WeierstrassModel transform(const WeierstrassModel& m, const Transformation& tr)
{
    if (tr.u == 0)
        throw std::invalid_argument("transformation with u = 0");
    const Rational a1(m.a1), a2(m.a2), a3(m.a3), a4(m.a4), a6(m.a6);
    const auto& [u, r, s, t] = tr;
    const Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    WeierstrassModel out;
    out.a1 = as_integer((a1 + 2 * s) / u);
    out.a2 = as_integer((a2 - s * a1 + 3 * r - s * s) / u2);
    out.a3 = as_integer((a3 + r * a1 + 2 * t) / u3);
    out.a4 = as_integer((a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4);
    out.a6 = as_integer((a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6);
    return out;
}

std::optional<WeierstrassModel> from_c4c6(const Int& c4, const Int& c6)
{
    const Int b2 = centered_mod(-c6, 12);
    const Int num4 = b2 * b2 - c4;
    if (!divides(Int(24), num4))
        return std::nullopt;
    const Int b4 = exact_div(num4, 24);
    const Int num6 = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
    if (!divides(Int(216), num6))
        return std::nullopt;
    const Int b6 = exact_div(num6, 216);

    WeierstrassModel m;
    m.a1 = arith::mod(b2, 2);
    if (!divides(Int(4), Int(b2 - m.a1)))
        return std::nullopt;
    m.a2 = exact_div(b2 - m.a1, 4);
    m.a3 = arith::mod(b6, 2);
    if (!divides(Int(2), Int(b4 - m.a1 * m.a3)) || !divides(Int(4), Int(b6 - m.a3)))
        return std::nullopt;
    m.a4 = exact_div(b4 - m.a1 * m.a3, 2);
    m.a6 = exact_div(b6 - m.a3, 4);

    const auto inv = invariants(m);
    if (inv.c4 != c4 || inv.c6 != c6 || inv.discriminant == 0)
        return std::nullopt;
    return m;
}

MinimalModel minimal_model(const WeierstrassModel& m)
{
    const auto inv = invariants(m);
    if (inv.discriminant == 0)
        throw SingularCurveError("singular curve " + format(m));

    Int u = 1;
    Int g = gcd(inv.c6 * inv.c6, inv.discriminant);
    for (const auto& pw : arith::factor(g)) {
        if (pw.exponent < 12)
            continue;
        const auto p = arith::to_u64(pw.prime);
        unsigned d = arith::ord(inv.discriminant, p) / 12;
        if (inv.c4 != 0)
            d = std::min(d, arith::ord(inv.c4, p) / 4);
        if (inv.c6 != 0)
            d = std::min(d, arith::ord(inv.c6, p) / 6);
        while (d > 0) {
            Int pd;
            mpz_pow_ui(pd.get_mpz_t(), pw.prime.get_mpz_t(), d);
            const Int c4d = exact_div(inv.c4, Int(pd * pd * pd * pd));
            const Int c6d = exact_div(inv.c6, Int(pd * pd * pd * pd * pd * pd));
            if (p > 3 || kraus_valid_at(c4d, c6d, static_cast<unsigned>(p)))
                break;
            --d;
        }
        Int pd;
        mpz_pow_ui(pd.get_mpz_t(), pw.prime.get_mpz_t(), d);
        u *= pd;
    }

    const Int u2 = u * u, u4 = u2 * u2;
    const auto reduced = from_c4c6(exact_div(inv.c4, u4), exact_div(inv.c6, Int(u4 * u2)));
    if (!reduced)
        throw std::logic_error("minimal_model: no integral model for scaled invariants of " + format(m));

    const Rational uq(u);
    Transformation tr;
    tr.u = uq;
    tr.s = (uq * reduced->a1 - m.a1) / 2;
    tr.r = (uq * uq * reduced->a2 - m.a2 + tr.s * m.a1 + tr.s * tr.s) / 3;
    tr.t = (uq * uq * uq * reduced->a3 - m.a3 - tr.r * m.a1) / 2;
    tr.r.canonicalize();
    tr.s.canonicalize();
    tr.t.canonicalize();
    if (transform(m, tr) != *reduced)
        throw std::logic_error("minimal_model: transformation does not reach the reduced model");
    return {*reduced, tr};
}

bool is_globally_minimal(const WeierstrassModel& m)
{
    return minimal_model(m).transform.u == 1;
}

WeierstrassModel quadratic_twist(const WeierstrassModel& m, const Int& d)
{
    if (d == 0)
        throw std::invalid_argument("quadratic_twist: d must be nonzero");
    if (!arith::is_squarefree(d))
        throw std::invalid_argument("quadratic_twist: d = " + d.get_str() + " is not squarefree");
    const auto inv = invariants(m);
    const WeierstrassModel shortened{0, 0, 0, -27 * inv.c4 * d * d, -54 * inv.c6 * d * d * d};
    return minimal_model(shortened).model;
}

TwistMatch is_quadratic_twist(const WeierstrassModel& m1, const WeierstrassModel& m2)
{
    const auto i1 = invariants(m1);
    const auto i2 = invariants(m2);
    TwistMatch match;
    if (i1.j != i2.j)
        return match;
    if (i1.c4 == 0 || i1.c6 == 0) {
        match.special_j = true;
        return match;
    }
    Rational ratio(i2.c6 * i1.c4, i1.c6 * i2.c4);
    ratio.canonicalize();
    const Int d = arith::squarefree_part(Int(ratio.get_num() * ratio.get_den()));
    if (quadratic_twist(m1, d) == minimal_model(m2).model)
        match.d = d;
    return match;
}

} // namespace model
} // namespace congrue
