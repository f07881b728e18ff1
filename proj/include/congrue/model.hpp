#pragma once

// Integral Weierstrass models over Q: parsing, invariants, changes of
// variables, global minimal models and quadratic twists.

#include <optional>
#include <string>
#include <string_view>

#include "congrue/arith.hpp"

namespace congrue {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integral coefficients.
struct WeierstrassModel {
    Int a1, a2, a3, a4, a6;

    friend bool operator==(const WeierstrassModel&, const WeierstrassModel&) = default;
};

struct Invariants {
    Int b2, b4, b6, b8;
    Int c4, c6;
    Int discriminant;
    Rational j;
};

/// (x, y) = (u^2 x' + r, u^3 y' + u^2 s x' + t).
struct Transformation {
    Rational u{1}, r{0}, s{0}, t{0};

    static Transformation identity() { return {}; }
    bool is_identity() const { return u == 1 && r == 0 && s == 0 && t == 0; }
    /// Apply `this` first, then `next`.
    Transformation then(const Transformation& next) const;
    Transformation inverse() const;

    friend bool operator==(const Transformation&, const Transformation&) = default;
};

struct MinimalModel {
    WeierstrassModel model;
    Transformation transform;
};

/// Twist test result. `special_j` marks j = 0 or 1728, where quartic and
/// sextic twists make the quadratic answer ambiguous.
struct TwistMatch {
    std::optional<Int> d;
    bool special_j = false;
};

namespace model {

/// Parses "[a1,a2,a3,a4,a6]". Throws ParseError or SingularCurveError.
WeierstrassModel parse(std::string_view text);
std::string format(const WeierstrassModel& m);

Invariants invariants(const WeierstrassModel& m);
Int discriminant(const WeierstrassModel& m);

/// Throws std::domain_error when the image has non-integral coefficients.
WeierstrassModel transform(const WeierstrassModel& m, const Transformation& t);

/// Global minimal model in reduced form (a1, a3 in {0,1}, a2 in {-1,0,1}),
/// with the transformation carrying the input onto it.
MinimalModel minimal_model(const WeierstrassModel& m);
bool is_globally_minimal(const WeierstrassModel& m);

/// Reduced minimal model of the twist by a squarefree d != 0.
WeierstrassModel quadratic_twist(const WeierstrassModel& m, const Int& d);

TwistMatch is_quadratic_twist(const WeierstrassModel& m1, const WeierstrassModel& m2);

/// Reduced model with the given c-invariants, if they come from an integral model.
std::optional<WeierstrassModel> from_c4c6(const Int& c4, const Int& c6);

} // namespace model
} // namespace congrue
