#pragma once

// Local reduction data: Tate's algorithm, conductor exponents, Kodaira
// symbols, and the inertia-order irreducibility certificate.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "congrue/arith.hpp"
#include "congrue/model.hpp"

namespace congrue {

enum class ReductionKind { Good, MultiplicativeSplit, MultiplicativeNonsplit, Additive };

enum class KodairaFamily { I, IStar, II, III, IV, IVStar, IIIStar, IIStar };

/// Kodaira symbol; `n` is the subscript of I_n and I_n^*.
struct Kodaira {
    KodairaFamily family = KodairaFamily::I;
    unsigned n = 0;

    std::string str() const;
    friend bool operator==(const Kodaira&, const Kodaira&) = default;
};

struct LocalData {
    std::uint64_t q = 0;
    unsigned v_delta = 0;
    unsigned v_c4 = 0; ///< saturates at a large value when c4 == 0
    ReductionKind kind = ReductionKind::Good;
    unsigned f = 0;
    Kodaira kodaira;
    bool potentially_good = true;
    std::optional<unsigned> phi_order;

    bool is_multiplicative() const
    {
        return kind == ReductionKind::MultiplicativeSplit || kind == ReductionKind::MultiplicativeNonsplit;
    }
};

/// Local data at every bad prime, ascending, plus the conductor.
struct LocalProfile {
    Int conductor;
    std::vector<LocalData> bad;

    const LocalData* at(std::uint64_t q) const;
};

struct IrreducibilityCertificate {
    std::uint64_t q = 0;
    unsigned e = 0;
    std::uint64_t p = 0;
    std::string reason;
};

std::string to_string(ReductionKind kind);

namespace local {

/// Runs Tate's algorithm at q. Throws NotMinimalError if m is not minimal at q.
LocalData reduction_type(const WeierstrassModel& m, std::uint64_t q);

/// Shortcut classification for q >= 5 from valuations alone; used as a cross-check.
LocalData reduction_type_shortcut(const WeierstrassModel& m, std::uint64_t q);

Int conductor(const WeierstrassModel& m);
LocalProfile profile(const WeierstrassModel& m);

/// Order of the inertia image at q >= 5 for additive potentially good reduction:
/// 12 / gcd(v_q(disc), 12). Absent when those conditions fail.
std::optional<unsigned> phi_order(const LocalData& ld);

/// Searches bad primes q >= 5, q != p, ascending, for an inertia order e with
/// e not dividing p - 1. Absent means inconclusive. Throws for p < 5.
std::optional<IrreducibilityCertificate> irreducibility_certificate(const WeierstrassModel& m, std::uint64_t p);

} // namespace local
} // namespace congrue
