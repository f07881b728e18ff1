#pragma once

// Kraus-Oesterle style verification that two curves have isomorphic mod-p
// Galois modules: level and bound selection, the trace loop, auxiliary
// conditions at one-sided multiplicative primes, and non-isogeny witnesses.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "congrue/arith.hpp"
#include "congrue/frobenius.hpp"
#include "congrue/local.hpp"
#include "congrue/model.hpp"

namespace congrue {

/// The checked range reproduced verbatim from the published verification of
/// 3675.g1 ~ 47775.be1 mod 17.
inline constexpr std::uint64_t kPaperPresetBound = 3360;

struct ComputedSturm {};
struct PaperPreset {
    std::uint64_t value = kPaperPresetBound;
};
struct ExplicitBound {
    std::uint64_t value = 0;
};
using BoundPolicy = std::variant<ComputedSturm, PaperPreset, ExplicitBound>;

struct CongruenceParams {
    std::uint64_t p = 17;
    BoundPolicy bound_policy = ComputedSturm{};
    bool include_l_equals_p = true;
};

enum class PrimeRole {
    CommonMultiplicativeSameType, ///< same splitness; outside the trace loop
    CommonAdditive,               ///< outside the trace loop
    OneSidedMultiplicative,       ///< good on the other curve; auxiliary +-(q+1) test
};

struct Level {
    Int M;
    std::map<std::uint64_t, PrimeRole> roles;
    /// Set when a bad prime falls outside the supported configurations.
    std::optional<std::uint64_t> inapplicable_prime;
    std::string inapplicable_reason;
};

enum class Verdict { IsomorphicModules, CongruentSemisimplifications, NotCongruent, Inapplicable };

std::string to_string(Verdict v);

struct Witness {
    std::uint64_t l = 0;
    long a = 0;       ///< trace on the first curve
    long a_prime = 0; ///< trace on the second curve
    std::string kind; ///< "trace" or "aux"
};

struct SkippedPrime {
    std::uint64_t l = 0;
    std::string reason;
};

struct AuxResult {
    std::uint64_t q = 0;
    long a_good = 0;
    long eps = 0;
    bool holds = false;
};

struct CongruenceReport {
    Verdict verdict = Verdict::Inapplicable;
    std::uint64_t p = 0;
    Int M;
    Int sturm_index; ///< M * prod_{q | M} (1 + 1/q)
    std::uint64_t bound = 0;
    std::string bound_policy;
    std::size_t checked = 0;
    std::vector<SkippedPrime> skipped;
    std::vector<AuxResult> aux;
    std::vector<Witness> witnesses;
    std::optional<IrreducibilityCertificate> certificate;
    std::optional<IrreducibilityCertificate> certificate_prime;
    std::string inapplicable_reason;
    std::vector<std::string> notes;

    bool congruent() const
    {
        return verdict == Verdict::IsomorphicModules || verdict == Verdict::CongruentSemisimplifications;
    }
};

namespace congruence {

Level congruence_level(const LocalProfile& e, const LocalProfile& e_prime);

/// M * prod_{q | M} (1 + 1/q).
Int sturm_index(const Int& M);
/// ceil(sturm_index(M) / 6).
std::uint64_t sturm_bound(const Int& M);
std::uint64_t resolve_bound(const BoundPolicy& policy, const Int& M);
std::string describe(const BoundPolicy& policy);

/// a_q(good) * eps == +-(q + 1) mod p.
bool aux_condition(long a_q_good, long eps, std::uint64_t q, std::uint64_t p);

/// Unsupported bad-prime configurations can still be refuted by a trace
/// witness at a common good prime l != p; otherwise they are Inapplicable.
CongruenceReport verify_congruence(const WeierstrassModel& e, const WeierstrassModel& e_prime,
                                   const CongruenceParams& params, const ApCache* cache = nullptr);

/// Smallest common-good prime l <= bound with a_l(E) != a_l(E'). Absence is inconclusive.
std::optional<std::uint64_t> certify_non_isogenous(const WeierstrassModel& e, const WeierstrassModel& e_prime,
                                                   std::uint64_t bound, const ApCache* cache = nullptr);

} // namespace congruence
} // namespace congrue
