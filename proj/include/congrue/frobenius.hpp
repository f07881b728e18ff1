#pragma once

// Traces of Frobenius a_l at good and bad primes, plus a persistent
// per-curve cache of a_l tables.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "congrue/arith.hpp"
#include "congrue/model.hpp"

namespace congrue {

/// a_l for every prime l <= bound of one curve, keyed by its minimal model.
struct ApTable {
    std::string curve_key;
    std::uint64_t bound = 0;
    std::map<std::uint64_t, long> values;
    /// How many entries this call had to count (zero on a full cache hit).
    std::size_t computed = 0;

    long at(std::uint64_t l) const { return values.at(l); }
};

/// On-disk a_l store: one directory per curve named by the SHA-256 hex digest
/// of its minimal a-invariants, holding a tab-separated table.
class ApCache {
public:
    explicit ApCache(std::filesystem::path root) : root_(std::move(root)) {}

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path file_for(const WeierstrassModel& minimal) const;

    /// Cached entries, or an empty table when none exist. Throws CacheIntegrityError.
    ApTable load(const WeierstrassModel& minimal) const;
    /// Atomic write (temporary file then rename).
    void store(const WeierstrassModel& minimal, const ApTable& table) const;

private:
    std::filesystem::path root_;
};

namespace frobenius {

/// Above this the dispatcher switches from naive counting to baby-step giant-step.
inline constexpr std::uint64_t kBsgsThreshold = 1u << 16;

/// Hex SHA-256 digest of the a-invariant 5-tuple text.
std::string curve_key(const WeierstrassModel& minimal);

/// a_l by a Legendre-symbol sum (odd l) or direct enumeration (l = 2).
/// Throws WrongDispatchError when l divides the discriminant.
long ap_good(const WeierstrassModel& m, std::uint64_t l);

/// a_l from the group order, found with baby-step giant-step in the Hasse interval.
long ap_good_bsgs(const WeierstrassModel& m, std::uint64_t l);

/// a_l at any prime of a minimal model: counted at good primes, +1/-1 for
/// split/nonsplit multiplicative, 0 for additive.
long ap(const WeierstrassModel& minimal, std::uint64_t l);

ApTable ap_table(const WeierstrassModel& m, std::uint64_t bound, const ApCache* cache = nullptr);

} // namespace frobenius
} // namespace congrue
