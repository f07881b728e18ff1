#pragma once

// Dataset ingestion and the congruent-pair search: fingerprint prefilter,
// non-isogeny gate, full verification, and quadratic-twist orbits.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "congrue/congruence.hpp"
#include "congrue/model.hpp"

namespace congrue {

struct CurveRecord {
    std::string label;
    WeierstrassModel model;
    Int conductor;
};

struct PairReport {
    std::string label;
    std::string label_prime;
    std::uint64_t p = 0;
    CongruenceReport report;
    std::optional<std::uint64_t> non_isogeny_witness;
    std::string twist_orbit; ///< the two orbit representatives, sorted, joined by '|'
};

struct TwistOrbit {
    std::string representative; ///< smallest label in the class
    std::vector<std::string> members;
};

/// a_l mod p over a probe set, with a hex digest of the sequence.
struct Fingerprint {
    std::map<std::uint64_t, long> residues;
    std::string digest;
};

struct ScanOptions {
    std::size_t probe_count = 25;
    std::uint64_t witness_bound = 1000;
    BoundPolicy bound_policy = ComputedSturm{};
    const ApCache* cache = nullptr;
};

struct ScanResult {
    std::vector<PairReport> pairs;
    /// Fingerprint-compatible pairs with no non-isogeny witness up to the bound.
    std::vector<std::pair<std::string, std::string>> possibly_isogenous;
};

namespace scan {

/// CSV with header "label,a1,a2,a3,a4,a6[,conductor]". Throws DatasetError.
std::vector<CurveRecord> load_curves(const std::filesystem::path& path);
std::vector<CurveRecord> parse_curves(std::istream& in);

CurveRecord make_record(std::string label, const WeierstrassModel& m);

/// The first `count` primes of good reduction for the curve, skipping `skip` (0 = none).
PrimeList good_probes(const CurveRecord& rec, std::size_t count, std::uint64_t skip = 0);

/// Throws std::invalid_argument when a probe is a bad prime of the curve.
Fingerprint fingerprint(const CurveRecord& rec, std::uint64_t p, const PrimeList& probes);

std::vector<TwistOrbit> twist_orbits(const std::vector<CurveRecord>& records);

ScanResult find_congruent_pairs(const std::vector<CurveRecord>& records, std::uint64_t p,
                                const ScanOptions& options = {});

} // namespace scan
} // namespace congrue
