#pragma once

// Stable JSON encodings used by the command-line tool. Unbounded integers
// are emitted as decimal strings; machine-size values as JSON numbers.

#include <json.hpp>

#include "congrue/congruence.hpp"
#include "congrue/local.hpp"
#include "congrue/model.hpp"
#include "congrue/scan.hpp"

namespace congrue::json {

using Json = nlohmann::ordered_json;

Json encode(const WeierstrassModel& m);
Json encode(const Invariants& inv);
Json encode(const Transformation& t);
Json encode(const LocalData& ld);
Json encode(const IrreducibilityCertificate& cert);
Json encode(const CongruenceReport& report);
Json encode(const PairReport& pair);
Json encode(const TwistOrbit& orbit);

} // namespace congrue::json
