#pragma once

#include <json.hpp>

#include "ruban/bounds.hpp"
#include "ruban/quadratic.hpp"
#include "ruban/rational_cf.hpp"

namespace ruban {

using Json = nlohmann::ordered_json;

Json quotient_json(const PartialQuotient& a);
PartialQuotient quotient_from_json(const Json& j);

Json surd_json(const QuadraticSurd& s);
QuadraticSurd surd_from_json(const Json& j, const Prime& l);

// Self-contained trace serialization (prime included); parsing re-derives
// the convergents from the quotients and cross-checks them against the
// stored ones, so tampering with any field is caught.
Json trace_json(const Trace& t);
Trace trace_from_json(const Json& j);

struct VerifySummary {
    std::vector<std::pair<std::string, CheckResult>> checks;
    bool all_ok = true;
};

// Runs every applicable bound checker against a trace.
VerifySummary verify_trace(const Trace& t);
Json verify_json(const VerifySummary& s);

// Bracketed human rendering: [1, 1/3, 2/3]
std::string quotients_str(const std::vector<PartialQuotient>& qs,
                          const Prime& l);

}  // namespace ruban
