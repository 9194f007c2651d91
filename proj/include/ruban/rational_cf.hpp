#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ruban/trace.hpp"

namespace ruban {

// One step: a = floor_l(x); TERMINAL (nullopt) when x = a, otherwise the
// next complete quotient 1/(x - a), whose valuation is < 0.
std::pair<PartialQuotient, std::optional<LRational>> step_rational(
    const LRational& x);

enum class RationalOutcome { finite, periodic };

struct RationalClassification {
    RationalOutcome outcome;
    long steps_used = 0;   // loop iterations consumed
    Int bound_used;        // B_1 = max(ceil(log b / log l), 2)
};

// Decides finite vs periodic, stopping at the first negative complete
// quotient or at termination; one of the two happens within B_1 steps.
RationalClassification classify_rational(const LRational& x);

struct RationalExpansion {
    RationalOutcome outcome;
    // finite: the whole expansion; periodic: the preperiod, the implied
    // period being the single quotient l - 1/l.
    std::vector<PartialQuotient> quotients;
    Int bound_used;  // B_2 = 32 l H(x)^2
    Trace trace;
    std::optional<ConvergentState> tilde;  // integer convergents, v(x) <= 0 only

    PartialQuotient period_quotient() const {
        const Prime& l = trace.prime;
        return PartialQuotient{l.value() * l.value() - 1, 1};  // l - 1/l
    }
};

// Full expansion: iterates until termination or until the complete
// quotient -1/l appears (at which point the tail is l - 1/l repeated).
RationalExpansion expand_rational(const LRational& x);

// Exact inverse of expand_rational: folds the finite expansion, or
// substitutes the tail value -1/l at the preperiod boundary.
Rat reconstruct_rational(const RationalExpansion& exp);

struct ScanEntry {
    Int prime;
    RationalOutcome outcome;
    long finite_length = 0;  // quotient count when finite
};

struct RationalScan {
    std::vector<ScanEntry> entries;
    // Smallest bound T such that the expansion is periodic for every
    // prime l > T (0 when x is a negative rational: every prime).
    std::optional<Int> periodic_beyond;
    bool integer_input = false;
};

// Classifies x for every prime l <= l_max and reports the finitely-many-
// exceptions threshold.
RationalScan scan_primes_rational(const Rat& x, const Int& l_max);

// Smallest k >= 0 with l^k >= b (exact integer log ceiling), b >= 1.
long ceil_log(const Int& b, const Prime& l);

}  // namespace ruban
