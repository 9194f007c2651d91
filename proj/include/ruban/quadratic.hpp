#pragma once

#include <vector>

#include "ruban/trace.hpp"

namespace ruban {

// The standard shape: l^f c | Delta - b^2, l does not divide Delta, and
// v(x) = -f < 0 (odd l) resp. v(x) = 1 - f < 0 (l = 2).
bool is_standard(const QuadraticSurd& x);

struct Standardized {
    std::vector<PartialQuotient> prefix;   // quotients emitted on the way
    std::vector<QuadraticSurd> states;     // complete quotient behind each
    QuadraticSurd surd;                    // satisfies is_standard
};

// Expands until a complete quotient in standard shape appears, stripping
// square factors of l from (b, Delta) after each step.  Requires
// v(x) <= 0; finishes within v(Delta)/2 + 2 steps.
Standardized reduce_to_standard(QuadraticSurd x);

// The step bound within which the classifier must either meet a complete
// quotient with two negative embeddings or a repetition.  The improved
// variant strips Delta = l^{2h} Dt first and charges h + 2 extra steps.
Int n_alpha(const QuadraticSurd& x, bool improved);

struct ClassifyOptions {
    std::optional<Int> max_steps;  // overrides n_alpha when set
    bool improved_bound = false;
    bool naive_scan = false;  // quadratic-time repetition scan
};

struct QuadraticClassification {
    enum class Tag { periodic, aperiodic } tag = Tag::periodic;

    // periodic: canonical decomposition with minimal nonempty period
    std::vector<PartialQuotient> preperiod;
    std::vector<PartialQuotient> period;

    // aperiodic: first complete quotient whose real embeddings are both
    // negative (or the input itself when Delta < 0)
    std::vector<PartialQuotient> prefix;  // quotients before the witness
    size_t witness_index = 0;
    std::optional<QuadraticSurd> witness;
    bool no_real_embedding = false;

    size_t steps_used = 0;
    Int bound_used;
    Trace trace;

    explicit QuadraticClassification(Prime l) : trace(std::move(l)) {}
    bool periodic() const { return tag == Tag::periodic; }
};

QuadraticClassification classify_quadratic(const QuadraticSurd& x,
                                           const ClassifyOptions& opts = {});

// Sufficient aperiodicity test for a root of Ax^2 + Bx + C: true iff
// l does not divide A and l > max(Delta/4A, C).
bool aperiodicity_threshold(const Int& A, const Int& B, const Int& C,
                            const Prime& l);

// For Delta = 1 + k*l^h (odd l, l not dividing k, Delta not a square):
// whether Delta > (l^h + 1)^2, which forces the expansion of sqrt(Delta)
// to be aperiodic.
bool family_nonperiodic_check(const Int& k, long h, const Prime& l);

// Collapses preperiod+period to the canonical form: absorbs a preperiod
// tail that matches the period into a rotation, then cuts the period to
// its minimal length.
void canonicalize_period(std::vector<PartialQuotient>& preperiod,
                         std::vector<PartialQuotient>& period);

}  // namespace ruban
