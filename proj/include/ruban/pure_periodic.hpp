#pragma once

#include <vector>

#include "ruban/quadratic.hpp"

namespace ruban {

// A shape (b + delta)/(l^f c) that could carry a purely periodic
// expansion of ordinate Delta, together with which filters it passed.
struct Candidate {
    QuadraticSurd surd;
    bool passed_valuation = false;  // |x|_l > 1 and |conj(x)|_l < 1
    bool passed_sign = false;       // exactly one positive real embedding
};

// The finite superset from the feasibility estimate: |b| <= floor(sqrt(D)),
// f >= 1, l not dividing c, and l^{f+1} |c| <= Delta (the pair inequality
// l^{f+f'}|c c'| <= Delta against the smallest admissible successor).
// Requires Delta > 0 nonsquare, l not dividing Delta, sqrt in Q_l.
std::vector<Candidate> candidate_list(const Int& Delta, const Prime& l,
                                      const Int& branch);

// Keeps candidates with exactly one positive real embedding, |x|_l > 1
// and |conj(x)|_l < 1, marking the flags on the way.
std::vector<Candidate> ppp_filter(std::vector<Candidate> cands);

struct PurePeriodicSurd {
    QuadraticSurd surd;
    std::vector<PartialQuotient> period;
};

struct PurePeriodicReport {
    size_t candidates = 0;
    size_t filtered = 0;
    std::vector<PurePeriodicSurd> confirmed;  // sorted by (b, c, f)
};

// Expands each filtered candidate at most |list|+1 steps: leaving the
// list rules it out, returning to the start confirms it with its minimal
// period.
PurePeriodicReport determine_pure_periodic(const Int& Delta, const Prime& l,
                                           const Int& branch);

// A purely periodic expansion of period one, [t/l^h repeated], living in
// Q(sqrt(Delta)): x = (t + u*sqrt(Delta))/(2 l^h) with
// t^2 - u^2 Delta = -4 l^{2h} and 0 <= t < l^{h+1}.
struct PellSolution {
    long h = 0;
    Int t, u;           // solution of the doubled equation above
    Int red_b, red_u;   // reduced surd (red_b + red_u*sqrt(Delta))/red_den
    Int red_den;
    int u_sign = 1;     // sign on sqrt(Delta) in the |x|_l > 1 member
    PartialQuotient quotient;  // the period: t / l^h
    QuadraticSurd surd;        // coefficient-folded representation
};

// Brute-forces t in [1, l^{h+1}) with l not dividing t for each
// 1 <= h <= h_max and tests (t^2 + 4 l^{2h})/Delta for a perfect square.
std::vector<PellSolution> pell_period1(const Int& Delta, const Prime& l,
                                       long h_max, const Int& branch);

}  // namespace ruban
