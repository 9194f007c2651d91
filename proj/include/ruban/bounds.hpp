#pragma once

#include <string>

#include "ruban/trace.hpp"

namespace ruban {

// Exact rational enclosure of an irrational quantity.
struct RationalInterval {
    Rat lo, hi;
    Rat width() const { return hi - lo; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
};

// Encloses lambda(a) = (a + sqrt(a^2+4))/2, the positive root of
// x^2 - a x - 1, to width <= 2^-precision_bits by bisection.  For e >= 1
// the upper endpoint never exceeds l^e (with equality exactly when
// a = l - 1/l, which is returned as a point interval).
RationalInterval lambda_interval(const PartialQuotient& a, const Prime& l,
                                 long precision_bits = 32);

struct CheckResult {
    bool ok = true;
    std::string message;
    explicit operator bool() const { return ok; }
};

// q_n <= lambda(a_{n-1})...lambda(a_1) and p_n <= lambda(a_{n-1})...lambda(a_0),
// compared against upper endpoints of the interval products.
CheckResult check_qn_bound(const Trace& trace, long precision_bits = 32);

// The two height inequalities on complete quotients,
//   h(a_n) <= h(a) + s_n log l + n log(2l)
//   h(a_n) <= 2^n (h(a) + log 2l) - log 2l,
// verified exactly in multiplicative form (squared Weil heights compare
// as elements x + y sqrt(D) with rational x, y).  When v(input) > 0 the
// base point is the first complete quotient, matching the inequalities'
// v <= 0 hypothesis.
CheckResult check_height_bounds(const Trace& trace);

// |b_n| <= C3 C2^n, |c_n l^{f_n}| <= C3 C2^n, f_n < 3n + C4 with
// C2 = (l^2+2+l sqrt(l^2+4))/2, C3 = |k_-1|+|k_0|+|b_0|, C4 = log C3/log l.
// The C2 powers use on-demand interval refinement; the f_n line is the
// exact comparison l^{f_n} < C3 l^{3n}.
CheckResult check_growth_bounds(const Trace& trace);

// v(p_n - alpha q_n) = s_{n+1} - e_0 at every step, and p = alpha q
// exactly at the closing convergent of a terminated expansion.
CheckResult check_ladic_approx(const Trace& trace);

struct GrowthConstants {
    RationalInterval C2;
    Rat C3;
};

GrowthConstants growth_constants(const Trace& trace, long precision_bits = 32);

// l^2+2 >= C2 upper endpoint and lambda(a) >= 1 + a/2 are asserted by the
// property tests through these helpers.
RationalInterval c2_interval(const Prime& l, long precision_bits);

}  // namespace ruban
