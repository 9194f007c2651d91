#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ruban/padic.hpp"

namespace ruban {

// A quadratic irrational (b + delta)/(l^f * c) with delta the branch-chosen
// square root of the ordinate Delta in Q_l.  Invariants: Delta is not a
// perfect square, sqrt(Delta) lies in Q_l, c != 0, l does not divide c,
// and c | Delta - b^2 (the shape every step of the recurrence preserves).
struct QuadraticSurd {
    Int Delta;
    Int b;
    Int c;
    long f = 0;
    Prime prime;
    Int branch;

    std::string str() const;
};

// Validates the tuple and, when c does not divide Delta - b^2, rescales
// (b, c, Delta) <- (b*d, c*d, d^2*Delta) with d = c/gcd(c, b^2 - Delta);
// the branch follows the rescaled root d*delta.
QuadraticSurd make_surd(Int Delta, Int b, Int c, long f, Prime prime,
                        Int branch);

// Folds a coefficient on the root: (B + U*sqrt(D))/den as a coefficient-1
// surd with ordinate U^2*D.  den and U must be nonzero.
QuadraticSurd fold_surd(const Int& D, const Int& B, const Int& U,
                        const Int& den, const Prime& prime, const Int& branch);

// v(b + delta) and v(x) = v(b + delta) - f.
long surd_num_val(const QuadraticSurd& x);
long surd_val(const QuadraticSurd& x);

// Exact equality as elements of Q_l, across different ordinates.
bool same_value(const QuadraticSurd& x, const QuadraticSurd& y);

// floor_l(x).
PartialQuotient surd_floor(const QuadraticSurd& x);

// One step of the expansion: a = floor_l(x) and the next complete quotient,
// connected by b' = a*l^f*c - b and l^{f+f'} c c' = Delta - b'^2.
std::pair<PartialQuotient, QuadraticSurd> surd_step(const QuadraticSurd& x);

// Exact signs of the two real embeddings (b + sqrt(Delta))/(l^f c) and
// (b - sqrt(Delta))/(l^f c); nullopt when Delta < 0.
std::optional<std::pair<int, int>> embedding_signs(const QuadraticSurd& x);

}  // namespace ruban
