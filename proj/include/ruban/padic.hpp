#pragma once

#include <string>
#include <vector>

#include "ruban/prime.hpp"

namespace ruban {

// A partial quotient r/l^e of a Ruban continued fraction.
// Invariants: 0 <= r < l^{e+1}, l does not divide r when e > 0, and the
// value r/l^e lies in [0, l).  The zero quotient is (r=0, e=0).
struct PartialQuotient {
    Int r;
    long e = 0;

    bool is_zero() const { return r == 0; }
    Rat value(const Prime& l) const {
        return make_rat(r, l.pow(static_cast<unsigned long>(e)));
    }
    std::string str(const Prime& l) const;

    friend bool operator==(const PartialQuotient& a, const PartialQuotient& b) {
        return a.e == b.e && a.r == b.r;
    }
    friend bool operator!=(const PartialQuotient& a, const PartialQuotient& b) {
        return !(a == b);
    }
};

PartialQuotient make_quotient(Int r, long e, const Prime& l);

// An exact rational carried with its prime l and cached l-adic valuation.
// The underlying fraction is always in lowest terms with positive
// denominator (mpq canonical form).
class LRational {
  public:
    LRational(Rat value, Prime prime);
    LRational(const Int& num, const Int& den, const Prime& prime)
        : LRational(make_rat(num, den), prime) {}

    const Rat& value() const { return value_; }
    const Prime& prime() const { return prime_; }
    bool is_zero() const { return value_ == 0; }
    Int num() const { return Int(value_.get_num()); }
    Int den() const { return Int(value_.get_den()); }

    // l-adic valuation; undefined (throws) for zero.
    long val() const {
        if (is_zero()) throw std::domain_error("valuation of zero is undefined");
        return val_;
    }

    LRational with_value(Rat v) const { return LRational(std::move(v), prime_); }

  private:
    Rat value_;
    Prime prime_;
    long val_ = 0;
};

long valuation(const LRational& x);

// The l-adic integral part of Definition: the unique a in Z[1/l] with
// 0 <= a < l and |x - a|_l < 1.  Zero and everything of positive
// valuation floor to 0.
PartialQuotient padic_floor(const LRational& x);

// Digits c_i in [0, l) of the canonical Hensel expansion x = sum c_i l^i,
// for lo <= i <= hi.  Computed digit by digit with plain rational
// arithmetic, independently of padic_floor's batched modular route.
// Requires lo <= hi and, for x != 0, lo <= v(x).
std::vector<Int> digit_expansion(const LRational& x, long lo, long hi);

enum class SqrtStatus {
    exists,           // sqrt(D) is in Q_l (and irrational)
    not_in_ql,        // no square root in Q_l
    rational_square,  // D is a perfect square; use the rational path
};

// Writes D = l^h * Dt with l not dividing Dt; sqrt(D) lies in Q_l iff h is
// even and Dt is a square mod l (odd l) resp. Dt = 1 mod 8 (l = 2).
SqrtStatus sqrt_exists(const Int& D, const Prime& l);

// One of the two square roots of D in Z_l, known to precision l^k.
// `branch` selects the root: its residue mod l for odd l, mod 8 for l = 2.
struct HenselRoot {
    Int delta_mod;     // residue mod l^modulus_exp
    long modulus_exp;  // k
    Int target;        // D, with l not dividing D
    Int branch;
};

// Requires l not dividing D and sqrt(D) in Q_l.  Lifts the branch residue
// by Newton steps (odd l) or digit-by-digit (l = 2); re-lifting to higher
// precision never changes the digits already known.
HenselRoot hensel_sqrt(const Int& D, const Prime& l, const Int& branch, long k);

// delta mod l^k for the full ordinate Delta = l^{2h} * Dt (the branch
// refers to the unit part Dt).  Handles the l^h scaling.
Int delta_digits(const Int& Delta, const Prime& l, const Int& branch, long k);

// Checks that `branch` selects a square root of the unit Dt (mod l for odd
// l; mod 16 for l = 2, the smallest modulus whose residue pins down one of
// the two genuine 2-adic roots).
bool branch_valid(const Int& Dt, const Prime& l, const Int& branch);

// v(A + B*delta) for integers A, B (not both zero), delta the branch root
// of Delta in Z_l with v(Delta) even.
long valuation_quad(const Int& A, const Int& B, const Int& Delta,
                    const Prime& l, const Int& branch);

// Smallest branch residue selecting a root of the unit Dt, and the branch
// of the opposite root -delta.
Int default_branch(const Int& Dt, const Prime& l);
Int opposite_branch(const Int& branch, const Prime& l);

}  // namespace ruban
