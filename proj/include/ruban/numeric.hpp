#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ruban {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when an internal invariant fails (a bug, not a bad input).
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Largest k with p^k | x.  Requires x != 0.
inline long valuation_int(const Int& x, const Int& p) {
    if (x == 0) throw std::domain_error("valuation of zero is undefined");
    Int reduced;
    return static_cast<long>(
        mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

inline bool is_perfect_square(const Int& x) {
    return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

// floor(sqrt(x)), x >= 0.
inline Int isqrt(const Int& x) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

// Representative of a mod m in [0, m).
inline Int mod_nonneg(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("no modular inverse of " + a.get_str() +
                                " mod " + m.get_str());
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Multiplicative height of a reduced fraction: max(|num|, |den|).
inline Int rat_height(const Rat& x) {
    Int n = abs(x.get_num());
    const Int& d = x.get_den();
    return n > d ? n : Int(d);
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

}  // namespace ruban
