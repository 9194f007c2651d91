#include "ruban/prime.hpp"

namespace ruban {

namespace {

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, long r) {
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (long i = 1; i < r; ++i) {
        x = mod_nonneg(x * x, n);
        if (x == n - 1) return false;
    }
    return true;  // composite witness found
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    static const long small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                        23, 29, 31, 37, 41, 43, 47};
    for (long p : small_primes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // n - 1 = d * 2^r with d odd
    Int d = n - 1;
    long r = valuation_int(d, Int(2));
    d >>= r;
    static const long witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (long a : witnesses)
        if (miller_rabin_witness(n, Int(a), d, r)) return false;
    return true;
}

}  // namespace ruban
