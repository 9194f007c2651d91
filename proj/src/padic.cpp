#include "ruban/padic.hpp"

#include <algorithm>

namespace ruban {

std::string PartialQuotient::str(const Prime& l) const {
    if (e == 0) return r.get_str();
    return r.get_str() + "/" + l.pow(static_cast<unsigned long>(e)).get_str();
}

PartialQuotient make_quotient(Int r, long e, const Prime& l) {
    if (e < 0) throw std::domain_error("negative quotient exponent");
    if (r < 0 || r >= l.pow(static_cast<unsigned long>(e + 1)))
        throw std::domain_error("quotient numerator out of range");
    if (r == 0 && e != 0)
        throw std::domain_error("zero quotient must have exponent 0");
    if (e > 0 && r % l.value() == 0)
        throw std::domain_error("quotient numerator divisible by l");
    return PartialQuotient{std::move(r), e};
}

LRational::LRational(Rat value, Prime prime)
    : value_(std::move(value)), prime_(std::move(prime)) {
    if (value_ != 0) {
        long vn = value_.get_num() != 0
                      ? valuation_int(Int(value_.get_num()), prime_.value())
                      : 0;
        long vd = valuation_int(Int(value_.get_den()), prime_.value());
        val_ = vn - vd;
    }
}

long valuation(const LRational& x) { return x.val(); }

PartialQuotient padic_floor(const LRational& x) {
    if (x.is_zero() || x.val() >= 1) return PartialQuotient{Int(0), 0};
    const Prime& l = x.prime();
    long e = -x.val();  // >= 0
    // Unit part of x * l^e, reduced mod l^{e+1}.
    Int nu = x.num();
    Int du = x.den();
    mpz_remove(nu.get_mpz_t(), nu.get_mpz_t(), l.value().get_mpz_t());
    mpz_remove(du.get_mpz_t(), du.get_mpz_t(), l.value().get_mpz_t());
    Int m = l.pow(static_cast<unsigned long>(e + 1));
    Int r = mod_nonneg(nu * mod_inverse(du, m), m);
    return PartialQuotient{std::move(r), e};
}

std::vector<Int> digit_expansion(const LRational& x, long lo, long hi) {
    if (lo > hi) throw std::domain_error("empty digit range");
    std::vector<Int> digits;
    digits.reserve(static_cast<size_t>(hi - lo + 1));
    if (x.is_zero()) {
        digits.assign(static_cast<size_t>(hi - lo + 1), Int(0));
        return digits;
    }
    long v = x.val();
    if (lo > v) throw std::domain_error("digit range starts above the valuation");
    const Int& l = x.prime().value();
    // y starts as the unit x / l^v; one digit is peeled per index
    Rat y = x.value();
    if (v > 0)
        y /= Rat(int_pow(l, static_cast<unsigned long>(v)));
    else if (v < 0)
        y *= Rat(int_pow(l, static_cast<unsigned long>(-v)));
    for (long i = lo; i <= hi; ++i) {
        if (i < v) {
            digits.emplace_back(0);
            continue;
        }
        if (y == 0) {
            digits.emplace_back(0);
            continue;
        }
        Int c = mod_nonneg(Int(y.get_num()) * mod_inverse(Int(y.get_den()), l), l);
        digits.push_back(c);
        y = (y - Rat(c)) / Rat(l);
    }
    return digits;
}

SqrtStatus sqrt_exists(const Int& D, const Prime& l) {
    if (D == 0) throw std::domain_error("sqrt_exists: D must be nonzero");
    if (is_perfect_square(D)) return SqrtStatus::rational_square;
    long h = valuation_int(D, l.value());
    if (h % 2 != 0) return SqrtStatus::not_in_ql;
    Int dt = D / int_pow(l.value(), static_cast<unsigned long>(h));
    if (l.is_two())
        return mod_nonneg(dt, Int(8)) == 1 ? SqrtStatus::exists
                                           : SqrtStatus::not_in_ql;
    Int r = mod_nonneg(dt, l.value());
    Int euler;
    Int exp = (l.value() - 1) / 2;
    mpz_powm(euler.get_mpz_t(), r.get_mpz_t(), exp.get_mpz_t(),
             l.value().get_mpz_t());
    return euler == 1 ? SqrtStatus::exists : SqrtStatus::not_in_ql;
}

bool branch_valid(const Int& Dt, const Prime& l, const Int& branch) {
    if (l.is_two()) {
        if (branch != 1 && branch != 3 && branch != 5 && branch != 7)
            return false;
        return mod_nonneg(branch * branch - Dt, Int(16)) == 0;
    }
    if (branch < 1 || branch >= l.value()) return false;
    return mod_nonneg(branch * branch - Dt, l.value()) == 0;
}

HenselRoot hensel_sqrt(const Int& D, const Prime& l, const Int& branch, long k) {
    if (k < 1) throw std::domain_error("precision must be >= 1");
    if (mod_nonneg(D, l.value()) == 0)
        throw std::domain_error("hensel_sqrt needs l not dividing D");
    if (!branch_valid(D, l, branch))
        throw std::domain_error("branch " + branch.get_str() +
                                " does not select a square root of " +
                                D.get_str());
    if (l.is_two()) {
        if (k <= 3)
            return HenselRoot{mod_nonneg(branch, Int(1) << k), k, D, branch};
        // Digit-by-digit lift keeping x = delta mod 2^j, which forces
        // x^2 = D mod 2^{j+1}; of the two extensions mod 2^{j+1} exactly
        // one keeps the congruence one level higher.
        long j = 3;
        Int x = mod_nonneg(branch, Int(8));
        while (j < k) {
            Int cand = x + (Int(1) << j);
            Int mod_hi = Int(1) << (j + 2);
            if (mod_nonneg(x * x - D, mod_hi) != 0) x = cand;
            ++j;
        }
        return HenselRoot{mod_nonneg(x, Int(1) << k), k, D, branch};
    }
    // Newton lifting x <- (x + D/x)/2 doubles the known precision.
    long j = 1;
    Int x = mod_nonneg(branch, l.value());
    while (j < k) {
        long j2 = std::min(2 * j, k);
        Int m = l.pow(static_cast<unsigned long>(j2));
        Int inv_x = mod_inverse(x, m);
        Int inv2 = mod_inverse(Int(2), m);
        x = mod_nonneg((x + D * inv_x) * inv2, m);
        j = j2;
    }
    if (mod_nonneg(x * x - D, l.pow(static_cast<unsigned long>(k))) != 0)
        throw internal_error("hensel lift failed to converge");
    return HenselRoot{std::move(x), k, D, branch};
}

Int delta_digits(const Int& Delta, const Prime& l, const Int& branch, long k) {
    long v = valuation_int(Delta, l.value());
    if (v % 2 != 0) throw std::domain_error("ordinate has odd valuation");
    long h = v / 2;
    if (k <= h) return Int(0);
    Int dt = Delta / l.pow(static_cast<unsigned long>(v));
    HenselRoot root = hensel_sqrt(dt, l, branch, k - h);
    return mod_nonneg(root.delta_mod * l.pow(static_cast<unsigned long>(h)),
                      l.pow(static_cast<unsigned long>(k)));
}

Int default_branch(const Int& Dt, const Prime& l) {
    if (l.is_two()) {
        for (long b : {1, 3}) {
            if (branch_valid(Dt, l, Int(b))) return Int(b);
        }
        throw std::domain_error("no 2-adic square root of " + Dt.get_str());
    }
    for (Int b = 1; b < l.value(); ++b)
        if (mod_nonneg(b * b - Dt, l.value()) == 0) return b;
    throw std::domain_error("no square root of " + Dt.get_str() + " mod " +
                            l.value().get_str());
}

Int opposite_branch(const Int& branch, const Prime& l) {
    Int m = l.is_two() ? Int(8) : l.value();
    return mod_nonneg(-branch, m);
}

long valuation_quad(const Int& A, const Int& B, const Int& Delta,
                    const Prime& l, const Int& branch) {
    if (B == 0) return valuation_int(A, l.value());
    Int norm = A * A - B * B * Delta;
    if (norm == 0) throw std::domain_error("A + B*delta is zero");
    long n = valuation_int(norm, l.value());
    Int d = delta_digits(Delta, l, branch, n + 1);
    Int m = l.pow(static_cast<unsigned long>(n + 1));
    Int r = mod_nonneg(A + B * d, m);
    if (r == 0) throw internal_error("valuation_quad: residue vanished");
    return valuation_int(r, l.value());
}

}  // namespace ruban
