#include "ruban/surd.hpp"

#include <algorithm>

namespace ruban {

namespace {

Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Branch residue for the root scaled by a unit u (u coprime to l).
Int scale_branch(const Int& branch, const Int& u, const Prime& l) {
    Int m = l.is_two() ? Int(8) : l.value();
    return mod_nonneg(branch * u, m);
}

Int unit_part(const Int& x, const Prime& l) {
    Int r;
    mpz_remove(r.get_mpz_t(), x.get_mpz_t(), l.value().get_mpz_t());
    return r;
}

void check_surd(const QuadraticSurd& s) {
    if ((s.Delta - s.b * s.b) % s.c != 0)
        throw internal_error("surd lost the divisibility shape c | Delta-b^2");
}

}  // namespace

std::string QuadraticSurd::str() const {
    Int den = abs(c);
    if (f >= 0) den *= prime.pow(static_cast<unsigned long>(f));
    std::string out;
    if (c >= 0)
        out = "(" + b.get_str() + "+sqrt(" + Delta.get_str() + "))";
    else if (b > 0)  // -(b+sqrt(D))/den reads better than (-b-sqrt(D))/den
        out = "-(" + b.get_str() + "+sqrt(" + Delta.get_str() + "))";
    else
        out = "(" + Int(-b).get_str() + "-sqrt(" + Delta.get_str() + "))";
    if (den != 1) out += "/" + den.get_str();
    if (f < 0) out += "*" + prime.pow(static_cast<unsigned long>(-f)).get_str();
    return out;
}

QuadraticSurd make_surd(Int Delta, Int b, Int c, long f, Prime prime,
                        Int branch) {
    if (c == 0) throw std::domain_error("surd denominator c must be nonzero");
    if (mod_nonneg(c, prime.value()) == 0) {
        // pull powers of l out of c into the exponent
        long g = valuation_int(c, prime.value());
        c /= prime.pow(static_cast<unsigned long>(g));
        f += g;
    }
    switch (sqrt_exists(Delta, prime)) {
        case SqrtStatus::rational_square:
            throw std::domain_error("ordinate " + Delta.get_str() +
                                    " is a perfect square; the value is "
                                    "rational, use the rational path");
        case SqrtStatus::not_in_ql:
            throw std::domain_error("sqrt(" + Delta.get_str() +
                                    ") does not lie in Q_" +
                                    prime.value().get_str());
        case SqrtStatus::exists:
            break;
    }
    Int dt = unit_part(Delta, prime);
    if (!branch_valid(dt, prime, branch))
        throw std::domain_error("branch " + branch.get_str() +
                                " does not select a square root of the unit "
                                "part of " +
                                Delta.get_str());
    if ((Delta - b * b) % c != 0) {
        Int d = c / gcd_int(c, b * b - Delta);
        b *= d;
        Delta *= d * d;
        c *= d;
        branch = scale_branch(branch, d, prime);
    }
    QuadraticSurd s{std::move(Delta), std::move(b), std::move(c), f,
                    std::move(prime), std::move(branch)};
    check_surd(s);
    return s;
}

QuadraticSurd fold_surd(const Int& D, const Int& B, const Int& U,
                        const Int& den, const Prime& prime,
                        const Int& branch) {
    if (U == 0)
        throw std::domain_error("zero coefficient on sqrt: value is rational");
    if (den == 0) throw std::domain_error("zero denominator");
    Int delta2 = U * U * D;
    Int new_branch = scale_branch(branch, unit_part(U, prime), prime);
    long f = valuation_int(den, prime.value());
    Int c = den / prime.pow(static_cast<unsigned long>(f));
    return make_surd(std::move(delta2), B, std::move(c), f, prime,
                     std::move(new_branch));
}

long surd_num_val(const QuadraticSurd& x) {
    return valuation_quad(x.b, Int(1), x.Delta, x.prime, x.branch);
}

long surd_val(const QuadraticSurd& x) { return surd_num_val(x) - x.f; }

bool same_value(const QuadraticSurd& x, const QuadraticSurd& y) {
    if (x.prime != y.prime) return false;
    Int prod = x.Delta * y.Delta;
    if (!is_perfect_square(prod)) return false;
    // delta_x = sign * s * delta_y with s = sqrt(Dx/Dy) rational
    Rat s = make_rat(isqrt(prod), y.Delta);
    const Prime& l = x.prime;
    Int m = l.is_two() ? Int(8) : l.value();
    Int s_res = mod_nonneg(unit_part(Int(s.get_num()), l) *
                               mod_inverse(unit_part(Int(s.get_den()), l), m),
                           m);
    int sign;
    if (mod_nonneg(s_res * y.branch, m) == mod_nonneg(x.branch, m))
        sign = 1;
    else if (mod_nonneg(-s_res * y.branch, m) == mod_nonneg(x.branch, m))
        sign = -1;
    else
        return false;
    auto denom = [](const QuadraticSurd& z) {
        Rat k(z.c);
        if (z.f >= 0)
            k *= Rat(z.prime.pow(static_cast<unsigned long>(z.f)));
        else
            k /= Rat(z.prime.pow(static_cast<unsigned long>(-z.f)));
        return k;
    };
    Rat kx = denom(x), ky = denom(y);
    return Rat(x.b) / kx == Rat(y.b) / ky && Rat(sign) * s / kx == Rat(1) / ky;
}

PartialQuotient surd_floor(const QuadraticSurd& x) {
    const Prime& l = x.prime;
    if (x.f < 0) return PartialQuotient{Int(0), 0};  // v(x) >= 1
    Int m = l.pow(static_cast<unsigned long>(x.f + 1));
    Int d = delta_digits(x.Delta, l, x.branch, x.f + 1);
    Int r0 = mod_nonneg(x.b + d, m);
    if (r0 == 0) return PartialQuotient{Int(0), 0};  // v(x) >= 1
    long w = valuation_int(r0, l.value());           // = v(b + delta) <= f
    long e = x.f - w;
    Int me = l.pow(static_cast<unsigned long>(e + 1));
    Int u = mod_nonneg(r0 / l.pow(static_cast<unsigned long>(w)), me);
    Int r = mod_nonneg(u * mod_inverse(x.c, me), me);
    return make_quotient(std::move(r), e, l);
}

std::pair<PartialQuotient, QuadraticSurd> surd_step(const QuadraticSurd& x) {
    check_surd(x);
    const Prime& l = x.prime;
    PartialQuotient a = surd_floor(x);
    Int b1;
    if (a.is_zero()) {
        b1 = -x.b;
    } else {
        long w = x.f - a.e;  // = v(b + delta) >= 0
        b1 = a.r * l.pow(static_cast<unsigned long>(w)) * x.c - x.b;
    }
    Int num = x.Delta - b1 * b1;
    if (num == 0) throw internal_error("surd step hit a rational value");
    long n = valuation_int(num, l.value());
    long f1 = n - x.f;
    Int den = l.pow(static_cast<unsigned long>(n)) * x.c;
    if (num % den != 0)
        throw internal_error("surd recurrence divisibility failed");
    Int c1 = num / den;
    if (!a.is_zero() && f1 < 1)
        throw internal_error("next exponent f' < 1 after a nonzero quotient");
    return {std::move(a), QuadraticSurd{x.Delta, std::move(b1), std::move(c1),
                                        f1, l, x.branch}};
}

std::optional<std::pair<int, int>> embedding_signs(const QuadraticSurd& x) {
    if (x.Delta < 0) return std::nullopt;
    int cs = x.c < 0 ? -1 : 1;
    int plus = x.b >= 0 ? 1 : (x.Delta > x.b * x.b ? 1 : -1);
    int minus = x.b <= 0 ? -1 : (x.b * x.b > x.Delta ? 1 : -1);
    return std::make_pair(plus * cs, minus * cs);
}

}  // namespace ruban
