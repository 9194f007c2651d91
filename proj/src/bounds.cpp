#include "ruban/bounds.hpp"

#include <algorithm>

namespace ruban {

namespace {

Rat pow_rat(const Rat& x, unsigned long e) {
    Rat acc(1);
    Rat base = x;
    unsigned long n = e;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

// l^k for possibly negative k.
Rat l_pow(const Prime& l, long k) {
    if (k >= 0) return Rat(l.pow(static_cast<unsigned long>(k)));
    return make_rat(Int(1), l.pow(static_cast<unsigned long>(-k)));
}

// sign of u + v*sqrt(D), D >= 0 nonsquare or 0.
int sign_quad(const Rat& u, const Rat& v, const Int& D) {
    int su = sgn(u), sv = sgn(v);
    if (D == 0 || sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // opposite signs: compare u^2 against v^2 D
    Rat u2 = u * u, v2d = v * v * Rat(D);
    if (u2 == v2d) return 0;  // only possible when D is a square
    bool u_wins = u2 > v2d;
    return u_wins ? su : sv;
}

// x + y*sqrt(D) with exact comparison; D is shared by construction.
struct QuadVal {
    Rat x, y;
    Int D;
};

int cmp_quad(const QuadVal& a, const QuadVal& b) {
    return sign_quad(a.x - b.x, a.y - b.y, a.D);
}

QuadVal mul_quad(const QuadVal& a, const QuadVal& b) {
    return QuadVal{a.x * b.x + a.y * b.y * Rat(a.D), a.x * b.y + a.y * b.x,
                   a.D};
}

// Squared multiplicative height of a complete quotient, as x + y sqrt(Dref):
// H^2 equals the Mahler measure of the primitive minimal polynomial.
QuadVal squared_height(const TraceStep& step, const Int& Dref) {
    if (step.alpha_rat) {
        Int h = rat_height(*step.alpha_rat);
        return QuadVal{Rat(h * h), Rat(0), Dref};
    }
    const QuadraticSurd& s = *step.alpha_surd;
    Int k = s.c * s.prime.pow(static_cast<unsigned long>(std::max(s.f, 0L)));
    if (s.f < 0) throw internal_error("negative exponent in height computation");
    Int A0 = k * k;
    Int B0 = -2 * s.b * k;
    Int C0 = s.b * s.b - s.Delta;
    Int g = gcd(gcd(A0, B0), C0);
    Int A = A0 / g, B = B0 / g, C = C0 / g;
    // |gamma_pm| vs 1: sign of (b +- sqrt(Delta))^2 - k^2
    auto abs_cmp_one = [&](int pm) {
        return sign_quad(Rat(s.b * s.b + s.Delta - k * k), Rat(2 * pm * s.b),
                         s.Delta);
    };
    int plus = abs_cmp_one(1), minus = abs_cmp_one(-1);
    if (plus == 0 || minus == 0)
        throw internal_error("surd conjugate on the unit circle");
    // scale sqrt(Delta) to sqrt(Dref): sqrt(Delta) = sc * sqrt(Dref)
    Int prod = s.Delta * Dref;
    if (!is_perfect_square(prod))
        throw internal_error("ordinates of one trace lie in different fields");
    Rat sc = make_rat(isqrt(prod), Dref);
    if (plus > 0 && minus > 0) return QuadVal{Rat(abs(C)), Rat(0), Dref};
    if (plus < 0 && minus < 0) return QuadVal{Rat(abs(A)), Rat(0), Dref};
    // mixed: M = (|B| + 2|k|/g sqrt(Delta)) / 2
    return QuadVal{Rat(abs(B)) / 2, Rat(abs(k)) / Rat(g) * sc, Dref};
}

QuadVal squared_height_input(const Trace& trace, const Int& Dref) {
    if (trace.input_rat) {
        Int h = rat_height(*trace.input_rat);
        return QuadVal{Rat(h * h), Rat(0), Dref};
    }
    TraceStep fake;
    fake.alpha_surd = trace.input_surd;
    return squared_height(fake, Dref);
}

}  // namespace

RationalInterval c2_interval(const Prime& l, long precision_bits) {
    // largest root of x^2 - (l^2+2)x + 1
    Int l2 = l.value() * l.value();
    Rat lo(l2), hi(l2 + 2);
    Rat target = make_rat(Int(1), Int(1) << std::min(precision_bits, 62L));
    if (precision_bits > 62) target = pow_rat(Rat(1, 2), precision_bits);
    auto eval = [&](const Rat& x) -> Rat { return x * x - Rat(l2 + 2) * x + 1; };
    while (hi - lo > target) {
        Rat mid = (lo + hi) / 2;
        Rat fm = eval(mid);
        if (fm == 0) return RationalInterval{mid, mid};
        if (fm < 0)
            lo = mid;
        else
            hi = mid;
    }
    return RationalInterval{lo, hi};
}

RationalInterval lambda_interval(const PartialQuotient& a, const Prime& l,
                                 long precision_bits) {
    Rat av = a.value(l);
    if (av < 0) throw std::domain_error("lambda needs a nonnegative quotient");
    auto eval = [&](const Rat& x) -> Rat { return x * x - av * x - 1; };
    Rat lo = 1 + av / 2;
    Rat hi = av + 1;
    if (a.e >= 1) {
        // lambda(a) <= l^e, equality exactly when a = l - 1/l
        Rat cap = Rat(l.pow(static_cast<unsigned long>(a.e)));
        Rat fcap = eval(cap);
        if (fcap == 0) return RationalInterval{cap, cap};
        if (fcap > 0 && cap < hi) hi = cap;
    }
    Rat target = precision_bits > 62 ? pow_rat(Rat(1, 2), precision_bits)
                                     : make_rat(Int(1), Int(1) << precision_bits);
    if (eval(lo) == 0) return RationalInterval{lo, lo};
    while (hi - lo > target) {
        Rat mid = (lo + hi) / 2;
        Rat fm = eval(mid);
        if (fm == 0) return RationalInterval{mid, mid};
        if (fm < 0)
            lo = mid;
        else
            hi = mid;
    }
    return RationalInterval{lo, hi};
}

CheckResult check_qn_bound(const Trace& trace, long precision_bits) {
    size_t k = trace.steps.size();
    Rat pprod(1), qprod(1);
    for (size_t n = 0; n < k; ++n) {
        RationalInterval li =
            lambda_interval(trace.steps[n].a, trace.prime, precision_bits);
        pprod *= li.hi;
        if (n >= 1) qprod *= li.hi;
        size_t idx = n + 1;  // p_{n+1} uses a_0..a_n
        if (idx >= 2 && idx < trace.p.size()) {
            if (trace.p[idx] > pprod)
                return CheckResult{false, "p_" + std::to_string(idx) +
                                              " exceeds its lambda product"};
            if (trace.q[idx] > qprod)
                return CheckResult{false, "q_" + std::to_string(idx) +
                                              " exceeds its lambda product"};
        }
    }
    return CheckResult{};
}

CheckResult check_height_bounds(const Trace& trace) {
    if (trace.steps.empty()) return CheckResult{};
    Int Dref = trace.quadratic() ? trace.input_surd->Delta : Int(0);
    const Prime& l = trace.prime;
    Rat two_l(2 * l.value());

    // base point: the input when e_0 >= 0, else the first complete quotient
    size_t i0 = 0;
    QuadVal base = squared_height_input(trace, Dref);
    if (trace.steps[0].e < 0) {
        i0 = 1;
        if (trace.steps.size() < 2) return CheckResult{};
        base = squared_height(trace.steps[1], Dref);
    }
    long s0 = trace.s[i0];

    for (size_t n = i0; n < trace.steps.size(); ++n) {
        QuadVal mn = squared_height(trace.steps[n], Dref);
        // first form: H_n <= H_base * l^{s_n - s_0} * (2l)^{n - i0}
        Rat factor = l_pow(l, trace.s[n] - s0) *
                     pow_rat(two_l, static_cast<unsigned long>(n - i0));
        QuadVal rhs{base.x * factor * factor, base.y * factor * factor, Dref};
        if (cmp_quad(mn, rhs) > 0)
            return CheckResult{false,
                               "height bound (linear form) fails at step " +
                                   std::to_string(n)};
        // second form: (2l) H_n <= ((2l) H_base)^{2^{n-i0}}, squared
        QuadVal lhs{mn.x * two_l * two_l, mn.y * two_l * two_l, Dref};
        QuadVal acc{base.x * two_l * two_l, base.y * two_l * two_l, Dref};
        bool ok = false;
        for (size_t j = 0; j < n - i0; ++j) {
            if (cmp_quad(acc, lhs) >= 0) {
                ok = true;  // squaring only grows values >= 1
                break;
            }
            acc = mul_quad(acc, acc);
        }
        if (!ok) ok = cmp_quad(lhs, acc) <= 0;
        if (!ok)
            return CheckResult{false,
                               "height bound (doubling form) fails at step " +
                                   std::to_string(n)};
    }
    return CheckResult{};
}

GrowthConstants growth_constants(const Trace& trace, long precision_bits) {
    if (!trace.quadratic() || trace.steps.empty() ||
        !trace.steps[0].alpha_surd)
        throw std::domain_error("growth constants need a quadratic trace");
    const QuadraticSurd& s0 = *trace.steps[0].alpha_surd;
    const Prime& l = trace.prime;
    Rat k0 = Rat(s0.c) * l_pow(l, s0.f);
    Rat km1 = Rat(s0.Delta - s0.b * s0.b) / k0;
    Rat c3 = abs(km1) + abs(k0) + Rat(abs(s0.b));
    return GrowthConstants{c2_interval(l, precision_bits), c3};
}

CheckResult check_growth_bounds(const Trace& trace) {
    if (!trace.quadratic())
        return CheckResult{false, "growth bounds apply to quadratic expansions"};
    const Prime& l = trace.prime;
    GrowthConstants gc = growth_constants(trace, 32);
    Rat c3 = gc.C3;

    long prec = 32;
    for (size_t n = 0; n < trace.steps.size(); ++n) {
        const QuadraticSurd& s = *trace.steps[n].alpha_surd;
        Rat bn(abs(s.b));
        Rat kn = abs(Rat(s.c) * l_pow(l, s.f));
        // f_n < 3n + log C3 / log l, exactly
        if (l_pow(l, s.f) >= c3 * l_pow(l, 3 * static_cast<long>(n)))
            return CheckResult{false, "f_" + std::to_string(n) +
                                          " breaks 3n + C4"};
        for (;;) {
            Rat lo_pow = pow_rat(gc.C2.lo, n);
            Rat hi_pow = pow_rat(gc.C2.hi, n);
            if (bn <= c3 * lo_pow && kn <= c3 * lo_pow) break;
            if (bn > c3 * hi_pow)
                return CheckResult{false, "|b_" + std::to_string(n) +
                                              "| breaks C3 C2^n"};
            if (kn > c3 * hi_pow)
                return CheckResult{false, "|c_" + std::to_string(n) +
                                              " l^f| breaks C3 C2^n"};
            prec *= 2;
            if (prec > 1 << 16)
                throw internal_error("C2 refinement did not separate");
            gc.C2 = c2_interval(l, prec);
        }
    }
    return CheckResult{};
}

CheckResult check_ladic_approx(const Trace& trace) {
    if (trace.steps.empty()) return CheckResult{};
    const Prime& l = trace.prime;
    long e0 = trace.steps[0].e;

    auto phi_val = [&](size_t n) -> long {
        // v(p_n - alpha q_n)
        if (trace.input_rat) {
            Rat diff = trace.p[n] - *trace.input_rat * trace.q[n];
            if (diff == 0) throw internal_error("vanishing phi_n midway");
            return LRational(diff, l).val();
        }
        const QuadraticSurd& s = *trace.input_surd;
        Rat k = Rat(s.c) * l_pow(l, s.f);
        Rat A = trace.p[n] * k - trace.q[n] * Rat(s.b);
        Rat B = -trace.q[n];
        // clear the l-power denominators
        long m = 0;
        Int da(A.get_den()), db(B.get_den());
        m = std::max(da == 1 ? 0 : valuation_int(da, l.value()),
                     db == 1 ? 0 : valuation_int(db, l.value()));
        Rat scale = l_pow(l, m);
        Rat As = A * scale, Bs = B * scale;
        if (As.get_den() != 1 || Bs.get_den() != 1)
            throw internal_error("phi numerator did not clear to integers");
        // phi = (A + B delta)/k with v(k) = f, since l never divides c
        return valuation_quad(Int(As.get_num()), Int(Bs.get_num()), s.Delta,
                              l, s.branch) -
               m - s.f;
    };

    // equality holds at every step before the expansion closes
    size_t last = trace.steps.size() - 1;
    for (size_t n = 0; n + 1 <= last; ++n) {
        long expected = trace.s[n + 1] - e0;
        long got = phi_val(n);
        if (got != expected)
            return CheckResult{false,
                               "v(p_n - a q_n) != s_{n+1} - e_0 at n = " +
                                   std::to_string(n)};
    }
    if (trace.terminated && trace.input_rat) {
        // closing convergent reproduces the value exactly
        size_t k = trace.steps.size();
        if (trace.p[k] != *trace.input_rat * trace.q[k])
            return CheckResult{false, "terminated expansion: p_k != alpha q_k"};
    }
    return CheckResult{};
}

}  // namespace ruban
