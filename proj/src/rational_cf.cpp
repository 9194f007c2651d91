#include "ruban/rational_cf.hpp"

namespace ruban {

std::pair<PartialQuotient, std::optional<LRational>> step_rational(
    const LRational& x) {
    PartialQuotient a = padic_floor(x);
    Rat rest = x.value() - a.value(x.prime());
    if (rest == 0) return {std::move(a), std::nullopt};
    Rat next = Rat(1) / rest;
    return {std::move(a), x.with_value(std::move(next))};
}

long ceil_log(const Int& b, const Prime& l) {
    if (b < 1) throw std::domain_error("ceil_log needs b >= 1");
    long k = 0;
    Int power(1);
    while (power < b) {
        power *= l.value();
        ++k;
    }
    return k;
}

RationalClassification classify_rational(const LRational& x) {
    RationalClassification out{RationalOutcome::finite, 0, Int(0)};
    long b1 = std::max(ceil_log(x.den(), x.prime()), 2L);
    out.bound_used = b1;
    // A non-terminating expansion shows a negative complete quotient at an
    // index <= B_1, so the complete quotients alpha_0..alpha_{B_1} are
    // examined with at most B_1 steps in between.
    LRational cur = x;
    for (long n = 0; n <= b1; ++n) {
        out.steps_used = n;
        if (cur.value() < 0) {
            out.outcome = RationalOutcome::periodic;
            return out;
        }
        auto [a, next] = step_rational(cur);
        if (!next) {
            out.outcome = RationalOutcome::finite;
            return out;
        }
        cur = *next;
    }
    throw internal_error("rational classifier undecided within B_1 steps");
}

RationalExpansion expand_rational(const LRational& x) {
    const Prime& l = x.prime();
    RationalExpansion out{RationalOutcome::finite, {}, Int(0), Trace(l), {}};
    out.trace.input_rat = x.value();
    Int height = rat_height(x.value());
    Int b2 = 32 * l.value() * height * height;
    out.bound_used = b2;
    bool track_tilde = x.is_zero() || x.val() <= 0;
    if (track_tilde) out.tilde.emplace();

    Rat minus_inv_l = make_rat(Int(-1), l.value());

    LRational cur = x;
    for (Int i = 1; i <= b2 + 1; ++i) {
        if (cur.value() == minus_inv_l) {
            out.outcome = RationalOutcome::periodic;
            return out;
        }
        auto [a, next] = step_rational(cur);
        TraceStep step;
        step.a = a;
        step.e = cur.is_zero() ? 0 : -cur.val();
        step.alpha_rat = cur.value();
        out.trace.record(step);
        out.quotients.push_back(a);
        if (out.tilde) out.tilde->push(a, l);
        if (!next) {
            out.outcome = RationalOutcome::finite;
            out.trace.terminated = true;
            return out;
        }
        cur = *next;
    }
    throw internal_error("expansion did not resolve within 32 l H^2 steps");
}

Rat reconstruct_rational(const RationalExpansion& exp) {
    const Prime& l = exp.trace.prime;
    if (exp.outcome == RationalOutcome::finite) {
        if (exp.quotients.empty())
            throw std::domain_error("empty finite expansion");
        Rat acc = exp.quotients.back().value(l);
        for (size_t i = exp.quotients.size() - 1; i-- > 0;) {
            if (acc == 0) throw internal_error("zero tail while folding");
            acc = exp.quotients[i].value(l) + Rat(1) / acc;
        }
        return acc;
    }
    // alpha = (t p_n + p_{n-1}) / (t q_n + q_{n-1}) with t = -1/l the value
    // of the periodic tail and n the preperiod length.
    Rat t = make_rat(Int(-1), l.value());
    size_t n = exp.quotients.size();
    if (n == 0) return t;
    const Rat& pn = exp.trace.p[n];
    const Rat& pn1 = exp.trace.p[n - 1];
    const Rat& qn = exp.trace.q[n];
    const Rat& qn1 = exp.trace.q[n - 1];
    Rat den = t * qn + qn1;
    if (den == 0) throw internal_error("degenerate reconstruction denominator");
    return (t * pn + pn1) / den;
}

RationalScan scan_primes_rational(const Rat& x, const Int& l_max) {
    if (x == 0) throw std::domain_error("scan requires a nonzero rational");
    RationalScan out;
    Int n = abs(Int(x.get_num()));
    Int m(x.get_den());
    out.integer_input = m == 1;
    if (x < 0) {
        out.periodic_beyond = Int(0);  // periodic for every prime
    } else if (m > 1) {
        out.periodic_beyond = n > m ? n : m;  // part (iii): l > max(n, m)
    }
    // (for a nonnegative integer the expansion is finite for all l > x)
    for (Int p = 2; p <= l_max; ++p) {
        if (!is_prime(p)) continue;
        Prime l(p);
        LRational xl(x, l);
        RationalClassification c = classify_rational(xl);
        ScanEntry entry{p, c.outcome, 0};
        if (c.outcome == RationalOutcome::finite)
            entry.finite_length =
                static_cast<long>(expand_rational(xl).quotients.size());
        out.entries.push_back(entry);
    }
    return out;
}

}  // namespace ruban
