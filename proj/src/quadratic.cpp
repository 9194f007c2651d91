#include "ruban/quadratic.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace ruban {

bool is_standard(const QuadraticSurd& x) {
    if (x.f < 0) return false;
    if ((x.Delta - x.b * x.b) %
            (x.c * x.prime.pow(static_cast<unsigned long>(x.f))) !=
        0)
        return false;
    if (mod_nonneg(x.Delta, x.prime.value()) == 0) return false;
    long v = surd_val(x);
    if (x.prime.is_two()) return v == 1 - x.f && v < 0;
    return v == -x.f && v < 0;
}

Standardized reduce_to_standard(QuadraticSurd x) {
    if (surd_val(x) > 0)
        throw std::domain_error("reduce_to_standard requires v(x) <= 0");
    Standardized out{{}, {}, x};
    if (is_standard(x)) return out;
    const Prime& l = x.prime;
    long h = valuation_int(x.Delta, l.value()) / 2;
    for (long i = 1; i <= h + 2; ++i) {
        auto [a, next] = surd_step(x);
        out.prefix.push_back(a);
        out.states.push_back(x);
        x = next;
        // strip square factors of l shared by b and Delta
        long hd = valuation_int(x.Delta, l.value()) / 2;
        long k = x.b == 0 ? hd : std::min(hd, valuation_int(x.b, l.value()));
        if (k > 0) {
            Int lk = l.pow(static_cast<unsigned long>(k));
            x.b /= lk;
            x.Delta /= lk * lk;
            x.f -= k;
        }
        if (is_standard(x)) {
            out.surd = x;
            return out;
        }
    }
    throw internal_error(
        "standard shape not reached within v(Delta)/2 + 2 steps");
}

Int n_alpha(const QuadraticSurd& x, bool improved) {
    if (x.Delta < 0)
        throw std::domain_error("n_alpha needs a positive ordinate");
    Int babs = abs(x.b);
    if (!improved) {
        Int t = isqrt(x.Delta);
        Int head = babs > t ? babs - t : Int(0);
        return head + (2 * t + 1) * x.Delta - t * (t + 1) * (2 * t + 1) / 3 + 1;
    }
    long v = valuation_int(x.Delta, x.prime.value());
    long h = v / 2;
    Int dt = x.Delta / x.prime.pow(static_cast<unsigned long>(v));
    Int t = isqrt(x.Delta);
    Int tt = isqrt(dt);
    Int head = babs - t > h + 2 ? babs - t : Int(h + 2);
    return head + (2 * tt + 1) * dt - tt * (tt + 1) * (2 * tt + 1) / 3 + 1;
}

void canonicalize_period(std::vector<PartialQuotient>& preperiod,
                         std::vector<PartialQuotient>& period) {
    if (period.empty()) throw internal_error("empty period");
    while (!preperiod.empty() && preperiod.back() == period.back()) {
        preperiod.pop_back();
        std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    }
    for (size_t d = 1; d <= period.size() / 2; ++d) {
        if (period.size() % d != 0) continue;
        bool rep = true;
        for (size_t i = d; i < period.size() && rep; ++i)
            rep = period[i] == period[i % d];
        if (rep) {
            period.resize(d);
            break;
        }
    }
}

namespace {

TraceStep surd_trace_step(const PartialQuotient& a, const QuadraticSurd& cq) {
    TraceStep step;
    step.a = a;
    step.e = -surd_val(cq);
    step.alpha_surd = cq;
    return step;
}

}  // namespace

QuadraticClassification classify_quadratic(const QuadraticSurd& x,
                                           const ClassifyOptions& opts) {
    QuadraticClassification out(x.prime);
    out.bound_used = 0;
    out.trace.input_surd = x;
    if (x.Delta < 0) {
        out.tag = QuadraticClassification::Tag::aperiodic;
        out.no_real_embedding = true;
        out.witness = x;
        out.witness_index = 0;
        return out;
    }
    std::vector<PartialQuotient> quotients;
    QuadraticSurd cur = x;
    if (surd_val(cur) > 0) {
        auto [a, next] = surd_step(cur);  // the leading zero quotient
        out.trace.record(surd_trace_step(a, cur));
        quotients.push_back(a);
        cur = next;
    }
    Standardized st = reduce_to_standard(cur);
    for (size_t i = 0; i < st.prefix.size(); ++i)
        out.trace.record(surd_trace_step(st.prefix[i], st.states[i]));
    quotients.insert(quotients.end(), st.prefix.begin(), st.prefix.end());
    cur = st.surd;
    size_t m0 = quotients.size();

    Int bound =
        opts.max_steps ? *opts.max_steps : n_alpha(cur, opts.improved_bound);
    out.bound_used = bound;

    using Key = std::tuple<Int, Int, long>;
    std::map<Key, size_t> seen;
    std::vector<std::pair<Key, size_t>> seen_list;

    for (Int n = 0; n <= bound; ++n) {
        auto signs = embedding_signs(cur);
        if (signs->first < 0 && signs->second < 0) {
            out.tag = QuadraticClassification::Tag::aperiodic;
            out.prefix = quotients;
            out.witness = cur;
            out.witness_index = quotients.size();
            out.steps_used = quotients.size();
            // record the witness itself so the trace covers it
            out.trace.record(surd_trace_step(surd_floor(cur), cur));
            return out;
        }
        Key key{cur.b, cur.c, cur.f};
        std::optional<size_t> hit;
        if (opts.naive_scan) {
            for (const auto& [k, idx] : seen_list)
                if (k == key) {
                    hit = idx;
                    break;
                }
        } else {
            auto it = seen.find(key);
            if (it != seen.end()) hit = it->second;
        }
        if (hit) {
            out.tag = QuadraticClassification::Tag::periodic;
            out.preperiod.assign(
                quotients.begin(),
                quotients.begin() + static_cast<long>(m0 + *hit));
            out.period.assign(quotients.begin() + static_cast<long>(m0 + *hit),
                              quotients.end());
            canonicalize_period(out.preperiod, out.period);
            out.steps_used = quotients.size();
            return out;
        }
        if (opts.naive_scan)
            seen_list.emplace_back(key, quotients.size() - m0);
        else
            seen.emplace(key, quotients.size() - m0);
        auto [a, next] = surd_step(cur);
        out.trace.record(surd_trace_step(a, cur));
        quotients.push_back(a);
        cur = next;
    }
    if (opts.max_steps)
        throw std::domain_error(
            "not resolved within --max-steps; the classification needs up to "
            "N_alpha = " +
            n_alpha(st.surd, opts.improved_bound).get_str() + " steps");
    throw internal_error("classifier exhausted its step bound N_alpha");
}

bool aperiodicity_threshold(const Int& A, const Int& B, const Int& C,
                            const Prime& l) {
    if (A <= 0) throw std::domain_error("leading coefficient must be positive");
    Int disc = B * B - 4 * A * C;
    if (disc == 0 || is_perfect_square(disc))
        throw std::domain_error("polynomial is reducible over Q");
    if (disc < 0) throw std::domain_error("negative discriminant");
    if (mod_nonneg(A, l.value()) == 0) return false;
    return 4 * A * l.value() > disc && l.value() > C;
}

bool family_nonperiodic_check(const Int& k, long h, const Prime& l) {
    if (l.is_two())
        throw std::domain_error("family check requires an odd prime");
    if (k <= 0 || h <= 0) throw std::domain_error("k and h must be positive");
    Int lh = l.pow(static_cast<unsigned long>(h));
    Int delta = 1 + k * lh;
    if (is_perfect_square(delta))
        throw std::domain_error("Delta = 1 + k*l^h is a perfect square");
    return delta > (lh + 1) * (lh + 1);
}

}  // namespace ruban
