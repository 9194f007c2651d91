#include "ruban/pure_periodic.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace ruban {

namespace {

using Key = std::tuple<Int, Int, long>;

Key key_of(const QuadraticSurd& s) { return Key{s.b, s.c, s.f}; }

}  // namespace

std::vector<Candidate> candidate_list(const Int& Delta, const Prime& l,
                                      const Int& branch) {
    if (Delta <= 0) throw std::domain_error("ordinate must be positive");
    if (mod_nonneg(Delta, l.value()) == 0)
        throw std::domain_error(
            "strip square factors of l from the ordinate first");
    if (sqrt_exists(Delta, l) != SqrtStatus::exists)
        throw std::domain_error(
            "sqrt of the ordinate is not in Q_l (or is rational)");
    std::vector<Candidate> out;
    Int t = isqrt(Delta);
    for (long f = 1; l.pow(static_cast<unsigned long>(f + 1)) <= Delta; ++f) {
        Int cmax = Delta / l.pow(static_cast<unsigned long>(f + 1));
        for (Int cabs = 1; cabs <= cmax; ++cabs) {
            if (mod_nonneg(cabs, l.value()) == 0) continue;
            for (int cs : {1, -1}) {
                Int c = cs * cabs;
                for (Int b = -t; b <= t; ++b) {
                    // tuples are kept verbatim (no rescale): the list is a
                    // superset compared by (b, c, f) membership
                    out.push_back(
                        Candidate{QuadraticSurd{Delta, b, c, f, l, branch},
                                  false, false});
                }
            }
        }
    }
    return out;
}

std::vector<Candidate> ppp_filter(std::vector<Candidate> cands) {
    std::vector<Candidate> out;
    for (Candidate& cand : cands) {
        const QuadraticSurd& s = cand.surd;
        long v_num = valuation_quad(s.b, Int(1), s.Delta, s.prime, s.branch);
        long v_conj = valuation_quad(s.b, Int(-1), s.Delta, s.prime, s.branch);
        cand.passed_valuation = (v_num - s.f < 0) && (v_conj - s.f > 0);
        if (!cand.passed_valuation) continue;
        auto signs = embedding_signs(s);
        cand.passed_sign = signs && ((signs->first > 0) != (signs->second > 0));
        if (!cand.passed_sign) continue;
        out.push_back(cand);
    }
    return out;
}

PurePeriodicReport determine_pure_periodic(const Int& Delta, const Prime& l,
                                           const Int& branch) {
    PurePeriodicReport report;
    std::vector<Candidate> cands = candidate_list(Delta, l, branch);
    report.candidates = cands.size();
    std::vector<Candidate> kept = ppp_filter(std::move(cands));
    report.filtered = kept.size();

    std::set<Key> in_list;
    for (const Candidate& c : kept) in_list.insert(key_of(c.surd));

    for (const Candidate& c : kept) {
        // a purely periodic value must carry the divisibility shape already
        if ((c.surd.Delta - c.surd.b * c.surd.b) % c.surd.c != 0) continue;
        const Key start = key_of(c.surd);
        QuadraticSurd cur = c.surd;
        std::vector<PartialQuotient> period;
        bool confirmed = false;
        for (size_t i = 0; i < kept.size() + 1; ++i) {
            auto [a, next] = surd_step(cur);
            period.push_back(a);
            cur = next;
            if (key_of(cur) == start) {
                confirmed = true;
                break;
            }
            if (!in_list.count(key_of(cur))) break;
        }
        if (confirmed)
            report.confirmed.push_back(
                PurePeriodicSurd{c.surd, std::move(period)});
    }
    std::sort(report.confirmed.begin(), report.confirmed.end(),
              [](const PurePeriodicSurd& a, const PurePeriodicSurd& b) {
                  return key_of(a.surd) < key_of(b.surd);
              });
    return report;
}

std::vector<PellSolution> pell_period1(const Int& Delta, const Prime& l,
                                       long h_max, const Int& branch) {
    if (Delta <= 0 || is_perfect_square(Delta))
        throw std::domain_error(
            "Pell search needs a positive nonsquare ordinate");
    std::vector<PellSolution> out;
    for (long h = 1; h <= h_max; ++h) {
        Int range = l.pow(static_cast<unsigned long>(h + 1));
        Int four_l2h = 4 * l.pow(static_cast<unsigned long>(2 * h));
        for (Int t = 1; t < range; ++t) {
            if (mod_nonneg(t, l.value()) == 0) continue;
            Int rhs = t * t + four_l2h;
            if (rhs % Delta != 0) continue;
            Int usq = rhs / Delta;
            if (!is_perfect_square(usq)) continue;
            Int u = isqrt(usq);

            // sign on delta making |x|_l > 1
            long vplus = valuation_quad(t, u, Delta, l, branch);
            long vminus = valuation_quad(t, -u, Delta, l, branch);
            int u_sign = vplus <= vminus ? 1 : -1;
            Int num_u = u_sign * u;
            Int den = 2 * l.pow(static_cast<unsigned long>(h));
            Int g = gcd(gcd(t, u), den);
            out.push_back(PellSolution{
                h, t, u, t / g, num_u / g, den / g, u_sign,
                make_quotient(t, h, l),
                fold_surd(Delta, t, num_u, den, l, branch)});
        }
    }
    return out;
}

}  // namespace ruban
