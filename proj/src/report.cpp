#include "ruban/report.hpp"

namespace ruban {

Json quotient_json(const PartialQuotient& a) {
    return Json{{"r", a.r.get_str()}, {"e", a.e}};
}

PartialQuotient quotient_from_json(const Json& j) {
    return PartialQuotient{Int(j.at("r").get<std::string>()),
                           j.at("e").get<long>()};
}

Json surd_json(const QuadraticSurd& s) {
    return Json{{"Delta", s.Delta.get_str()}, {"b", s.b.get_str()},
                {"c", s.c.get_str()},         {"f", s.f},
                {"branch", s.branch.get_str()}};
}

QuadraticSurd surd_from_json(const Json& j, const Prime& l) {
    return make_surd(Int(j.at("Delta").get<std::string>()),
                     Int(j.at("b").get<std::string>()),
                     Int(j.at("c").get<std::string>()), j.at("f").get<long>(),
                     l, Int(j.at("branch").get<std::string>()));
}

Json trace_json(const Trace& t) {
    Json steps = Json::array();
    for (const TraceStep& s : t.steps) {
        Json step{{"a", quotient_json(s.a)}, {"e", s.e}};
        if (s.alpha_rat) step["alpha"] = rat_str(*s.alpha_rat);
        if (s.alpha_surd) step["alpha_surd"] = surd_json(*s.alpha_surd);
        steps.push_back(std::move(step));
    }
    Json p = Json::array(), q = Json::array(), sv = Json::array();
    for (const Rat& x : t.p) p.push_back(rat_str(x));
    for (const Rat& x : t.q) q.push_back(rat_str(x));
    for (long x : t.s) sv.push_back(x);
    Json out{{"prime", t.prime.value().get_str()}};
    if (t.input_rat) out["input"] = rat_str(*t.input_rat);
    if (t.input_surd) out["input_surd"] = surd_json(*t.input_surd);
    out["steps"] = std::move(steps);
    out["p"] = std::move(p);
    out["q"] = std::move(q);
    out["s"] = std::move(sv);
    out["terminated"] = t.terminated;
    return out;
}

Trace trace_from_json(const Json& j) {
    Prime l{Int(j.at("prime").get<std::string>())};
    Trace t(l);
    if (j.contains("input")) t.input_rat = Rat(j.at("input").get<std::string>());
    if (j.contains("input_surd"))
        t.input_surd = surd_from_json(j.at("input_surd"), l);
    if (!t.input_rat && !t.input_surd)
        throw std::domain_error("trace lacks an input value");
    for (const Json& js : j.at("steps")) {
        TraceStep step;
        step.a = quotient_from_json(js.at("a"));
        step.e = js.at("e").get<long>();
        if (js.contains("alpha")) step.alpha_rat = Rat(js.at("alpha").get<std::string>());
        if (js.contains("alpha_surd"))
            step.alpha_surd = surd_from_json(js.at("alpha_surd"), l);
        if (!step.alpha_rat && !step.alpha_surd)
            throw std::domain_error("trace step lacks a complete quotient");
        // each stored complete quotient must reproduce its own quotient row
        if (step.alpha_rat) {
            LRational alpha(*step.alpha_rat, l);
            if (padic_floor(alpha) != step.a)
                throw std::domain_error("stored quotient is not the floor of "
                                        "its complete quotient");
            long e = alpha.is_zero() ? 0 : -alpha.val();
            if (e != step.e)
                throw std::domain_error("stored exponent disagrees with the "
                                        "complete quotient");
        } else {
            if (surd_floor(*step.alpha_surd) != step.a)
                throw std::domain_error("stored quotient is not the floor of "
                                        "its complete quotient");
            if (-surd_val(*step.alpha_surd) != step.e)
                throw std::domain_error("stored exponent disagrees with the "
                                        "complete quotient");
        }
        t.record(step);
    }
    t.terminated = j.at("terminated").get<bool>();
    // the stored convergents must agree with the recurrence
    auto check_vec = [&](const char* key, const std::vector<Rat>& mine) {
        const Json& stored = j.at(key);
        if (stored.size() != mine.size())
            throw std::domain_error(std::string("stored ") + key +
                                    " has the wrong length");
        for (size_t i = 0; i < mine.size(); ++i)
            if (Rat(stored[i].get<std::string>()) != mine[i])
                throw std::domain_error(std::string("stored ") + key +
                                        " disagrees with the recurrence");
    };
    check_vec("p", t.p);
    check_vec("q", t.q);
    const Json& sv = j.at("s");
    if (sv.size() != t.s.size())
        throw std::domain_error("stored s has the wrong length");
    for (size_t i = 0; i < t.s.size(); ++i)
        if (sv[i].get<long>() != t.s[i])
            throw std::domain_error("stored s disagrees with the exponents");
    return t;
}

VerifySummary verify_trace(const Trace& t) {
    VerifySummary out;
    out.checks.emplace_back("qn-bound", check_qn_bound(t));
    out.checks.emplace_back("height-bounds", check_height_bounds(t));
    out.checks.emplace_back("ladic-approx", check_ladic_approx(t));
    if (t.quadratic())
        out.checks.emplace_back("growth-bounds", check_growth_bounds(t));
    for (const auto& [name, res] : out.checks)
        if (!res.ok) out.all_ok = false;
    return out;
}

Json verify_json(const VerifySummary& s) {
    Json checks = Json::object();
    for (const auto& [name, res] : s.checks) {
        checks[name] =
            res.ok ? Json{{"ok", true}}
                   : Json{{"ok", false}, {"message", res.message}};
    }
    return Json{{"checks", std::move(checks)}, {"all_ok", s.all_ok}};
}

std::string quotients_str(const std::vector<PartialQuotient>& qs,
                          const Prime& l) {
    std::string out = "[";
    for (size_t i = 0; i < qs.size(); ++i) {
        if (i) out += ", ";
        out += qs[i].str(l);
    }
    return out + "]";
}

}  // namespace ruban
