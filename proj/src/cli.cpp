#include "ruban/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "ruban/pure_periodic.hpp"
#include "ruban/report.hpp"

namespace ruban {

namespace {

// ---------------------------------------------------------------- parsing

struct Cursor {
    const std::string& s;
    size_t i = 0;

    bool eat(char c) {
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat(const std::string& word) {
        if (s.compare(i, word.size(), word) == 0) {
            i += word.size();
            return true;
        }
        return false;
    }
    bool done() const { return i == s.size(); }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::domain_error("cannot parse \"" + s + "\": expected " + what);
    }
    Int integer() {
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            fail("an integer");
        return Int(s.substr(start, i - start));
    }
};

struct NumberSpec {
    bool is_surd = false;
    Rat rat;
    Int D, b, u, den;  // surd parts before coefficient folding
};

std::string strip_spaces(const std::string& in) {
    std::string out;
    for (char c : in)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

// [+-]? digits [/ digits]; parsed in base 10 (no octal/hex surprises)
Rat parse_rational(const std::string& s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    size_t d0 = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == d0) throw std::domain_error("cannot parse rational \"" + s + "\"");
    Int num(s.substr(d0, i - d0), 10);
    Int den(1);
    if (i < s.size()) {
        if (s[i] != '/')
            throw std::domain_error("cannot parse rational \"" + s + "\"");
        size_t d1 = ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == d1 || i != s.size())
            throw std::domain_error("cannot parse rational \"" + s + "\"");
        den = Int(s.substr(d1), 10);
    }
    if (neg) num = -num;
    return make_rat(num, den);
}

// Surd grammar: ['-'] '(' b (('+'|'-') [u '*'] 'sqrt(' D ')') ')' ['/' den]
// with den either '(' c '*' l '^' f ')' or a plain integer; also a bare
// [u '*'] 'sqrt(' D ')'.
NumberSpec parse_number(const std::string& raw, const Prime& l) {
    std::string s = strip_spaces(raw);
    NumberSpec out;
    if (s.find("sqrt") == std::string::npos) {
        out.rat = parse_rational(s);
        return out;
    }
    out.is_surd = true;
    Cursor c{s};
    bool negate = c.eat('-');
    auto parse_sqrt_term = [&](int sign) {
        // [u '*'] 'sqrt(' D ')'
        Int u(sign);
        if (!c.eat("sqrt(")) {
            u = sign * c.integer();
            if (!c.eat('*')) c.fail("'*' before sqrt");
            if (!c.eat("sqrt(")) c.fail("sqrt(");
        }
        Int d = c.integer();
        if (!c.eat(')')) c.fail("')' after the radicand");
        out.u = u;
        out.D = d;
    };
    if (c.eat('(')) {
        out.b = c.integer();
        int sign = 0;
        if (c.eat('+'))
            sign = 1;
        else if (c.eat('-'))
            sign = -1;
        else
            c.fail("'+' or '-' before the sqrt term");
        parse_sqrt_term(sign);
        if (!c.eat(')')) c.fail("closing ')'");
    } else {
        out.b = 0;
        parse_sqrt_term(1);
    }
    out.den = 1;
    if (c.eat('/')) {
        if (c.eat('(')) {
            Int cf = c.integer();
            if (!c.eat('*')) c.fail("'*' in the denominator");
            Int base = c.integer();
            if (!c.eat('^')) c.fail("'^' in the denominator");
            Int exp = c.integer();
            if (!c.eat(')')) c.fail("')' closing the denominator");
            if (base != l.value())
                throw std::domain_error("denominator base " + base.get_str() +
                                        " differs from the prime " +
                                        l.value().get_str());
            if (exp < 0) throw std::domain_error("negative exponent in denominator");
            out.den = cf * int_pow(base, exp.get_ui());
        } else {
            out.den = c.integer();
        }
    }
    if (!c.done()) c.fail("end of input");
    if (negate) {
        out.b = -out.b;
        out.u = -out.u;
    }
    if (out.den == 0) throw std::domain_error("zero denominator");
    return out;
}

struct PolySpec {
    Int A, B, C;
};

// [A] 'x^2' [('+'|'-') [B] 'x'] [('+'|'-') C]
PolySpec parse_poly(const std::string& raw) {
    std::string s = strip_spaces(raw);
    Cursor c{s};
    PolySpec out{Int(1), Int(0), Int(0)};
    if (!c.eat("x^2")) {
        out.A = c.integer();
        c.eat('*');
        if (!c.eat("x^2")) c.fail("x^2");
    }
    auto tail_sign = [&]() -> int {
        if (c.eat('+')) return 1;
        if (c.eat('-')) return -1;
        return 0;
    };
    int sign = tail_sign();
    if (sign != 0) {
        // either Bx or the constant term
        size_t mark = c.i;
        bool bare_x = c.eat('x');
        if (bare_x) {
            out.B = sign;
        } else {
            Int v = c.integer();
            if (c.eat('*')) {
                if (!c.eat('x')) c.fail("x");
                out.B = sign * v;
            } else if (c.eat('x')) {
                out.B = sign * v;
            } else {
                out.C = sign * v;
                (void)mark;
            }
        }
        if (out.C == 0 && !c.done()) {
            int s2 = tail_sign();
            if (s2 == 0) c.fail("'+' or '-'");
            out.C = s2 * c.integer();
        }
    }
    if (!c.done()) c.fail("end of input");
    return out;
}

// ---------------------------------------------------------------- helpers

std::string pell_surd_str(const PellSolution& sol, const Int& Delta) {
    std::string num = sol.red_b.get_str();
    if (sol.red_u >= 0)
        num += "+";
    else
        num += "-";
    Int ua = abs(sol.red_u);
    if (ua != 1) num += ua.get_str() + "*";
    num += "sqrt(" + Delta.get_str() + ")";
    std::string out = "(" + num + ")";
    if (sol.red_den != 1) out += "/" + sol.red_den.get_str();
    return out;
}

QuadraticSurd surd_from_spec(const NumberSpec& spec, const Prime& l,
                             const std::optional<Int>& branch) {
    if (!branch)
        throw std::domain_error("surd input needs --branch (root residue mod " +
                                std::string(l.is_two() ? "8" : l.value().get_str()) +
                                ")");
    return fold_surd(spec.D, spec.b, spec.u, spec.den, l, *branch);
}

Json input_json(const NumberSpec& spec, const std::string& raw) {
    if (!spec.is_surd) return Json{{"kind", "rational"}, {"value", rat_str(spec.rat)}};
    return Json{{"kind", "surd"},
                {"value", strip_spaces(raw)},
                {"D", spec.D.get_str()},
                {"b", spec.b.get_str()},
                {"u", spec.u.get_str()},
                {"den", spec.den.get_str()}};
}

// ---------------------------------------------------------------- commands

struct Ctx {
    std::ostream& out;
    std::ostream& err;
    bool json = false;
    bool trace = false;
};

void emit(Ctx& ctx, const Json& report, const std::string& human) {
    if (ctx.json)
        ctx.out << report.dump(2) << "\n";
    else
        ctx.out << human;
}

void append_trace_human(std::ostringstream& os, const Trace& t) {
    const Prime& l = t.prime;
    for (size_t n = 0; n < t.steps.size(); ++n) {
        const TraceStep& st = t.steps[n];
        os << "  n=" << n << ": a=" << st.a.str(l) << " e=" << st.e;
        if (st.alpha_rat) os << " alpha=" << rat_str(*st.alpha_rat);
        if (st.alpha_surd) os << " alpha=" << st.alpha_surd->str();
        os << " p=" << rat_str(t.p[n + 1]) << " q=" << rat_str(t.q[n + 1])
           << "\n";
    }
}

int cmd_floor(Ctx& ctx, const Prime& l, const std::string& spec_raw,
              const std::optional<Int>& branch) {
    NumberSpec spec = parse_number(spec_raw, l);
    PartialQuotient a = spec.is_surd
                            ? surd_floor(surd_from_spec(spec, l, branch))
                            : padic_floor(LRational(spec.rat, l));
    Json report{{"command", "floor"},
                {"prime", l.value().get_str()},
                {"input", input_json(spec, spec_raw)},
                {"floor", quotient_json(a)},
                {"display", a.str(l)}};
    emit(ctx, report, a.str(l) + "\n");
    return 0;
}

int cmd_expand_rational(Ctx& ctx, const Prime& l, const NumberSpec& spec,
                        const std::string& raw) {
    RationalExpansion exp = expand_rational(LRational(spec.rat, l));
    Json cls;
    std::ostringstream human;
    if (exp.outcome == RationalOutcome::finite) {
        cls = Json{{"tag", "finite"}};
        Json qs = Json::array();
        for (const auto& a : exp.quotients) qs.push_back(quotient_json(a));
        cls["quotients"] = std::move(qs);
        human << "finite: " << quotients_str(exp.quotients, l) << "\n";
    } else {
        cls = Json{{"tag", "periodic-rational"}};
        Json pre = Json::array();
        for (const auto& a : exp.quotients) pre.push_back(quotient_json(a));
        cls["preperiod"] = std::move(pre);
        cls["period"] = Json::array({quotient_json(exp.period_quotient())});
        human << "periodic: preperiod " << quotients_str(exp.quotients, l)
              << ", period [" << exp.period_quotient().str(l) << "]\n";
    }
    human << "bound: B2 = " << exp.bound_used.get_str() << "\n";
    if (ctx.trace) append_trace_human(human, exp.trace);
    Json report{{"command", "expand"},
                {"prime", l.value().get_str()},
                {"input", input_json(spec, raw)},
                {"classification", std::move(cls)},
                {"bounds", Json{{"B2", exp.bound_used.get_str()}}},
                {"trace", trace_json(exp.trace)}};
    emit(ctx, report, human.str());
    return 0;
}

int cmd_expand_surd(Ctx& ctx, const Prime& l, const NumberSpec& spec,
                    const std::string& raw, const std::optional<Int>& branch,
                    const ClassifyOptions& opts) {
    QuadraticSurd s = surd_from_spec(spec, l, branch);
    QuadraticClassification cls = classify_quadratic(s, opts);
    Json jc;
    std::ostringstream human;
    if (cls.periodic()) {
        jc = Json{{"tag", "periodic"}};
        Json pre = Json::array(), per = Json::array();
        for (const auto& a : cls.preperiod) pre.push_back(quotient_json(a));
        for (const auto& a : cls.period) per.push_back(quotient_json(a));
        jc["preperiod"] = std::move(pre);
        jc["period"] = std::move(per);
        human << "periodic: preperiod " << quotients_str(cls.preperiod, l)
              << ", period " << quotients_str(cls.period, l) << "\n";
    } else {
        jc = Json{{"tag", "aperiodic"},
                  {"witness_index", cls.witness_index},
                  {"no_real_embedding", cls.no_real_embedding}};
        if (cls.witness) jc["witness"] = surd_json(*cls.witness);
        Json pre = Json::array();
        for (const auto& a : cls.prefix) pre.push_back(quotient_json(a));
        jc["prefix"] = std::move(pre);
        if (cls.no_real_embedding) {
            human << "aperiodic; no real embedding (Delta < 0)\n";
        } else {
            human << "aperiodic; witness step " << cls.witness_index << ": "
                  << cls.witness->str() << "\n";
            human << "prefix " << quotients_str(cls.prefix, l) << "\n";
        }
    }
    human << "bound: N = " << cls.bound_used.get_str() << " (resolved in "
          << cls.steps_used << " steps)\n";
    if (ctx.trace) append_trace_human(human, cls.trace);
    Json report{{"command", "expand"},
                {"prime", l.value().get_str()},
                {"input", input_json(spec, raw)},
                {"classification", std::move(jc)},
                {"bounds", Json{{"N", cls.bound_used.get_str()}}},
                {"trace", trace_json(cls.trace)}};
    emit(ctx, report, human.str());
    return 0;
}

int cmd_classify(Ctx& ctx, const Prime& l, const std::string& raw,
                 const std::optional<Int>& branch,
                 const ClassifyOptions& opts) {
    NumberSpec spec = parse_number(raw, l);
    if (!spec.is_surd) {
        RationalClassification c = classify_rational(LRational(spec.rat, l));
        const char* tag =
            c.outcome == RationalOutcome::finite ? "finite" : "periodic";
        Json report{{"command", "classify"},
                    {"prime", l.value().get_str()},
                    {"input", input_json(spec, raw)},
                    {"classification", Json{{"tag", tag}}},
                    {"bounds", Json{{"B1", c.bound_used.get_str()}}}};
        emit(ctx, report,
             std::string(tag) + "\nbound: B1 = " + c.bound_used.get_str() +
                 "\n");
        return 0;
    }
    QuadraticSurd s = surd_from_spec(spec, l, branch);
    QuadraticClassification c = classify_quadratic(s, opts);
    const char* tag = c.periodic() ? "periodic" : "aperiodic";
    Json report{{"command", "classify"},
                {"prime", l.value().get_str()},
                {"input", input_json(spec, raw)},
                {"classification", Json{{"tag", tag}}},
                {"bounds", Json{{"N", c.bound_used.get_str()}}}};
    emit(ctx, report,
         std::string(tag) + "\nbound: N = " + c.bound_used.get_str() + "\n");
    return 0;
}

int cmd_pure_periodic(Ctx& ctx, const Prime& l, const Int& Delta,
                      std::optional<Int> branch, std::optional<long> pell_h,
                      bool show_filtered) {
    if (Delta != 0 && valuation_int(Delta, l.value()) > 0)
        throw std::domain_error(
            "strip square factors of l from the ordinate first");
    if (sqrt_exists(Delta, l) != SqrtStatus::exists)
        throw std::domain_error("sqrt(" + Delta.get_str() +
                                ") does not lie in Q_" +
                                l.value().get_str() + " (or is rational)");
    if (!branch) branch = default_branch(Delta, l);
    if (pell_h) {
        std::vector<PellSolution> sols = pell_period1(Delta, l, *pell_h, *branch);
        std::ostringstream human;
        Json rows = Json::array();
        for (long h = 1; h <= *pell_h; ++h) {
            bool any = false;
            for (const PellSolution& sol : sols) {
                if (sol.h != h) continue;
                any = true;
                human << "h=" << h << ": t=" << sol.t.get_str()
                      << " u=" << sol.u.get_str()
                      << " x=" << pell_surd_str(sol, Delta) << " period=["
                      << sol.quotient.str(l) << "]\n";
                rows.push_back(Json{{"h", h},
                                    {"t", sol.t.get_str()},
                                    {"u", sol.u.get_str()},
                                    {"red_b", sol.red_b.get_str()},
                                    {"red_u", sol.red_u.get_str()},
                                    {"red_den", sol.red_den.get_str()},
                                    {"surd", pell_surd_str(sol, Delta)},
                                    {"period", quotient_json(sol.quotient)}});
            }
            if (!any) human << "h=" << h << ": none\n";
        }
        Json report{{"command", "pure-periodic"},
                    {"prime", l.value().get_str()},
                    {"Delta", Delta.get_str()},
                    {"branch", branch->get_str()},
                    {"pell", rows}};
        emit(ctx, report, human.str());
        return 0;
    }
    PurePeriodicReport rep = determine_pure_periodic(Delta, l, *branch);
    std::ostringstream human;
    if (show_filtered)
        human << "candidates: " << rep.candidates
              << " -> filtered: " << rep.filtered
              << " -> confirmed: " << rep.confirmed.size() << "\n";
    Json rows = Json::array();
    for (const PurePeriodicSurd& pp : rep.confirmed) {
        human << pp.surd.str() << ": period " << quotients_str(pp.period, l)
              << "\n";
        Json per = Json::array();
        for (const auto& a : pp.period) per.push_back(quotient_json(a));
        rows.push_back(
            Json{{"surd", surd_json(pp.surd)}, {"display", pp.surd.str()},
                 {"period", std::move(per)}});
    }
    if (rep.confirmed.empty()) human << "no purely periodic surd of ordinate "
                                     << Delta.get_str() << "\n";
    Json report{{"command", "pure-periodic"},
                {"prime", l.value().get_str()},
                {"Delta", Delta.get_str()},
                {"branch", branch->get_str()},
                {"candidates", rep.candidates},
                {"filtered", rep.filtered},
                {"confirmed", std::move(rows)}};
    emit(ctx, report, human.str());
    return 0;
}

int cmd_scan(Ctx& ctx, const Int& l_max, const std::string& raw) {
    std::string s = strip_spaces(raw);
    std::ostringstream human;
    if (s.find("x^2") != std::string::npos) {
        PolySpec poly = parse_poly(s);
        if (poly.A < 0) {
            poly.A = -poly.A;
            poly.B = -poly.B;
            poly.C = -poly.C;
        }
        if (poly.A == 0) throw std::domain_error("not a quadratic polynomial");
        Int disc = poly.B * poly.B - 4 * poly.A * poly.C;
        if (disc == 0 || is_perfect_square(disc))
            throw std::domain_error("polynomial is reducible over Q");
        Json rows = Json::array();
        for (Int p = 2; p <= l_max; ++p) {
            if (!is_prime(p)) continue;
            Prime l(p);
            Json row{{"l", p.get_str()}};
            if (disc < 0) {
                row["status"] = "aperiodic";
                row["note"] = "no real embedding";
                human << "l=" << p.get_str() << ": aperiodic (no real embedding)\n";
                rows.push_back(std::move(row));
                continue;
            }
            if (sqrt_exists(disc, l) != SqrtStatus::exists) {
                row["status"] = "no-root";
                human << "l=" << p.get_str() << ": no root in Q_" << p.get_str()
                      << "\n";
                rows.push_back(std::move(row));
                continue;
            }
            long v = valuation_int(disc, l.value());
            Int dt = disc / l.pow(static_cast<unsigned long>(v));
            Int br = default_branch(dt, l);
            bool all_aperiodic = true;
            for (const Int& branch : {br, opposite_branch(br, l)}) {
                QuadraticSurd root =
                    fold_surd(disc, -poly.B, Int(1), 2 * poly.A, l, branch);
                QuadraticClassification c = classify_quadratic(root);
                if (c.periodic()) all_aperiodic = false;
            }
            bool threshold = aperiodicity_threshold(poly.A, poly.B, poly.C, l);
            row["status"] = all_aperiodic ? "aperiodic" : "periodic";
            row["threshold"] = threshold;
            human << "l=" << p.get_str() << ": "
                  << (all_aperiodic ? "aperiodic" : "periodic")
                  << (threshold ? " [threshold]" : "") << "\n";
            rows.push_back(std::move(row));
        }
        Json report{{"command", "scan"},
                    {"poly", Json{{"A", poly.A.get_str()},
                                  {"B", poly.B.get_str()},
                                  {"C", poly.C.get_str()}}},
                    {"l_max", l_max.get_str()},
                    {"entries", std::move(rows)}};
        emit(ctx, report, human.str());
        return 0;
    }
    // rational scan
    Rat x = parse_rational(s);
    RationalScan scan = scan_primes_rational(x, l_max);
    Json rows = Json::array();
    for (const ScanEntry& e : scan.entries) {
        Json row{{"l", e.prime.get_str()},
                 {"status", e.outcome == RationalOutcome::finite ? "finite"
                                                                 : "periodic"}};
        if (e.outcome == RationalOutcome::finite)
            row["length"] = e.finite_length;
        human << "l=" << e.prime.get_str() << ": "
              << (e.outcome == RationalOutcome::finite ? "finite" : "periodic");
        if (e.outcome == RationalOutcome::finite)
            human << " (length " << e.finite_length << ")";
        human << "\n";
        rows.push_back(std::move(row));
    }
    Json report{{"command", "scan"},
                {"input", rat_str(x)},
                {"l_max", l_max.get_str()},
                {"entries", std::move(rows)}};
    if (scan.periodic_beyond) {
        report["periodic_beyond"] = scan.periodic_beyond->get_str();
        if (*scan.periodic_beyond == 0)
            human << "periodic for every prime\n";
        else
            human << "periodic for every prime l > "
                  << scan.periodic_beyond->get_str() << "\n";
    } else if (scan.integer_input && x >= 0) {
        report["finite_beyond"] = Int(x.get_num()).get_str();
        human << "finite (length 1) for every prime l > " << x.get_num()
              << "\n";
    }
    emit(ctx, report, human.str());
    return 0;
}

int cmd_verify(Ctx& ctx, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::domain_error("invalid JSON in " + path + ": " + e.what());
    }
    const Json& jt = j.contains("trace") ? j.at("trace") : j;
    Trace t = [&] {
        try {
            return trace_from_json(jt);
        } catch (const Json::exception& e) {
            throw std::domain_error("report schema mismatch: " +
                                    std::string(e.what()));
        }
    }();
    VerifySummary sum = verify_trace(t);
    std::ostringstream human;
    for (const auto& [name, res] : sum.checks) {
        human << name << ": " << (res.ok ? "ok" : "FAILED") ;
        if (!res.ok) human << " (" << res.message << ")";
        human << "\n";
    }
    human << (sum.all_ok ? "all checks passed\n" : "verification failed\n");
    emit(ctx, verify_json(sum), human.str());
    return sum.all_ok ? 0 : 1;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
    for (std::string& a : args)
        if (a == "-l-max") a = "--l-max";  // tolerated single-dash spelling

    CLI::App app{"Ruban l-adic continued fraction toolkit"};
    app.require_subcommand(1);

    std::string prime_str, spec, branch_str, max_steps_str, file;
    std::string lmax_str, delta_str;
    bool json = false, trace = false, improved = false, show_filtered = false;
    long pell_h = -1;

    auto add_common = [&](CLI::App* sub, bool needs_prime = true) {
        if (needs_prime)
            sub->add_option("-l,--prime", prime_str, "the prime l")->required();
        sub->add_flag("--json", json, "machine-readable output");
        return sub;
    };

    CLI::App* floor_cmd = add_common(app.add_subcommand(
        "floor", "l-adic integral part of a rational or quadratic surd"));
    floor_cmd->add_option("spec", spec, "number, e.g. 5/6 or (0+sqrt(13))/(1*3^0)")
        ->required();
    floor_cmd->add_option("--branch", branch_str, "root residue for surds");

    CLI::App* expand_cmd = add_common(
        app.add_subcommand("expand", "full Ruban continued fraction expansion"));
    expand_cmd->add_option("spec", spec)->required();
    expand_cmd->add_option("--branch", branch_str);
    expand_cmd->add_option("--max-steps", max_steps_str,
                           "override the classifier step bound");
    expand_cmd->add_flag("--improved-bound", improved,
                         "use the sharpened step bound");
    expand_cmd->add_flag("--trace", trace, "print per-step complete quotients");

    CLI::App* classify_cmd = add_common(app.add_subcommand(
        "classify", "finite/periodic/aperiodic classification only"));
    classify_cmd->add_option("spec", spec)->required();
    classify_cmd->add_option("--branch", branch_str);
    classify_cmd->add_option("--max-steps", max_steps_str);
    classify_cmd->add_flag("--improved-bound", improved);

    CLI::App* pp_cmd = add_common(app.add_subcommand(
        "pure-periodic", "purely periodic surds of a given ordinate"));
    pp_cmd->add_option("Delta", delta_str, "the ordinate")->required();
    pp_cmd->add_option("--branch", branch_str);
    pp_cmd->add_option("--pell", pell_h,
                       "list period-1 expansions for h = 1..H instead");
    pp_cmd->add_flag("--show-filtered", show_filtered,
                     "print the candidate funnel counts");

    CLI::App* scan_cmd = app.add_subcommand(
        "scan", "classification for every prime up to a bound");
    scan_cmd->add_option("--l-max,-m", lmax_str, "largest prime to test")
        ->required();
    scan_cmd->add_option("spec", spec, "rational or quadratic polynomial")
        ->required();
    scan_cmd->add_flag("--json", json);

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "re-run the bound checkers against a stored report");
    verify_cmd->add_option("file", file, "JSON report or trace")->required();
    verify_cmd->add_flag("--json", json);

    try {
        std::reverse(args.begin(), args.end());  // CLI11 wants reversed args
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    Ctx ctx{out, err, json, trace};
    try {
        std::optional<Int> branch;
        if (!branch_str.empty()) branch = Int(branch_str);
        if (floor_cmd->parsed())
            return cmd_floor(ctx, Prime(Int(prime_str)), spec, branch);
        if (expand_cmd->parsed() || classify_cmd->parsed()) {
            Prime l{Int(prime_str)};
            ClassifyOptions opts;
            opts.improved_bound = improved;
            if (!max_steps_str.empty()) opts.max_steps = Int(max_steps_str);
            if (classify_cmd->parsed())
                return cmd_classify(ctx, l, spec, branch, opts);
            NumberSpec ns = parse_number(spec, l);
            return ns.is_surd ? cmd_expand_surd(ctx, l, ns, spec, branch, opts)
                              : cmd_expand_rational(ctx, l, ns, spec);
        }
        if (pp_cmd->parsed())
            return cmd_pure_periodic(
                ctx, Prime(Int(prime_str)), Int(delta_str), branch,
                pell_h >= 0 ? std::optional<long>(pell_h) : std::nullopt,
                show_filtered);
        if (scan_cmd->parsed()) return cmd_scan(ctx, Int(lmax_str), spec);
        if (verify_cmd->parsed()) return cmd_verify(ctx, file);
        err << "error: no command\n";
        return 1;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ruban
