#pragma once

#include <optional>
#include <vector>

#include "ruban/surd.hpp"

namespace ruban {

// Everything one step of an expansion leaves behind.  alpha is the
// complete quotient the quotient `a` was peeled from.
struct TraceStep {
    PartialQuotient a;
    long e = 0;  // e_n = -v(alpha_n)
    std::optional<Rat> alpha_rat;
    std::optional<QuadraticSurd> alpha_surd;
};

// Shared expansion record consumed by the bound checkers, the verify
// command and the --trace output.  Convergents follow the convention
// p_0 = 1, q_0 = 0, p_{n+1} = a_n p_n + p_{n-1}; s[n] = e_0 + ... + e_{n-1}.
struct Trace {
    Prime prime;
    std::optional<Rat> input_rat;
    std::optional<QuadraticSurd> input_surd;
    std::vector<TraceStep> steps;
    std::vector<Rat> p, q;  // sizes steps.size() + 2 once populated
    std::vector<long> s;    // s[0] = 0, size steps.size() + 1
    bool terminated = false;

    explicit Trace(Prime l) : prime(std::move(l)) {
        p = {Rat(1)};
        q = {Rat(0)};
        s = {0};
    }

    bool quadratic() const { return input_surd.has_value(); }

    void record(const TraceStep& step) {
        steps.push_back(step);
        size_t n = steps.size() - 1;  // index of a_n
        Rat a = step.a.value(prime);
        if (n == 0) {
            p.push_back(a);       // p_1 = a_0
            q.push_back(Rat(1));  // q_1 = 1
        } else {
            p.push_back(a * p[n] + p[n - 1]);
            q.push_back(a * q[n] + q[n - 1]);
        }
        s.push_back(s.back() + step.e);
    }
};

// Integer-cleared convergents maintained by their own recurrence
// (an independent route from the rational p, q above):
//   pt_{n+1} = r_n pt_n + l^{e_n + e_{n-1}} pt_{n-1},   pt_1 = r_0.
// Only meaningful when e_0 >= 0, i.e. v(alpha) <= 0.
struct ConvergentState {
    Int pt{1}, pt_prev{0};
    Int qt{0}, qt_prev{0};
    std::vector<long> e;
    size_t n = 0;

    void push(const PartialQuotient& a, const Prime& l) {
        Int pt_next, qt_next;
        if (n == 0) {
            pt_next = a.r;  // l^{e_0} a_0
            qt_next = l.pow(static_cast<unsigned long>(a.e));
        } else {
            Int carry = l.pow(static_cast<unsigned long>(a.e + e.back()));
            pt_next = a.r * pt + carry * pt_prev;
            qt_next = a.r * qt + carry * qt_prev;
        }
        pt_prev = pt;
        qt_prev = qt;
        pt = pt_next;
        qt = qt_next;
        e.push_back(a.e);
        ++n;
    }
};

}  // namespace ruban
