#include <doctest.h>

#include <random>

#include "ruban/bounds.hpp"
#include "ruban/quadratic.hpp"
#include "ruban/rational_cf.hpp"

using namespace ruban;

namespace {

const Prime kThree{3};

// n raw steps of a rational expansion as a Trace (walks past the point
// where expand_rational would stop)
Trace rational_trace(const Rat& x, const Prime& l, int n) {
    Trace t(l);
    t.input_rat = x;
    LRational cur(x, l);
    for (int i = 0; i < n; ++i) {
        auto [a, next] = step_rational(cur);
        TraceStep step;
        step.a = a;
        step.e = cur.is_zero() ? 0 : -cur.val();
        step.alpha_rat = cur.value();
        t.record(step);
        if (!next) {
            t.terminated = true;
            break;
        }
        cur = *next;
    }
    return t;
}

Trace surd_trace(QuadraticSurd x, int n) {
    Trace t(x.prime);
    t.input_surd = x;
    for (int i = 0; i < n; ++i) {
        auto [a, next] = surd_step(x);
        TraceStep step;
        step.a = a;
        step.e = -surd_val(x);
        step.alpha_surd = x;
        t.record(step);
        x = next;
    }
    return t;
}

QuadraticSurd sqrt13() {
    return make_surd(Int(13), Int(0), Int(1), 0, kThree, Int(1));
}

}  // namespace

TEST_CASE("lambda intervals") {
    // equality case: a = l - 1/l gives exactly lambda = l
    RationalInterval eq =
        lambda_interval(PartialQuotient{Int(8), 1}, kThree, 32);
    CHECK(eq.lo == 3);
    CHECK(eq.hi == 3);

    // golden-ratio case a = 1
    RationalInterval g = lambda_interval(PartialQuotient{Int(1), 0}, kThree, 48);
    CHECK(g.width() <= make_rat(Int(1), Int(1) << 48));
    auto eval = [](const Rat& x) -> Rat { return x * x - x - 1; };
    CHECK(eval(g.lo) <= 0);
    CHECK(eval(g.hi) >= 0);

    // a = 2/3 stays strictly below l^e = 3
    RationalInterval s = lambda_interval(PartialQuotient{Int(2), 1}, kThree, 32);
    CHECK(s.hi < 3);

    // lambda(a) >= 1 + a/2 and the cap lambda <= l^e hold on a sweep
    for (long r = 1; r < 27; ++r) {
        if (r % 3 == 0) continue;
        PartialQuotient a{Int(r), 2};
        RationalInterval iv = lambda_interval(a, kThree, 40);
        CHECK(iv.lo >= 1 + a.value(kThree) / 2);
        CHECK(iv.hi <= 9);
        // the true root is inside: sign change certified at the endpoints
        Rat av = a.value(kThree);
        CHECK(iv.lo * iv.lo - av * iv.lo - 1 <= 0);
        CHECK(iv.hi * iv.hi - av * iv.hi - 1 >= 0);
    }
}

TEST_CASE("c2 interval encloses the matrix growth eigenvalue") {
    for (long lp : {2, 3, 5}) {
        Prime l(lp);
        RationalInterval c2 = c2_interval(l, 40);
        Rat l2(l.value() * l.value());
        CHECK(c2.hi <= l2 + 2);
        CHECK(c2.lo >= l2);
        auto eval = [&](const Rat& x) -> Rat { return x * x - (l2 + 2) * x + 1; };
        CHECK(eval(c2.lo) <= 0);
        CHECK(eval(c2.hi) >= 0);
    }
}

TEST_CASE("qn bound on expansions") {
    CHECK(check_qn_bound(rational_trace(make_rat(Int(17), Int(11)), kThree, 5))
              .ok);
    CHECK(check_qn_bound(rational_trace(make_rat(Int(5), Int(6)), kThree, 10))
              .ok);
    CHECK(check_qn_bound(surd_trace(sqrt13(), 20)).ok);
    // corrupt a convergent: the first periodic tail already gives q_n = l^{n-1}
    Trace bad = rational_trace(make_rat(Int(5), Int(6)), kThree, 10);
    bad.q[6] *= 4;
    CHECK(!check_qn_bound(bad).ok);
}

TEST_CASE("height bounds on expansions") {
    CHECK(check_height_bounds(rational_trace(make_rat(Int(5), Int(6)), kThree, 12))
              .ok);
    CHECK(check_height_bounds(
              rational_trace(make_rat(Int(17), Int(11)), kThree, 5))
              .ok);
    CHECK(check_height_bounds(surd_trace(sqrt13(), 20)).ok);
    // theta = (1+sqrt(37))/6 cycles, heights stay bounded
    CHECK(check_height_bounds(
              surd_trace(make_surd(Int(37), Int(1), Int(6), 0, kThree, Int(1)),
                         25))
              .ok);
    // input of positive valuation: base shifts to the first quotient
    CHECK(check_height_bounds(
              surd_trace(fold_surd(Int(13), Int(2), Int(1), Int(12), kThree,
                                   Int(1)),
                         12))
              .ok);
    // corrupted complete quotient
    Trace bad = rational_trace(make_rat(Int(5), Int(6)), kThree, 12);
    bad.steps[5].alpha_rat = make_rat(Int(100000000), Int(7));
    CHECK(!check_height_bounds(bad).ok);
}

TEST_CASE("growth bounds on quadratic expansions") {
    CHECK(check_growth_bounds(surd_trace(sqrt13(), 30)).ok);
    CHECK(check_growth_bounds(
              surd_trace(make_surd(Int(37), Int(1), Int(6), 0, kThree, Int(1)),
                         30))
              .ok);
    std::mt19937_64 rng(5511);
    std::uniform_int_distribution<long> dg(2, 300);
    int checked = 0;
    while (checked < 25) {
        Int d(dg(rng));
        if (is_perfect_square(d) || mod_nonneg(d, Int(3)) == 0) continue;
        if (sqrt_exists(d, kThree) != SqrtStatus::exists) continue;
        ++checked;
        CHECK(check_growth_bounds(
                  surd_trace(make_surd(d, Int(1), Int(1), 1, kThree,
                                       default_branch(d, kThree)),
                             20))
                  .ok);
    }
    Trace bad = surd_trace(sqrt13(), 10);
    bad.steps[7].alpha_surd->b = Int("900000000000000");
    CHECK(!check_growth_bounds(bad).ok);
}

TEST_CASE("l-adic approximation order") {
    CHECK(check_ladic_approx(rational_trace(make_rat(Int(17), Int(11)), kThree, 5))
              .ok);
    CHECK(check_ladic_approx(rational_trace(make_rat(Int(5), Int(6)), kThree, 10))
              .ok);
    CHECK(check_ladic_approx(surd_trace(sqrt13(), 20)).ok);
    Prime seven(7);
    CHECK(check_ladic_approx(
              surd_trace(fold_surd(Int(2), Int(1), Int(5), Int(7), seven,
                                   Int(3)),
                         15))
              .ok);
    Trace bad = rational_trace(make_rat(Int(5), Int(6)), kThree, 10);
    bad.q[4] *= 7;  // convergent no longer approximates
    CHECK(!check_ladic_approx(bad).ok);
}

TEST_CASE("checkers pass on randomized expansions") {
    std::mt19937_64 rng(424243);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 500);
    for (long lp : {2, 3, 5}) {
        Prime l(lp);
        for (int i = 0; i < 60; ++i) {
            Rat x = make_rat(Int(num(rng)), Int(den(rng)));
            if (x == 0) continue;
            Trace t = rational_trace(x, l, 8);
            CHECK(check_qn_bound(t).ok);
            CHECK(check_height_bounds(t).ok);
            CHECK(check_ladic_approx(t).ok);
        }
    }
}
