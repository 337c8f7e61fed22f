#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "atlas/integrator.hpp"

using namespace atlas;

namespace {

// weight(k, eta) per unit measure on the shell v(t) = k
Integrand shell_integrand(long p, std::function<Graded(long k, int eta)> w, long k) {
    Integrand ig;
    ig.nvars = 1;
    ig.p = p;
    ig.atoms = {MPoly::var(1, 0)};
    ig.eval = [w, k, p](AtomCtx& cx) -> std::optional<Graded> {
        if (!cx.v[0].exact) {
            cx.need(0);
            return std::nullopt;
        }
        return w(k, eta_of(cx.v[0], p));
    };
    return ig;
}

ShellFn shells(long p, std::function<Graded(long, int)> w) {
    return [p, w](long k) { return ShellProblem{shell_integrand(p, w, k), f0_shell_boxes(k, p)}; };
}

std::vector<Box> refine(const std::vector<Box>& boxes, long p) {
    std::vector<Box> out;
    for (const Box& b : boxes)
        for (long r = 0; r < p; ++r) {
            Box c = b;
            c.center[0] += Rational(r) * qpow(p, b.rad[0]);
            c.rad[0] += 1;
            out.push_back(c);
        }
    return out;
}

RatX geometric(const Rational& a, int e) { return RatX(a) / (RatX(1) - RatX::monomial(1, e)); }

}  // namespace

TEST_CASE("volume of the integers") {
    for (long p : {3L, 5L}) {
        auto r = shell_integrate(shells(p, [](long, int) { return Graded{{{0, 0}, 1}}; }), 0, 1, 30);
        CHECK(r.value.at(0) == RatX(1));
    }
}

TEST_CASE("power of the absolute value") {
    for (long p : {3L, 5L, 7L}) {
        // |b|^{-2s} / |b| on v(b) = k
        auto r = shell_integrate(shells(p, [p](long k, int) { return Graded{{{0, -2 * k}, qpow(p, k)}}; }), 0, 1, 30);
        CHECK(r.value.at(0) == geometric(1 - Rational(1, p), -2));
        CHECK(r.shells_used < 30);
    }
}

TEST_CASE("key identity") {
    long p = 3;
    Rational c = 1 / (1 - Rational(1, p));
    auto w = [p, c](long k, int) { return Graded{{{0, k}, c * qpow(p, k)}}; };
    auto up = shell_integrate(shells(p, w), 0, 1, 30);
    auto down = shell_integrate(shells(p, w), -1, -1, 30);
    CHECK(up.value.at(0) == geometric(1, 1));
    CHECK(down.value.at(0) == RatX::monomial(1, -1) * geometric(1, -1));
    auto both = shell_integrate_both(shells(p, w), 0, 30);
    CHECK((both.value.count(0) == 0 || both.value.at(0).is_zero()));
}

TEST_CASE("additivity and refinement") {
    for (long p : {3L, 5L}) {
        auto all = [p](long k, int) { return Graded{{{0, k}, qpow(p, k)}}; };
        auto plus = [p](long k, int e) { return e == 1 ? Graded{{{0, k}, qpow(p, k)}} : Graded{}; };
        auto minus = [p](long k, int e) { return e == -1 ? Graded{{{0, k}, qpow(p, k)}} : Graded{}; };
        RatX a = shell_integrate(shells(p, all), 0, 1, 30).value.at(0);
        RatX b = shell_integrate(shells(p, plus), 0, 1, 30).value.at(0);
        RatX c = shell_integrate(shells(p, minus), 0, 1, 30).value.at(0);
        CHECK(a == b + c);
        for (long k = -2; k <= 3; ++k) {
            Integrand ig = shell_integrand(p, plus, k);
            auto boxes = f0_shell_boxes(k, p);
            CHECK(integrate_boxes(ig, boxes) == integrate_boxes(ig, refine(boxes, p)));
            CHECK(integrate_boxes(ig, boxes) == integrate_boxes(ig, refine(refine(boxes, p), p)));
        }
    }
}

TEST_CASE("window exhaustion") {
    long p = 3;
    // a shell weight that never becomes geometric
    auto w = [](long k, int) { return Graded{{{0, 0}, Rational(1, k * k * k + 1)}}; };
    CHECK_THROWS_WITH(shell_integrate(shells(p, w), 0, 1, 6), "no stabilization");
}

TEST_CASE("iwasawa orbital integrals") {
    for (long p : {3L, 5L}) {
        Rational zeta = Rational(p, p - 1);
        CHECK(iwasawa_orbit_u0(n_beta_u0(PadicScalar(1L, p))).value == RatX(p * zeta));
        CHECK(iwasawa_orbit_u0(n_beta_u0(PadicScalar(Rational(p), p))).value == RatX(p * zeta));
        CHECK(iwasawa_orbit_u0(n_beta_u0(PadicScalar(Rational(1, p), p))).value == RatX(zeta));
        Rational e = default_eps(p);
        auto y = u0_case0_rep(PadicScalar(-e, p), PadicScalar(1L, p));
        CHECK(iwasawa_orbit_u0(y).value == RatX(1));
    }
    long expect3[] = {1, 2, 5, 8, 17};
    for (long v = 0; v < 5; ++v) {
        auto y = u0_case0_rep(PadicScalar(-Rational(default_eps(3)) * qpow(3, v), 3), PadicScalar(1L, 3));
        CHECK(iwasawa_orbit_u0(y).value == RatX(expect3[v]));
    }
}

TEST_CASE("xi integral") {
    BPoint x = make_bpoint_rs1(0, 1, kInfVal, 3);
    XiResult r = xi_integral(x);
    CHECK(r.phi == LogQVal::logq(-6));
    for (long p : {3L, 5L}) {
        BPoint a = make_bpoint_rs1(0, 3, kInfVal, p);
        CHECK(xi_shell(a, 1).is_zero());
        for (long lp : {1L, 3L}) {
            BPoint b = make_bpoint_rs1(1, 4, lp, p);
            BPoint c{b.lambda, b.u, -b.wtilde};
            CHECK(xi_integral(b).xi == xi_integral(c).xi);
        }
    }
    CHECK_THROWS(xi_integral(BPoint::of(1, 1, 0, 5)));
}
