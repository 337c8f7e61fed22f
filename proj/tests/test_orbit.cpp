#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "atlas/orbit.hpp"

#include <random>

using namespace atlas;

namespace {

bool same(const BPoint& a, const BPoint& b) {
    return a.lambda.equals(b.lambda) && a.u.equals(b.u) && a.wtilde.equals(b.wtilde);
}

struct Rng {
    std::mt19937 g;
    explicit Rng(unsigned s) : g(s) {}
    Rational r(int lo = -6, int hi = 6) { return Rational(std::uniform_int_distribution<int>(lo, hi)(g)); }
    Rational nz() {
        Rational x = 0;
        while (x == 0) x = r();
        return x;
    }
};

SRedElt random_sred(Rng& R, long p) {
    Rational a = R.r();
    return sred_from({{{a, R.r(), R.r()}, {R.r(), -a, R.r()}, {R.r(), R.r(), 0}}}, p);
}

QuatElt random_quat(Rng& R, long p, const Rational& e) {
    return QuatElt(QuadElt::of(R.r(), R.r(), p), QuadElt::of(R.r(), R.r(), p), e);
}

QuatElt random_pure(Rng& R, long p, const Rational& e) {
    return QuatElt(QuadElt::of(0, R.r(), p), QuadElt::of(R.r(), R.r(), p), e);
}

MatD random_k1(Rng& R, long p, const Rational& e) {
    return u1_lie_matrix(random_pure(R, p, e), PadicScalar(R.r(), p), random_quat(R, p, e),
                         QuadElt::of(0, R.r(), p));
}

}  // namespace

TEST_CASE("delta") {
    CHECK(delta(BPoint::of(0, 0, 0, 5)).is_zero());
    CHECK(delta(BPoint::of(1, 1, 0, 5)).exact_value() == 1);
    CHECK(delta(BPoint::of(-1, 1, 1, 5)).exact_value() == 4);
}

TEST_CASE("classify side") {
    CHECK(classify_side(BPoint::of(-5, 2, 1, 5)) == 1);
    CHECK(classify_side(BPoint::of(1, 1, 0, 5)) == 0);
    CHECK(classify_side(BPoint::of(-1, 1, 0, 3)) == 0);
    CHECK_THROWS_WITH(classify_side(BPoint::of(0, 0, 0, 5)), "not regular semisimple");
}

TEST_CASE("ml params") {
    // v(u)=0, v(Delta)=1, w=0
    BPoint a = BPoint::of(6, 1, 0, 3);
    CHECK(classify_side(a) == 1);
    CHECK(ml_params(a) == MLParams{0, 1, kInfVal});
    CHECK(ml_params(make_bpoint_rs1(1, 1, 3, 3)) == MLParams{1, 1, 3});
    CHECK(ml_params(make_bpoint_rs1(1, 3, 1, 3)) == MLParams{1, 3, 1});
    CHECK_THROWS(ml_params(BPoint::of(6, 0, 0, 3)));
}

TEST_CASE("make_bpoint_rs1") {
    BPoint a = make_bpoint_rs1(0, 1, kInfVal, 3);
    CHECK(a.u.exact_value() == 1);
    CHECK(a.wtilde.is_zero());
    CHECK(vp(a.lambda.exact_value(), 3) == 1);
    CHECK(eta(-delta(a)) == -1);
    BPoint b = make_bpoint_rs1(1, 1, 3, 3);
    CHECK(b.u.exact_value() == 3);
    CHECK(b.wtilde.exact_value() == 9);
    for (long p : {3L, 5L, 7L})
        for (long m = 0; m <= 4; ++m)
            for (long lm = 1; lm <= 9; ++lm)
                for (long lp : {1L, 3L, 5L, 7L, 9L, kInfVal}) {
                    BPoint x = make_bpoint_rs1(m, lm, lp, p);
                    CHECK(x.is_integral());
                    CHECK(classify_side(x) == 1);
                    CHECK(ml_params(x) == MLParams{m, lm, lp});
                }
    CHECK_THROWS_WITH(make_bpoint_rs1(0, 0, 1, 3), "unrealizable invariants");
    CHECK_THROWS_WITH(make_bpoint_rs1(0, 1, 2, 3), "unrealizable invariants");
}

TEST_CASE("U1 invariants") {
    long p = 5;
    Rational e = default_eps(p);
    QuatElt pi = QuatElt::scalar(QuadElt::pi(p), e), one = QuatElt::one(p, e), j = QuatElt::j(p, e);
    U1RedElt x{pi, one};
    BPoint bx = invariants(x);
    CHECK(same(bx, invariants_matrix(x)));
    CHECK(bx.lambda.exact_value() == -5);
    CHECK(bx.u.exact_value() == 2);
    CHECK(bx.wtilde.exact_value() == 2);
    CHECK_FALSE(is_rs(x));
    CHECK(is_rs(U1RedElt{j, one}));
    BPoint bj = invariants(U1RedElt{j, QuatElt::zero(p, e)});
    CHECK(bj.lambda.exact_value() == -e);
    CHECK(bj.u.is_zero());
    CHECK(bj.wtilde.is_zero());
    CHECK_FALSE(is_rs(U1RedElt{j, QuatElt::zero(p, e)}));
}

TEST_CASE("U1 properties") {
    for (long p : {3L, 5L}) {
        Rational e = default_eps(p);
        Rng R(p);
        int rs = 0;
        for (int i = 0; i < 150; ++i) {
            U1RedElt x{random_pure(R, p, e), random_quat(R, p, e)};
            BPoint b = invariants(x);
            CHECK(same(b, invariants_matrix(x)));
            if (x.b.is_zero()) continue;
            QuatElt ap = x.b.inv() * x.alpha * x.b;
            PadicScalar nb = x.b.nrd();
            PadicScalar expect = PadicScalar(4L, p) * nb * nb * ap.minus().nrd();
            CHECK(delta(b).equals(expect));
            CHECK(is_rs(x) == b.is_rs());
            if (is_rs(x)) {
                CHECK(classify_side(b) == 1);
                ++rs;
            }
        }
        CHECK(rs > 50);
    }
}

TEST_CASE("U0 side") {
    for (long p : {3L, 5L}) {
        Rng R(p + 10);
        int rs = 0;
        for (int i = 0; i < 150; ++i) {
            U0RedElt y{PadicScalar(R.r(), p), PadicScalar(R.r(), p), PadicScalar(R.r(), p),
                       QuadElt::of(R.r(), R.r(), p), QuadElt::of(R.r(), R.r(), p)};
            BPoint b = invariants(y);
            CHECK(same(b, invariants(y.matrix())));
            if (!b.is_rs()) continue;
            CHECK(classify_side(b) == 0);
            ++rs;
        }
        CHECK(rs > 50);
    }
}

TEST_CASE("sections") {
    SRedElt s = section_sigma(BPoint::of(1, 1, 0, 5));
    Rational expect[3][3] = {{0, Rational(-1, 5), 1}, {1, 0, 0}, {1, 0, 0}};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) CHECK(s.z[i][k].exact_value() == expect[i][k]);
    for (long p : {3L, 5L, 7L}) {
        Rng R(p);
        for (int i = 0; i < 100; ++i) {
            BPoint x = BPoint::of(R.r(), R.r(), R.r(), p);
            SRedElt y = section_sigma(x);
            CHECK(y.is_reduced());
            CHECK(same(invariants(y), x));
            if (x.is_rs()) CHECK(omega(y) == 1);
        }
    }
    PadicScalar alpha(2L, 5);
    BPoint x = BPoint::of(-20, 2, 2, 5);
    SRedElt s1 = section_sigma1(x, alpha);
    CHECK(same(invariants(s1), x));
    CHECK(s1.z[2][0].exact_value() == Rational(3, 2));
    CHECK(s1.z[2][1].exact_value() == Rational(1, 2));
    CHECK(omega(s1) == omega_sigma1(alpha));
    CHECK_THROWS_WITH(section_sigma1(BPoint::of(-5 * 2, 1, 1, 5), alpha), "wrong case");
}

TEST_CASE("section sigma1 transfer factor") {
    for (long p : {3L, 5L, 7L}) {
        Rng R(p + 1);
        for (int i = 0; i < 60; ++i) {
            Rational a = R.nz();
            PadicScalar alpha(a, p);
            BPoint x = BPoint::of(-a * a * p, R.nz(), R.r(), p);
            if (!x.is_rs()) continue;
            SRedElt s = section_sigma1(x, alpha);
            CHECK(same(invariants(s), x));
            CHECK(omega(s) == eta(Rational(-2 * a), p));
        }
    }
}

TEST_CASE("conjugation") {
    for (long p : {3L, 5L}) {
        Rng R(p + 2);
        for (int i = 0; i < 100; ++i) {
            SRedElt y = random_sred(R, p);
            std::array<std::array<Rational, 2>, 2> h{{{R.r(), R.r()}, {R.r(), R.r()}}};
            Rational det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
            if (det == 0) continue;
            SRedElt c = conjugate(y, h);
            CHECK(same(invariants(c), invariants(y)));
            if (is_rs(y)) CHECK(omega(c) == eta(det, p) * omega(y));
        }
    }
}

TEST_CASE("reduce") {
    Rng R(4);
    long p = 5;
    for (int i = 0; i < 50; ++i) {
        SRedElt y = random_sred(R, p);
        SRedElt r = reduce(y);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(r.z[a][b].equals(y.z[a][b]));
    }
    Rational e = default_eps(p);
    for (int i = 0; i < 100; ++i) {
        QuatElt alpha = random_pure(R, p, e), b = random_quat(R, p, e);
        PadicScalar beta(R.r(), p);
        QuadElt d = QuadElt::of(0, R.r(), p);
        MatD x = u1_lie_matrix(alpha, beta, b, d);
        U1RedElt red = reduce_u1(x);
        auto co = u1_coords(x);
        REQUIRE(co);
        CHECK(matd_equal(u1_lie_matrix(co->alpha, co->beta.x.a, co->b, co->d.x), x));
        CHECK(same(invariants(red), invariants(U1RedElt{red.alpha, red.b})));
        U1RedElt direct{alpha, b};
        CHECK(is_rs(red) == is_rs(direct));
    }
}

TEST_CASE("cayley") {
    for (long p : {3L, 5L}) {
        Rational e = default_eps(p);
        MatD zero = u1_lie_matrix(QuatElt::zero(p, e), PadicScalar(0L, p), QuatElt::zero(p, e), QuadElt::of(0, 0, p));
        for (const Xi& xi : all_xi()) CHECK(matd_equal(*cayley(zero, xi), xi_matrix(xi, p, e)));
        Rng R(p + 3);
        for (int i = 0; i < 60; ++i) {
            MatD x = random_k1(R, p, e);
            for (const Xi& xi : all_xi()) {
                auto g = cayley(x, xi);
                REQUIRE(g);
                CHECK(matd_is_integral(*g));
                auto back = cayley_inv(*g, xi);
                REQUIRE(back);
                CHECK(matd_equal(*back, x));
            }
        }
        for (int i = 0; i < 60; ++i) {
            MatD g = *cayley(random_k1(R, p, e), all_xi()[i % 4]);
            if (i % 2) g = matd_mul(g, *cayley(random_k1(R, p, e), all_xi()[(i / 2) % 4]));
            bool covered = false;
            for (const Xi& xi : all_xi()) {
                auto y = cayley_inv(g, xi);
                if (y && matd_is_integral(*y)) covered = true;
            }
            CHECK(covered);
        }
    }
}

TEST_CASE("orbit reps") {
    for (long p : {3L, 5L}) {
        BPoint zero = BPoint::of(0, 0, 0, p);
        auto reps = orbit_reps(zero, Space::s_red);
        REQUIRE(reps.size() == 3);
        CHECK(reps[0].family);
        for (const auto& r : reps)
            if (r.s_payload) CHECK(same(invariants(*r.s_payload), zero));
        CHECK(same(invariants(n_mu(PadicScalar(Rational(1, p), p))), zero));

        BPoint x0ii = BPoint::of(-p * 4, 0, 0, p);
        CHECK(degenerate_case(x0ii) == DegenerateCase::case0ii);
        auto r2 = orbit_reps(x0ii, Space::s_red);
        int nonss = 0;
        for (const auto& r : r2) {
            if (r.tag != "y0") ++nonss;
            if (r.s_payload) CHECK(same(invariants(*r.s_payload), x0ii));
        }
        CHECK(nonss == 4);

        Rational e = default_eps(p);
        BPoint x0i = BPoint::of(-e, 0, 0, p);
        CHECK(degenerate_case(x0i) == DegenerateCase::case0i);
        CHECK(orbit_reps(x0i, Space::s_red).size() == 3);
        CHECK(degenerate_case(BPoint::of(-1, 0, 0, p)) == DegenerateCase::case0i_split);

        BPoint x1 = BPoint::of(-p, 1, 1, p);
        REQUIRE_FALSE(x1.is_rs());
        auto r1 = orbit_reps(x1, Space::s_red);
        REQUIRE(r1.size() == 2);
        for (const auto& r : r1) CHECK(same(invariants(*r.s_payload), x1));
        CHECK_THROWS_WITH(orbit_reps(BPoint::of(1, 1, 0, p), Space::s_red), "not a degenerate base point");
    }
}
