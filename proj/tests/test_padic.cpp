#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "atlas/field.hpp"

#include <random>

using namespace atlas;

namespace {

// eta by enumerating norms a^2 - p b^2 modulo p^3
int eta_brute(const Rational& x, long p) {
    long v = vp(x, p);
    Rational u = unit_part(x, p);
    long mod = p * p * p;
    Integer target = mod_residue(u * qpow(p, ((v % 2) + 2) % 2), mod);
    // x = p^(2k) * (p^(v mod 2) * u); p^2 is a norm, so only the class matters
    for (long a = 0; a < mod; ++a)
        for (long b = 0; b < mod; ++b) {
            long n = ((a * a - p * b * b) % mod + mod) % mod;
            if (Integer(n) == target) return 1;
        }
    return -1;
}

}  // namespace

TEST_CASE("valuation") {
    CHECK(val(PadicScalar(5L, 5)) == 1);
    CHECK(val(PadicScalar(Rational(1, 25), 5)) == -2);
    CHECK(is_inf(val(PadicScalar(0L, 5))));
    CHECK_THROWS_AS(PadicScalar::capped_zero(4, 5).val(), PrecisionError);
}

TEST_CASE("quadratic character") {
    CHECK(eta(PadicScalar(4L, 5)) == 1);
    CHECK(eta(PadicScalar(5L, 5)) == 1);
    CHECK(eta(PadicScalar(3L, 3)) == -1);
    for (long p : {3L, 5L, 7L}) {
        Rational e = default_eps(p);
        for (const Rational& x : std::vector<Rational>{Rational(1), e, Rational(p), Rational(e * p), Rational(-1), Rational(-p)})
            CHECK_MESSAGE(eta(x, p) == eta_brute(x, p), "p=" << p << " x=" << x);
    }
}

TEST_CASE("multiplicativity") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(1, 2000);
    for (long p : {3L, 5L, 7L})
        for (int i = 0; i < 200; ++i) {
            Rational a(d(rng), d(rng)), b(-d(rng), d(rng));
            PadicScalar x(a, p), y(b, p);
            CHECK(val(x * y) == val(x) + val(y));
            CHECK(eta(x * y) == eta(x) * eta(y));
            CHECK(eta(x * x) == 1);
        }
}

TEST_CASE("quadratic field") {
    QuadElt pi = QuadElt::pi(5);
    CHECK(pi.norm().exact_value() == -5);
    QuadElt z = QuadElt::of(3, 2, 5);
    CHECK(z.conj().b.exact_value() == -2);
    CHECK(z.trace().exact_value() == 6);
    CHECK(z.norm().exact_value() == 9 - 4 * 5);
    CHECK(QuadElt::of(5, 1, 5).valF() == 1);
    CHECK(QuadElt::of(25, 5, 5).valF() == 3);
    CHECK((z * z.inv()).equals(QuadElt::of(1, 0, 5)));
}

TEST_CASE("quaternions") {
    long p = 5;
    Rational e = default_eps(p);
    QuatElt j = QuatElt::j(p, e);
    QuatElt pi = QuatElt::scalar(QuadElt::pi(p), e);
    CHECK(j.nrd().exact_value() == -e);
    CHECK((pi * j).equals(-(j * pi)));
    CHECK(pi.vD() == 1);
    CHECK(j.vD() == 0);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-6, 6);
    auto r = [&] { return Rational(d(rng)); };
    for (int i = 0; i < 100; ++i) {
        QuatElt a(QuadElt::of(r(), r(), p), QuadElt::of(r(), r(), p), e);
        QuatElt b(QuadElt::of(r(), r(), p), QuadElt::of(r(), r(), p), e);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK((a * b).nrd().equals(a.nrd() * b.nrd()));
        CHECK((a * b).vD() == a.vD() + b.vD());
        CHECK(a.conj().nrd().equals(a.nrd()));
        CHECK((a * a.conj()).equals(QuatElt::scalar(QuadElt{a.nrd(), PadicScalar(0L, p)}, e)));
        QuatElt c = pi * a * pi.inv();
        CHECK(c.plus().equals(a.plus()));
        CHECK(c.minus().equals(-a.minus()));
    }
}

TEST_CASE("hensel square roots") {
    PadicScalar r = hensel_sqrt(PadicScalar(4L, 5), 3);
    CHECK(r.unit_mod(3) == 2);
    PadicScalar s = hensel_sqrt(PadicScalar(-1L, 5), 3);
    CHECK(s.unit_mod(3) == 57);
    CHECK_THROWS(hensel_sqrt(PadicScalar(2L, 5), 3));
    std::mt19937 rng(11);
    for (long p : {3L, 5L, 7L}) {
        std::uniform_int_distribution<long> d(1, 1000000);
        int n = 0;
        while (n < 1000) {
            long a = d(rng);
            if (a % p == 0) continue;
            PadicScalar x(a * a, p);
            if (d(rng) % 2) x = PadicScalar(Rational(a * a + p * d(rng)), p);
            if (!is_square(x)) continue;
            PadicScalar y = hensel_sqrt(x, 20);
            PadicScalar d = y * y - x;
            CHECK(d.is_zero());
            CHECK(d.abs_precision() >= 20);
            ++n;
        }
    }
}

TEST_CASE("norm equation") {
    QuadElt a = solve_norm_F(PadicScalar(4L, 5));
    CHECK(a.a.equals(PadicScalar(2L, 5)));
    CHECK(a.b.is_zero());
    QuadElt b = solve_norm_F(PadicScalar(-5L, 5));
    CHECK(b.a.is_zero());
    CHECK(b.b.equals(PadicScalar(1L, 5)));
    CHECK_THROWS_WITH(solve_norm_F(PadicScalar(3L, 3)), "not a norm");
    for (long t : {1L, -1L, 6L, -7L, 11L, 45L}) {
        PadicScalar x(t, 5);
        if (eta(x) != 1) continue;
        CHECK(solve_norm_F(x).norm().equals(x));
    }
}

TEST_CASE("working precision") {
    long old = working_precision();
    set_working_precision(10);
    CHECK(PadicScalar(Rational(1, 3), 5).to_capped().precision() == 10);
    set_working_precision(old);
    CHECK_THROWS(set_working_precision(0));
}
