#pragma once

#include "atlas/padic.hpp"

namespace atlas {

// a + b*pi in F = Q_p(pi), pi^2 = p.
struct QuadElt {
    PadicScalar a, b;

    QuadElt() = default;
    QuadElt(PadicScalar a_, PadicScalar b_) : a(std::move(a_)), b(std::move(b_)) {}
    static QuadElt of(const Rational& a, const Rational& b, long p) {
        return {PadicScalar(a, p), PadicScalar(b, p)};
    }
    static QuadElt pi(long p) { return of(0, 1, p); }

    long prime() const { return a.prime(); }
    QuadElt conj() const { return {a, -b}; }
    PadicScalar norm() const;
    PadicScalar trace() const { return a + a; }
    // v_F normalized by v_F(pi) = 1.
    long valF() const;
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    QuadElt inv() const;

    QuadElt operator-() const { return {-a, -b}; }
    friend QuadElt operator+(const QuadElt& x, const QuadElt& y) { return {x.a + y.a, x.b + y.b}; }
    friend QuadElt operator-(const QuadElt& x, const QuadElt& y) { return {x.a - y.a, x.b - y.b}; }
    friend QuadElt operator*(const QuadElt& x, const QuadElt& y);
    friend QuadElt operator*(const PadicScalar& s, const QuadElt& y) { return {s * y.a, s * y.b}; }
    bool equals(const QuadElt& o) const { return a.equals(o.a) && b.equals(o.b); }
};

// x + y*j in the quaternion division algebra D, j^2 = eps, j*z = conj(z)*j.
struct QuatElt {
    QuadElt x, y;
    Rational eps;

    QuatElt() = default;
    QuatElt(QuadElt x_, QuadElt y_, Rational e) : x(std::move(x_)), y(std::move(y_)), eps(std::move(e)) {}
    static QuatElt scalar(const QuadElt& z, const Rational& e);
    static QuatElt j(long p, const Rational& e);
    static QuatElt zero(long p, const Rational& e);
    static QuatElt one(long p, const Rational& e);

    long prime() const { return x.prime(); }
    QuatElt conj() const;
    PadicScalar nrd() const;
    PadicScalar trd() const { return x.a + x.a; }
    long vD() const;
    QuatElt inv() const;
    QuatElt plus() const;
    QuatElt minus() const;
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    bool is_integral() const;

    QuatElt operator-() const { return {-x, -y, eps}; }
    friend QuatElt operator+(const QuatElt& u, const QuatElt& v) { return {u.x + v.x, u.y + v.y, u.eps}; }
    friend QuatElt operator-(const QuatElt& u, const QuatElt& v) { return {u.x - v.x, u.y - v.y, u.eps}; }
    friend QuatElt operator*(const QuatElt& u, const QuatElt& v);
    bool equals(const QuatElt& o) const { return x.equals(o.x) && y.equals(o.y); }
};

// Default quaternion parameter: smallest positive non-residue.
Rational default_eps(long p);

// a + b*pi with norm congruent to target; throws "not a norm".
QuadElt solve_norm_F(const PadicScalar& target, long N = 0);

}  // namespace atlas
