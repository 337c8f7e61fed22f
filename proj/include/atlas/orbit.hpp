#pragma once

#include "atlas/field.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace atlas {

using Mat3 = std::array<std::array<PadicScalar, 3>, 3>;
using Mat3F = std::array<std::array<QuadElt, 3>, 3>;
using MatD = std::array<std::array<QuatElt, 3>, 3>;

// Point (lambda, u, wtilde) of the reduced quotient; w = wtilde * pi.
struct BPoint {
    PadicScalar lambda, u, wtilde;

    static BPoint of(const Rational& l, const Rational& u, const Rational& w, long p) {
        return {PadicScalar(l, p), PadicScalar(u, p), PadicScalar(w, p)};
    }
    long prime() const { return lambda.prime(); }
    PadicScalar delta() const;
    bool is_rs() const { return !delta().is_zero(); }
    bool is_integral() const;
    bool is_zero() const { return lambda.is_zero() && u.is_zero() && wtilde.is_zero(); }
    std::string str() const;
};

PadicScalar delta(const BPoint& x);
// 0 or 1 with eta(-Delta) = (-1)^i.
int classify_side(const BPoint& x);

struct MLParams {
    long m = 0, lminus = 0, lplus = 0;  // lplus may be kInfVal
    bool operator==(const MLParams& o) const { return m == o.m && lminus == o.lminus && lplus == o.lplus; }
};
MLParams ml_params(const BPoint& x);

// Integral side-1 point with prescribed (m, l-, l+).
BPoint make_bpoint_rs1(long m, long lminus, long lplus, long p);

// y = pi * z on s_red, z over Q_p.
struct SRedElt {
    Mat3 z;
    long prime() const { return z[0][0].prime(); }
    bool is_reduced() const;
    SRedElt transpose() const;
};

SRedElt sred_from(const std::array<std::array<Rational, 3>, 3>& z, long p);
BPoint invariants(const SRedElt& y);
bool is_rs(const SRedElt& y);
int omega(const SRedElt& y);
// diag(h,1) y diag(h,1)^{-1} for h in GL_2(Q_p).
SRedElt conjugate(const SRedElt& y, const std::array<std::array<Rational, 2>, 2>& h);
SRedElt reduce(const SRedElt& y);

SRedElt section_sigma(const BPoint& x);
SRedElt section_sigma1(const BPoint& x, const PadicScalar& alpha);
// Transfer factor of section_sigma1: eta(-2 alpha).
int omega_sigma1(const PadicScalar& alpha);

// Reduced element of u_0 in the coordinates (a1,a2,a3,b1,b2).
struct U0RedElt {
    PadicScalar a1, a2, a3;
    QuadElt b1, b2;
    long prime() const { return a1.prime(); }
    Mat3F matrix() const;
    bool is_integral() const;
};
BPoint invariants(const Mat3F& y);
BPoint invariants(const U0RedElt& y);
bool is_rs(const U0RedElt& y);

// Reduced element of u_1: alpha traceless, b in D.
struct U1RedElt {
    QuatElt alpha, b;
    long prime() const { return alpha.prime(); }
    bool is_integral() const { return alpha.is_integral() && b.is_integral(); }
};
BPoint invariants(const U1RedElt& x);
bool is_rs(const U1RedElt& x);
// Invariants computed from the 3x3 matrix over D.
BPoint invariants_matrix(const U1RedElt& x);

// Full u_1 / U_1 elements in the (alpha, beta, b, c, d) coordinates.
struct U1Coords {
    QuatElt alpha, beta, b, c, d;
};
MatD u1_lie_matrix(const QuatElt& alpha, const PadicScalar& beta, const QuatElt& b, const QuadElt& d);
MatD u1_red_matrix(const U1RedElt& x);
std::optional<U1Coords> u1_coords(const MatD& g);
MatD dagger(const MatD& g);
bool matd_is_integral(const MatD& g);
bool matd_equal(const MatD& a, const MatD& b);
MatD matd_identity(long p, const Rational& eps);
MatD matd_mul(const MatD& a, const MatD& b);
std::optional<MatD> matd_inverse(const MatD& a);

// xi = diag(s1, s1, s2).
struct Xi {
    int s1 = 1, s2 = 1;
};
std::vector<Xi> all_xi();
MatD xi_matrix(const Xi& xi, long p, const Rational& eps);
std::optional<MatD> cayley(const MatD& x, const Xi& xi);
std::optional<MatD> cayley_inv(const MatD& g, const Xi& xi);
U1RedElt reduce_u1(const MatD& x);

enum class Space { s_red, u0_red, u1_red };
std::string to_string(Space s);

struct OrbitRep {
    Space space = Space::s_red;
    std::string tag;
    std::optional<SRedElt> s_payload;
    std::optional<Mat3F> u_payload;
    bool family = false;  // n_mu / n_beta: payload built per parameter
    bool excluded = false;
    BPoint base;
};

SRedElt n_mu(const PadicScalar& mu);
SRedElt n0_plus(long p);
SRedElt n0_minus(long p);
Mat3F n_beta_u0(const PadicScalar& beta);

enum class DegenerateCase { zero, case0i, case0ii, case0i_split, case1 };
DegenerateCase degenerate_case(const BPoint& x0);
std::string to_string(DegenerateCase c);
std::vector<OrbitRep> orbit_reps(const BPoint& x0, Space space);

// Semisimple u_0 representatives over x0.
Mat3F u0_case0_rep(const PadicScalar& lambda0, const PadicScalar& e);
std::optional<Mat3F> u0_case1_rep(const BPoint& x0);

}  // namespace atlas
