#include "atlas/orbit.hpp"

#include <sstream>
#include <stdexcept>

namespace atlas {

namespace {

PadicScalar S(const Rational& x, long p) { return PadicScalar(x, p); }

bool nonzero_val(const PadicScalar& x, long min_v) { return x.is_zero() || x.val() >= min_v; }

}  // namespace

PadicScalar BPoint::delta() const {
    PadicScalar pp(prime(), prime());
    return lambda * u * u + wtilde * wtilde * pp;
}

bool BPoint::is_integral() const {
    return nonzero_val(lambda, 0) && nonzero_val(u, 0) && nonzero_val(wtilde, 0);
}

std::string BPoint::str() const {
    return "(" + lambda.str() + ", " + u.str() + ", " + wtilde.str() + ")";
}

PadicScalar delta(const BPoint& x) { return x.delta(); }

int classify_side(const BPoint& x) {
    PadicScalar d = x.delta();
    if (d.is_zero()) throw std::domain_error("not regular semisimple");
    return eta(-d) == 1 ? 0 : 1;
}

MLParams ml_params(const BPoint& x) {
    if (!x.is_integral()) throw std::domain_error("non-integral input");
    if (x.u.is_zero()) throw std::domain_error("m undefined (r=0 locus)");
    PadicScalar d = x.delta();
    if (d.is_zero()) throw std::domain_error("not regular semisimple");
    MLParams r;
    r.m = x.u.val();
    r.lminus = d.val() - 2 * r.m;
    r.lplus = x.wtilde.is_zero() ? kInfVal : 2 * x.wtilde.val() + 1 - 2 * r.m;
    if (r.lminus < 0 || r.lplus < 0) throw std::domain_error("non-integral input");
    return r;
}

BPoint make_bpoint_rs1(long m, long lminus, long lplus, long p) {
    bool lp_inf = is_inf(lplus);
    if (m < 0 || lminus < 1 || (!lp_inf && (lplus < 1 || lplus % 2 == 0)))
        throw std::domain_error("unrealizable invariants");
    PadicScalar pp(p, p);
    PadicScalar u(qpow(p, m), p);
    PadicScalar w = lp_inf ? PadicScalar(0L, p) : PadicScalar(qpow(p, (2 * m + lplus - 1) / 2), p);
    MLParams want{m, lminus, lp_inf ? kInfVal : lplus};
    for (long k = 0; k < 4; ++k)
        for (long d0 = 1; d0 < p; ++d0) {
            PadicScalar D(Rational(d0 + k * p) * qpow(p, 2 * m + lminus), p);
            if (eta(-D) != -1) continue;
            PadicScalar lam = (D - w * w * pp) / (u * u);
            BPoint x{lam, u, w};
            if (!x.is_integral() || x.delta().is_zero()) continue;
            if (classify_side(x) == 1 && ml_params(x) == want) return x;
        }
    throw std::domain_error("unrealizable invariants");
}

bool SRedElt::is_reduced() const {
    return (z[0][0] + z[1][1]).is_zero() && z[2][2].is_zero();
}

SRedElt SRedElt::transpose() const {
    SRedElt t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.z[i][j] = z[j][i];
    return t;
}

SRedElt sred_from(const std::array<std::array<Rational, 3>, 3>& z, long p) {
    SRedElt y;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y.z[i][j] = S(z[i][j], p);
    return y;
}

BPoint invariants(const SRedElt& y) {
    const Mat3& z = y.z;
    long p = y.prime();
    PadicScalar pp(p, p);
    PadicScalar detA = z[0][0] * z[1][1] - z[0][1] * z[1][0];
    PadicScalar Ab0 = z[0][0] * z[0][2] + z[0][1] * z[1][2];
    PadicScalar Ab1 = z[1][0] * z[0][2] + z[1][1] * z[1][2];
    return {pp * detA, z[2][0] * z[0][2] + z[2][1] * z[1][2], z[2][0] * Ab0 + z[2][1] * Ab1};
}

bool is_rs(const SRedElt& y) { return invariants(y).is_rs(); }

int omega(const SRedElt& y) {
    const Mat3& z = y.z;
    // det[e, z e, z^2 e] with e the last basis vector
    PadicScalar b0 = z[0][2], b1 = z[1][2];
    PadicScalar Ab0 = z[0][0] * b0 + z[0][1] * b1;
    PadicScalar Ab1 = z[1][0] * b0 + z[1][1] * b1;
    PadicScalar det = b0 * Ab1 - b1 * Ab0;
    if (det.is_zero()) throw std::domain_error("not regular semisimple");
    return eta(det);
}

SRedElt conjugate(const SRedElt& y, const std::array<std::array<Rational, 2>, 2>& h) {
    long p = y.prime();
    Rational det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    if (det == 0) throw std::domain_error("singular conjugator");
    Mat3 H, Hi;
    for (auto& r : H) r.fill(S(0, p));
    for (auto& r : Hi) r.fill(S(0, p));
    H[0][0] = S(h[0][0], p), H[0][1] = S(h[0][1], p), H[1][0] = S(h[1][0], p), H[1][1] = S(h[1][1], p);
    H[2][2] = S(1, p);
    Hi[0][0] = S(h[1][1] / det, p), Hi[0][1] = S(-h[0][1] / det, p);
    Hi[1][0] = S(-h[1][0] / det, p), Hi[1][1] = S(h[0][0] / det, p);
    Hi[2][2] = S(1, p);
    auto mul = [p](const Mat3& a, const Mat3& b) {
        Mat3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                PadicScalar s(0L, p);
                for (int k = 0; k < 3; ++k) s = s + a[i][k] * b[k][j];
                c[i][j] = s;
            }
        return c;
    };
    return {mul(mul(H, y.z), Hi)};
}

SRedElt reduce(const SRedElt& y) {
    long p = y.prime();
    SRedElt r = y;
    PadicScalar half(Rational(1, 2), p);
    PadicScalar t = half * (y.z[0][0] + y.z[1][1]);
    r.z[0][0] = y.z[0][0] - t;
    r.z[1][1] = y.z[1][1] - t;
    r.z[2][2] = S(0, p);
    return r;
}

SRedElt section_sigma(const BPoint& x) {
    long p = x.prime();
    PadicScalar pp(p, p), one(1L, p), zero(0L, p);
    SRedElt y;
    y.z = {{{zero, -(x.lambda / pp), one}, {one, zero, zero}, {x.u, x.wtilde, zero}}};
    return y;
}

SRedElt section_sigma1(const BPoint& x, const PadicScalar& alpha) {
    long p = x.prime();
    PadicScalar pp(p, p), one(1L, p), zero(0L, p), half(Rational(1, 2), p);
    if (alpha.is_zero() || !(alpha * alpha + x.lambda / pp).is_zero()) throw std::domain_error("wrong case");
    PadicScalar r = x.wtilde / alpha;
    SRedElt y;
    y.z = {{{alpha, zero, one}, {zero, -alpha, one}, {half * (x.u + r), half * (x.u - r), zero}}};
    return y;
}

int omega_sigma1(const PadicScalar& alpha) {
    PadicScalar two(2L, alpha.prime());
    return eta(-(two * alpha));
}

Mat3F U0RedElt::matrix() const {
    long p = prime();
    QuadElt pi = QuadElt::pi(p), zero = QuadElt::of(0, 0, p);
    QuadElt A1{a1, S(0, p)}, A2{a2, S(0, p)}, A3{a3, S(0, p)};
    return {{{A1, A2, b1}, {A3, -A1, b2}, {b2.conj() * pi, -(b1.conj() * pi), zero}}};
}

bool U0RedElt::is_integral() const {
    auto ok = [](const PadicScalar& s) { return s.is_zero() || s.val() >= 0; };
    auto okF = [](const QuadElt& z) { return z.is_zero() || z.valF() >= 0; };
    return ok(a1) && ok(a2) && ok(a3) && okF(b1) && okF(b2);
}

BPoint invariants(const Mat3F& y) {
    long p = y[0][0].prime();
    QuadElt pp = QuadElt::of(p, 0, p);
    QuadElt pinv = pp.inv();
    QuadElt detA = y[0][0] * y[1][1] - y[0][1] * y[1][0];
    QuadElt cb = y[2][0] * y[0][2] + y[2][1] * y[1][2];
    QuadElt Ab0 = y[0][0] * y[0][2] + y[0][1] * y[1][2];
    QuadElt Ab1 = y[1][0] * y[0][2] + y[1][1] * y[1][2];
    QuadElt cAb = y[2][0] * Ab0 + y[2][1] * Ab1;
    return {detA.a, (pinv * cb).a, (pinv * cAb).b};
}

BPoint invariants(const U0RedElt& y) { return invariants(y.matrix()); }
bool is_rs(const U0RedElt& y) { return invariants(y).is_rs(); }

BPoint invariants(const U1RedElt& x) {
    long p = x.prime();
    PadicScalar two(2L, p);
    PadicScalar lam = x.alpha.nrd();
    if (x.b.is_zero()) return {lam, S(0, p), S(0, p)};
    PadicScalar nb = x.b.nrd();
    QuatElt ap = x.b.inv() * x.alpha * x.b;
    return {lam, two * nb, two * nb * ap.x.b};
}

bool is_rs(const U1RedElt& x) {
    if (x.b.is_zero()) return false;
    QuatElt ap = x.b.inv() * x.alpha * x.b;
    return !ap.minus().is_zero();
}

namespace {

QuatElt qzero(long p, const Rational& e) { return QuatElt::zero(p, e); }
QuatElt qscal(const Rational& r, long p, const Rational& e) { return QuatElt::scalar(QuadElt::of(r, 0, p), e); }
QuatElt qpi(long p, const Rational& e) { return QuatElt::scalar(QuadElt::pi(p), e); }

}  // namespace

MatD u1_lie_matrix(const QuatElt& alpha, const PadicScalar& beta, const QuatElt& b, const QuadElt& d) {
    long p = alpha.prime();
    const Rational& e = alpha.eps;
    QuatElt pi = qpi(p, e), be = QuatElt::scalar(QuadElt{beta, S(0, p)}, e);
    QuatElt pp = qscal(p, p, e);
    QuatElt bb = b.conj();
    return {{{alpha, be * pp, b * pi}, {be, alpha, b}, {pi * bb, bb * pp, QuatElt::scalar(d, e)}}};
}

MatD u1_red_matrix(const U1RedElt& x) {
    long p = x.prime();
    return u1_lie_matrix(x.alpha, S(0, p), x.b, QuadElt::of(0, 0, p));
}

BPoint invariants_matrix(const U1RedElt& x) {
    MatD m = u1_red_matrix(x);
    long p = x.prime();
    const Rational& e = x.alpha.eps;
    QuatElt pinv = qscal(Rational(1, p), p, e);
    QuatElt cb = m[2][0] * m[0][2] + m[2][1] * m[1][2];
    QuatElt Ab0 = m[0][0] * m[0][2] + m[0][1] * m[1][2];
    QuatElt Ab1 = m[1][0] * m[0][2] + m[1][1] * m[1][2];
    QuatElt cAb = m[2][0] * Ab0 + m[2][1] * Ab1;
    QuatElt u = pinv * cb, w = pinv * cAb;
    // lambda = det_F(b -> alpha b + b beta pi) = N(alpha) for reduced x
    return {m[0][0].nrd(), u.x.a, w.x.b};
}

MatD matd_identity(long p, const Rational& eps) {
    MatD m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = i == j ? QuatElt::one(p, eps) : qzero(p, eps);
    return m;
}

MatD matd_mul(const MatD& a, const MatD& b) {
    long p = a[0][0].prime();
    const Rational& e = a[0][0].eps;
    MatD c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            QuatElt s = qzero(p, e);
            for (int k = 0; k < 3; ++k) s = s + a[i][k] * b[k][j];
            c[i][j] = s;
        }
    return c;
}

std::optional<MatD> matd_inverse(const MatD& a) {
    long p = a[0][0].prime();
    const Rational& e = a[0][0].eps;
    MatD m = a, r = matd_identity(p, e);
    for (int c = 0; c < 3; ++c) {
        int piv = -1;
        long best = kInfVal;
        for (int i = c; i < 3; ++i) {
            if (m[i][c].is_zero()) continue;
            long v = m[i][c].vD();
            if (v < best) best = v, piv = i;
        }
        if (piv < 0) return std::nullopt;
        std::swap(m[c], m[piv]);
        std::swap(r[c], r[piv]);
        QuatElt inv = m[c][c].inv();
        for (int j = 0; j < 3; ++j) m[c][j] = inv * m[c][j], r[c][j] = inv * r[c][j];
        for (int i = 0; i < 3; ++i) {
            if (i == c || m[i][c].is_zero()) continue;
            QuatElt f = m[i][c];
            for (int j = 0; j < 3; ++j) m[i][j] = m[i][j] - f * m[c][j], r[i][j] = r[i][j] - f * r[c][j];
        }
    }
    return r;
}

MatD dagger(const MatD& g) {
    long p = g[0][0].prime();
    const Rational& e = g[0][0].eps;
    // Rosati involution for the polarization diag(1, -p, 1)
    Rational lam[3] = {1, -p, 1};
    MatD r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = qscal(lam[j] / lam[i], p, e) * g[j][i].conj();
    return r;
}

bool matd_is_integral(const MatD& g) {
    for (const auto& row : g)
        for (const auto& x : row)
            if (!x.is_integral()) return false;
    return true;
}

bool matd_equal(const MatD& a, const MatD& b) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!a[i][j].equals(b[i][j])) return false;
    return true;
}

std::optional<U1Coords> u1_coords(const MatD& g) {
    long p = g[0][0].prime();
    const Rational& e = g[0][0].eps;
    QuatElt pi = qpi(p, e), pp = qscal(p, p, e);
    U1Coords c{g[0][0], g[1][0], g[1][2], g[2][0], g[2][2]};
    bool ok = g[1][1].equals(c.alpha) && g[0][1].equals(c.beta * pp) && g[0][2].equals(c.b * pi) &&
              g[2][1].equals(pi * c.c) && c.d.y.is_zero();
    if (!ok) return std::nullopt;
    return c;
}

std::vector<Xi> all_xi() { return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}; }

MatD xi_matrix(const Xi& xi, long p, const Rational& eps) {
    MatD m = matd_identity(p, eps);
    m[0][0] = qscal(xi.s1, p, eps);
    m[1][1] = qscal(xi.s1, p, eps);
    m[2][2] = qscal(xi.s2, p, eps);
    return m;
}

namespace {

MatD madd(const MatD& a, const MatD& b, int sign) {
    MatD c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c[i][j] = sign > 0 ? a[i][j] + b[i][j] : a[i][j] - b[i][j];
    return c;
}

}  // namespace

std::optional<MatD> cayley(const MatD& x, const Xi& xi) {
    long p = x[0][0].prime();
    const Rational& e = x[0][0].eps;
    MatD one = matd_identity(p, e);
    auto inv = matd_inverse(madd(one, x, -1));
    if (!inv) return std::nullopt;
    return matd_mul(xi_matrix(xi, p, e), matd_mul(madd(one, x, 1), *inv));
}

std::optional<MatD> cayley_inv(const MatD& g, const Xi& xi) {
    long p = g[0][0].prime();
    const Rational& e = g[0][0].eps;
    MatD one = matd_identity(p, e);
    MatD h = matd_mul(xi_matrix(xi, p, e), g);  // xi^{-1} = xi
    auto inv = matd_inverse(madd(one, h, 1));
    if (!inv) return std::nullopt;
    MatD r = matd_mul(madd(one, h, -1), *inv);
    for (auto& row : r)
        for (auto& v : row) v = -v;
    return r;
}

U1RedElt reduce_u1(const MatD& x) { return {x[0][0], x[1][2]}; }

std::string to_string(Space s) {
    switch (s) {
        case Space::s_red: return "s_red";
        case Space::u0_red: return "u0_red";
        case Space::u1_red: return "u1_red";
    }
    return "?";
}

SRedElt n_mu(const PadicScalar& mu) {
    long p = mu.prime();
    PadicScalar o(1L, p), z(0L, p);
    return {{{{z, mu, o}, {z, z, z}, {z, o, z}}}};
}

SRedElt n0_plus(long p) {
    PadicScalar o(1L, p), z(0L, p);
    return {{{{z, o, z}, {z, z, o}, {z, z, z}}}};
}

SRedElt n0_minus(long p) { return n0_plus(p).transpose(); }

Mat3F n_beta_u0(const PadicScalar& beta) {
    long p = beta.prime();
    PadicScalar pp(p, p), z(0L, p);
    U0RedElt y{z, beta * pp, z, QuadElt::pi(p), QuadElt::of(0, 0, p)};
    return y.matrix();
}

DegenerateCase degenerate_case(const BPoint& x0) {
    if (x0.is_zero()) return DegenerateCase::zero;
    if (!x0.delta().is_zero()) throw std::domain_error("not a degenerate base point");
    if (!x0.u.is_zero()) return DegenerateCase::case1;
    long p = x0.prime();
    PadicScalar pp(p, p);
    if (is_square(-(x0.lambda / pp))) return DegenerateCase::case0ii;
    if (is_square(-x0.lambda)) return DegenerateCase::case0i_split;
    return DegenerateCase::case0i;
}

std::string to_string(DegenerateCase c) {
    switch (c) {
        case DegenerateCase::zero: return "zero";
        case DegenerateCase::case0i: return "0i";
        case DegenerateCase::case0ii: return "0ii";
        case DegenerateCase::case0i_split: return "0i-split";
        case DegenerateCase::case1: return "1";
    }
    return "?";
}

Mat3F u0_case0_rep(const PadicScalar& lambda0, const PadicScalar& e) {
    long p = lambda0.prime();
    PadicScalar z(0L, p);
    U0RedElt y{z, -(lambda0 / e), e, QuadElt::of(0, 0, p), QuadElt::of(0, 0, p)};
    return y.matrix();
}

std::optional<Mat3F> u0_case1_rep(const BPoint& x0) {
    long p = x0.prime();
    PadicScalar z(0L, p), two(2L, p);
    if (x0.u.is_zero()) return std::nullopt;
    if (x0.wtilde.is_zero()) {
        QuadElt b1{z, x0.u / two};
        U0RedElt y{z, z, z, b1, QuadElt::of(1, 0, p)};
        return y.matrix();
    }
    PadicScalar alpha = x0.wtilde / x0.u;
    PadicScalar target = x0.u / (two * alpha);
    if (eta(target) != 1) return std::nullopt;
    QuadElt b = solve_norm_F(target);
    QuadElt b1 = QuadElt::pi(p) * (alpha * b);
    U0RedElt y{z, -x0.lambda, PadicScalar(1L, p), b1, b};
    return y.matrix();
}

std::vector<OrbitRep> orbit_reps(const BPoint& x0, Space space) {
    DegenerateCase c = degenerate_case(x0);
    long p = x0.prime();
    PadicScalar z(0L, p), o(1L, p), pp(p, p);
    std::vector<OrbitRep> out;
    auto add_s = [&](const std::string& tag, const SRedElt& y, bool excluded = false) {
        OrbitRep r;
        r.space = Space::s_red;
        r.tag = tag;
        r.s_payload = y;
        r.base = x0;
        r.excluded = excluded;
        out.push_back(r);
    };
    auto add_u = [&](const std::string& tag, const std::optional<Mat3F>& y, bool family = false) {
        OrbitRep r;
        r.space = Space::u0_red;
        r.tag = tag;
        r.u_payload = y;
        r.family = family;
        r.base = x0;
        out.push_back(r);
    };
    if (space == Space::u1_red) return out;
    if (space == Space::u0_red) {
        switch (c) {
            case DegenerateCase::zero:
                add_u("zero", std::nullopt);
                add_u("n_beta", std::nullopt, true);
                break;
            case DegenerateCase::case0i:
            case DegenerateCase::case0i_split:
                add_u("y0", u0_case0_rep(x0.lambda, o));
                break;
            case DegenerateCase::case0ii:
                add_u("y0", u0_case0_rep(x0.lambda, o));
                add_u("y0_eps", u0_case0_rep(x0.lambda, PadicScalar(default_eps(p), p)));
                break;
            case DegenerateCase::case1:
                if (auto y = u0_case1_rep(x0)) add_u("y0", y);
                break;
        }
        return out;
    }
    PadicScalar l = x0.lambda / pp;
    switch (c) {
        case DegenerateCase::zero: {
            OrbitRep r;
            r.space = Space::s_red;
            r.tag = "n_mu";
            r.family = true;
            r.base = x0;
            out.push_back(r);
            add_s("n0_plus", n0_plus(p));
            add_s("n0_minus", n0_minus(p));
            break;
        }
        case DegenerateCase::case0i:
        case DegenerateCase::case0i_split: {
            bool ex = c == DegenerateCase::case0i_split;
            SRedElt y0{{{{z, -l, z}, {o, z, z}, {z, z, z}}}};
            SRedElt yp = y0, ym = y0;
            yp.z[0][2] = o;
            ym.z[2][0] = o;
            add_s("y0", y0, ex);
            add_s("y_plus", yp, ex);
            add_s("y_minus", ym, ex);
            break;
        }
        case DegenerateCase::case0ii: {
            PadicScalar a = hensel_sqrt(-l);
            SRedElt y0{{{{a, z, z}, {z, -a, z}, {z, z, z}}}};
            SRedElt ypp{{{{a, z, o}, {z, -a, o}, {z, z, z}}}};
            SRedElt ypm{{{{a, z, o}, {z, -a, z}, {z, o, z}}}};
            add_s("y0", y0);
            add_s("y_pp", ypp);
            add_s("y_pm", ypm);
            add_s("y_mp", ypm.transpose());
            add_s("y_mm", ypp.transpose());
            break;
        }
        case DegenerateCase::case1: {
            PadicScalar a = x0.wtilde / x0.u;
            SRedElt yp{{{{a, z, o}, {o, -a, z}, {x0.u, z, z}}}};
            SRedElt ym{{{{a, o, o}, {z, -a, z}, {x0.u, z, z}}}};
            add_s("y_plus", yp);
            add_s("y_minus", ym);
            break;
        }
    }
    return out;
}

}  // namespace atlas
