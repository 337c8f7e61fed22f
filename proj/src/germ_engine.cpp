#include "atlas/germ_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace atlas {

GermCoeff gamma_n_mu(const BPoint& x, const PadicScalar& mu, bool use_other_root) {
    long p = x.prime();
    PadicScalar pp(p, p), two(2L, p), four(4L, p);
    PadicScalar dp = x.delta() / pp;
    PadicScalar c = x.u * x.u * mu - two * x.wtilde;
    PadicScalar disc = c * c - four * dp;
    GermCoeff g;
    g.rep.tag = "n_mu";
    g.rep.family = true;
    g.rep.base = BPoint{PadicScalar(0L, p), PadicScalar(0L, p), PadicScalar(0L, p)};
    if (disc.is_zero() || !is_square(disc)) {
        g.value_at_0 = Rational(0);
        g.s_form = RatX(0);
        return g;
    }
    PadicScalar r = hensel_sqrt(disc);
    // take the root without cancellation; the other is dp / nu
    PadicScalar n1 = (c + r) / two, n2 = (c - r) / two;
    PadicScalar nu = n1.is_zero() || (!n2.is_zero() && n2.val() < n1.val()) ? n2 : n1;
    if (use_other_root) nu = dp / nu;
    long vn = nu.val(), vd = dp.val();
    Rational scale = eta(-nu) * qpow(p, disc.val() / 2);
    RatX f = RatX::monomial(scale, -vn) + RatX::monomial(eta(dp) * scale, -vd + vn);
    g.s_form = f;
    g.value_at_0 = value_s0(f);
    g.dvalue = dds_s0(f);
    return g;
}

bool in_neighborhood(const BPoint& x0, const BPoint& x, long depth) {
    if (x.prime() != x0.prime() || !x.is_rs()) return false;
    if (x0.is_zero()) return x.is_integral();
    const PadicScalar* a[3] = {&x0.lambda, &x0.u, &x0.wtilde};
    const PadicScalar* b[3] = {&x.lambda, &x.u, &x.wtilde};
    long top = 0;
    for (int i = 0; i < 3; ++i)
        if (!a[i]->is_zero()) top = std::max(top, a[i]->val());
    if (!x0.u.is_zero()) top = std::max(top, x0.lambda.is_zero() ? 0 : x0.lambda.val() + 2 * x0.u.val());
    for (int i = 0; i < 3; ++i) {
        if (a[i]->is_zero()) {
            if (!b[i]->is_zero() && b[i]->val() < top + depth) return false;
            continue;
        }
        if (b[i]->is_zero() || b[i]->val() != a[i]->val()) return false;
        if ((*b[i] / *a[i] - PadicScalar(1L, x.prime())).val() < 1) return false;
    }
    return x.delta().val() >= top + depth;
}

DGamma dgamma_table(const BPoint& x0, const OrbitRep& rep, const BPoint& x, const std::optional<PadicScalar>& mu) {
    using K = DGamma::Kind;
    long p = x.prime();
    const std::string& t = rep.tag;
    PadicScalar d = x.delta();
    auto v = [](const LogQVal& l) { return DGamma{K::value, l}; };
    const DGamma unneeded{K::unneeded, {}};
    switch (degenerate_case(x0)) {
        case DegenerateCase::zero:
            if (t == "n0_plus") return v({});
            if (t == "n0_minus") return v(log_abs(d.val() - 1));
            if (t == "n_mu") {
                if (!mu) throw std::invalid_argument("n_mu needs a family parameter");
                return v(gamma_n_mu(x, *mu).dvalue);
            }
            break;
        case DegenerateCase::case0i_split:
            return {K::excluded, {}};
        case DegenerateCase::case0i:
            if (t == "y_plus") return v({});
            if (t == "y_minus") return v(Rational(eta(-x0.lambda)) * log_abs(d.val() - x0.lambda.val()));
            return unneeded;
        case DegenerateCase::case0ii:
            if (t == "y_pp") return v({});
            if (t == "y_mm") return v(Rational(eta_minus_one(p)) * log_abs(d.val() - x0.lambda.val()));
            return unneeded;
        case DegenerateCase::case1:
            if (t == "y_plus") return v({});
            if (t == "y_minus") return v(log_abs(d.val() - 2 * x0.u.val() - 1));
            return unneeded;
    }
    throw std::invalid_argument("unknown representative " + t);
}

LogQVal phi_closed(const BPoint& x) {
    long p = x.prime();
    MLParams ml = ml_params(x);
    long m = ml.m, lm = ml.lminus, lp = ml.lplus;
    Rational t(1, p), o(1), den = (o - t) * (o - t);
    auto tp = [p](long e) { return qpow(p, -e); };
    Rational r;
    switch (l_int_case(m, lm, lp)) {
        case LIntCase::I1:
        case LIntCase::II1:
            r = tp(-m) * (2 * (o + t) + Rational(lm - 2 * m - 1) * (o - t));
            break;
        case LIntCase::I2:
            r = tp((1 - lm) / 2) * (Rational(2 * m - lm + 3) - Rational(2 * m - lm - 1) * t);
            break;
        case LIntCase::I3:
            r = tp(-lm / 2) * (Rational(m - lm / 2 + 1) * (o - t * t) + t * (3 + t));
            break;
        case LIntCase::II2:
            r = tp((1 - lp) / 2) * (4 * t + Rational(lm - 2 * lp + 2 * m + 3) * (o - t));
            break;
    }
    return LogQVal::logq(-r / den);
}

Dorb1 dorb1(const BPoint& x0, const BPoint& x) {
    if (!in_neighborhood(x0, x)) throw std::domain_error("x outside the neighborhood of x0");
    if (classify_side(x) != 1) throw std::domain_error("dorb1 needs a side-1 point");
    long p = x.prime();
    PadicScalar d = x.delta();
    Dorb1 r;
    switch (degenerate_case(x0)) {
        case DegenerateCase::zero:
            r.varying = phi_closed(x) - (zeta1(p) / p) * log_abs(d.val() - 1);
            return r;
        case DegenerateCase::case0i_split:
            throw std::domain_error("excluded case");
        case DegenerateCase::case0i: {
            OrbitRep ym;
            ym.tag = "y_minus";
            Rational o = forced_s_values(x0, ym).value;
            r.varying = Rational(eta(-x.lambda)) * o * log_abs(d.val());
            r.constant = "C1";
            return r;
        }
        case DegenerateCase::case0ii: {
            OrbitRep ymm;
            ymm.tag = "y_mm";
            Rational o = forced_s_values(x0, ymm).value;
            r.varying = Rational(eta_minus_one(p)) * o * log_abs(d.val());
            r.constant = "C2";
            return r;
        }
        case DegenerateCase::case1: {
            OrbitRep ym;
            ym.tag = "y_minus";
            Rational o = forced_s_values(x0, ym).value;
            r.varying = o * log_abs(d.val() - 2 * x.u.val());
            r.constant = "C3";
            return r;
        }
    }
    return r;
}

Dorb1 dorb1_assembled(const BPoint& x0, const BPoint& x) {
    if (!in_neighborhood(x0, x)) throw std::domain_error("x outside the neighborhood of x0");
    Dorb1 r;
    for (const OrbitRep& rep : orbit_reps(x0, Space::s_red)) {
        if (rep.family) {
            r.varying = r.varying + phi_closed(x);
            continue;
        }
        DGamma g = dgamma_table(x0, rep, x);
        if (g.kind == DGamma::Kind::excluded) throw std::domain_error("excluded case");
        if (g.kind == DGamma::Kind::unneeded || g.value.is_zero()) continue;
        ForcedValue f = forced_s_values(x0, rep);
        if (f.kind != ForcedValue::Kind::value) continue;
        r.varying = r.varying + f.value * g.value;
    }
    if (!x0.is_zero()) r.constant = "C(x0)";
    return r;
}

}  // namespace atlas
