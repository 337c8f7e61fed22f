#include "atlas/keating.hpp"

#include <cassert>
#include <stdexcept>

namespace atlas {

long dist_j(const DistParams& d, long j) {
    long lp = (!is_inf(d.im_plus_val) && d.im_plus_val < 2 * j) ? d.im_plus_val : kInfVal;
    return std::min(d.ell_minus, lp);
}

Rational keating_n(long ell, long j, long p) {
    if (is_inf(ell)) throw std::domain_error("non-rs locus");
    if (ell < 1) throw std::domain_error("length parameter must be positive");
    Rational q(p);
    if (ell <= 2 * j) {
        if (ell % 2 == 0) {
            Rational s = 0;
            for (long i = 0; i <= ell / 2; ++i) s += qpow(p, i);
            return 2 * s - qpow(p, ell / 2);
        }
        return 2 * (qpow(p, (ell + 1) / 2) - 1) / (q - 1);
    }
    Rational s = 0;
    for (long i = 0; i < j; ++i) s += qpow(p, i);
    return 2 * s + Rational(ell - 2 * j + 1) * qpow(p, j);
}

Rational l_int_keating(long m, long lminus, long lplus, long p) {
    Rational s = 0;
    DistParams d{lminus, lplus};
    for (long j = 0; j <= m; ++j) s += keating_n(dist_j(d, j), j, p);
    return 2 * s;
}

LIntCase l_int_case(long m, long lminus, long lplus) {
    if (lminus <= lplus) {
        if (lminus > 2 * m) return LIntCase::I1;
        return lminus % 2 ? LIntCase::I2 : LIntCase::I3;
    }
    return lplus > 2 * m ? LIntCase::II1 : LIntCase::II2;
}

std::string to_string(LIntCase c) {
    switch (c) {
        case LIntCase::I1: return "I(1)";
        case LIntCase::I2: return "I(2)";
        case LIntCase::I3: return "I(3)";
        case LIntCase::II1: return "II(1)";
        case LIntCase::II2: return "II(2)";
    }
    return "?";
}

Rational l_int_closed(long m, long lminus, long lplus, long p) {
    Rational t(1, p);
    Rational u = 1 - t, u2 = u * u;
    Rational tail = -2 * Rational(lminus + 2 * m + 1) * t / u - 8 * t / u2;
    Rational head;
    switch (l_int_case(m, lminus, lplus)) {
        case LIntCase::I1:
        case LIntCase::II1:
            head = 2 * qpow(p, m) * (2 * (1 + t) + Rational(lminus - 2 * m - 1) * u) / u2;
            break;
        case LIntCase::I2:
            head = 2 * qpow(p, (lminus - 1) / 2) * (Rational(2 * m - lminus + 3) - Rational(2 * m - lminus - 1) * t) / u2;
            break;
        case LIntCase::I3:
            head = 2 * qpow(p, lminus / 2) * (Rational(m - lminus / 2 + 1) * (1 - t * t) + t * (t + 3)) / u2;
            break;
        case LIntCase::II2:
            head = 2 * qpow(p, (lplus - 1) / 2) * (Rational(lminus - 2 * lplus + 2 * m + 3) * u + 4 * t) / u2;
            break;
    }
    return head + tail;
}

Rational l_int(const BPoint& x) {
    if (!x.is_rs()) throw std::domain_error("not rs");
    if (classify_side(x) == 0 || !x.is_integral()) return 0;
    MLParams ml = ml_params(x);
    long p = x.prime();
    Rational v = l_int_closed(ml.m, ml.lminus, ml.lplus, p);
    assert(v == l_int_keating(ml.m, ml.lminus, ml.lplus, p));
    return v;
}

Rational int_group(const MatD& g) {
    if (!matd_is_integral(g)) return 0;
    for (const Xi& xi : all_xi()) {
        auto x = cayley_inv(g, xi);
        if (!x || !matd_is_integral(*x)) continue;
        return l_int(invariants(reduce_u1(*x)));
    }
    throw std::logic_error("no admissible xi for an integral group element");
}

}  // namespace atlas
