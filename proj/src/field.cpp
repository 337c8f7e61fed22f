#include "atlas/field.hpp"

#include <algorithm>

namespace atlas {

PadicScalar QuadElt::norm() const {
    PadicScalar pp(prime(), prime());
    return a * a - pp * b * b;
}

long QuadElt::valF() const {
    long va = a.is_zero() ? kInfVal : 2 * a.val();
    long vb = b.is_zero() ? kInfVal : 2 * b.val() + 1;
    if (is_inf(va) && is_inf(vb)) {
        if (a.is_exact() && b.is_exact()) return kInfVal;
        throw PrecisionError();
    }
    return std::min(va, vb);
}

QuadElt QuadElt::inv() const {
    PadicScalar n = norm();
    PadicScalar ni = n.inv();
    return {a * ni, -(b * ni)};
}

QuadElt operator*(const QuadElt& x, const QuadElt& y) {
    PadicScalar pp(x.prime(), x.prime());
    return {x.a * y.a + pp * x.b * y.b, x.a * y.b + x.b * y.a};
}

QuatElt QuatElt::scalar(const QuadElt& z, const Rational& e) {
    long p = z.prime();
    return {z, QuadElt::of(0, 0, p), e};
}

QuatElt QuatElt::j(long p, const Rational& e) { return {QuadElt::of(0, 0, p), QuadElt::of(1, 0, p), e}; }
QuatElt QuatElt::zero(long p, const Rational& e) { return {QuadElt::of(0, 0, p), QuadElt::of(0, 0, p), e}; }
QuatElt QuatElt::one(long p, const Rational& e) { return {QuadElt::of(1, 0, p), QuadElt::of(0, 0, p), e}; }

QuatElt QuatElt::conj() const { return {x.conj(), -y, eps}; }

PadicScalar QuatElt::nrd() const {
    PadicScalar e(eps, prime());
    return x.norm() - e * y.norm();
}

long QuatElt::vD() const {
    PadicScalar n = nrd();
    if (n.is_zero() && n.is_exact()) return kInfVal;
    return n.val();
}

QuatElt QuatElt::inv() const {
    PadicScalar ni = nrd().inv();
    QuatElt c = conj();
    return {ni * c.x, ni * c.y, eps};
}

QuatElt QuatElt::plus() const { return {x, QuadElt::of(0, 0, prime()), eps}; }
QuatElt QuatElt::minus() const { return {QuadElt::of(0, 0, prime()), y, eps}; }

bool QuatElt::is_integral() const {
    if (is_zero()) return true;
    return vD() >= 0;
}

// (x1 + y1 j)(x2 + y2 j) = (x1 x2 + eps y1 conj(y2)) + (x1 y2 + y1 conj(x2)) j
QuatElt operator*(const QuatElt& u, const QuatElt& v) {
    PadicScalar e(u.eps, u.prime());
    QuadElt xx = u.x * v.x + e * (u.y * v.y.conj());
    QuadElt yy = u.x * v.y + u.y * v.x.conj();
    return {xx, yy, u.eps};
}

Rational default_eps(long p) { return Rational(smallest_nonresidue(p)); }

QuadElt solve_norm_F(const PadicScalar& target, long N) {
    if (N <= 0) N = working_precision();
    long p = target.prime();
    if (target.is_zero()) throw std::domain_error("not a norm");
    if (eta(target) != 1) throw std::domain_error("not a norm");
    // target = (-p)^k * s with s a unit square; N(pi^k * r) = (-p)^k r^2
    long k = target.val();
    PadicScalar mp(-p, p);
    PadicScalar s = target;
    for (long i = 0; i < k; ++i) s = s / mp;
    for (long i = 0; i > k; --i) s = s * mp;
    PadicScalar r = hensel_sqrt(s, N);
    QuadElt z{r, PadicScalar(0L, p)};
    QuadElt pik = QuadElt::of(1, 0, p);
    QuadElt pi = QuadElt::pi(p);
    if (k >= 0)
        for (long i = 0; i < k; ++i) pik = pik * pi;
    else
        for (long i = 0; i < -k; ++i) pik = pik * pi.inv();
    return pik * z;
}

}  // namespace atlas
