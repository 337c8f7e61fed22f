#include "atlas/rational.hpp"

#include <stdexcept>

namespace atlas {

long vp(const Integer& n, long p) {
    if (n == 0) return kInfVal;
    Integer rest;
    Integer pp = p;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

long vp(const Rational& x, long p) {
    if (x == 0) return kInfVal;
    return vp(Integer(x.get_num()), p) - vp(Integer(x.get_den()), p);
}

Rational unit_part(const Rational& x, long p) {
    if (x == 0) throw std::domain_error("unit part of zero");
    long v = vp(x, p);
    return x / qpow(p, v);
}

Integer mod_residue(const Rational& x, const Integer& m) {
    Integer num = x.get_num(), den = x.get_den(), inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("denominator not invertible modulo m");
    Integer r = (num * inv) % m;
    if (r < 0) r += m;
    return r;
}

Rational qpow(long p, long k) {
    Integer base = p, r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    if (k >= 0) return Rational(r);
    Rational out(Integer(1), r);
    out.canonicalize();
    return out;
}

Integer ipow(long p, unsigned long k) {
    Integer base = p, r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), k);
    return r;
}

int legendre(const Integer& a, long p) {
    Integer pp = p;
    return mpz_legendre(a.get_mpz_t(), pp.get_mpz_t());
}

long smallest_nonresidue(long p) {
    for (long e = 2; e < p; ++e)
        if (legendre(Integer(e), p) == -1) return e;
    throw std::domain_error("no non-residue");
}

int eta_minus_one(long p) { return (p % 4 == 1) ? 1 : -1; }

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

}  // namespace atlas
