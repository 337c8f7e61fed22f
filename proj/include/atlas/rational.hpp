#pragma once

#include <gmpxx.h>

#include <climits>
#include <string>

namespace atlas {

using Rational = mpq_class;
using Integer = mpz_class;

// Valuation sentinel for zero.
constexpr long kInfVal = LONG_MAX / 4;

inline bool is_inf(long v) { return v >= kInfVal; }

long vp(const Integer& n, long p);
long vp(const Rational& x, long p);

// x = p^v * u with u a p-adic unit; returns u.
Rational unit_part(const Rational& x, long p);

// Residue of a p-integral rational modulo m.
Integer mod_residue(const Rational& x, const Integer& m);

Rational qpow(long p, long k);
Integer ipow(long p, unsigned long k);

int legendre(const Integer& a, long p);

// Smallest positive quadratic non-residue mod p.
long smallest_nonresidue(long p);

// eta(-1) for the ramified character attached to pi^2 = p.
int eta_minus_one(long p);

std::string to_string(const Rational& x);
Rational parse_rational(const std::string& s);

}  // namespace atlas
