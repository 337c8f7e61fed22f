#pragma once

#include "atlas/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace atlas {

struct PrecisionError : std::runtime_error {
    PrecisionError() : std::runtime_error("precision exhausted") {}
};

constexpr long kDefaultPrecision = 24;
// Precision used when a routine is called with N <= 0.
long working_precision();
void set_working_precision(long N);

// An element of Q_p: either an exact rational or p^v * u with u a unit
// known modulo p^N.
class PadicScalar {
public:
    PadicScalar() = default;
    PadicScalar(const Rational& x, long p) : p_(p), q_(x) { q_.canonicalize(); }
    PadicScalar(long x, long p) : p_(p), q_(x) {}

    static PadicScalar capped(long v, const Integer& unit, long N, long p);
    // Zero known modulo p^abs_prec.
    static PadicScalar capped_zero(long abs_prec, long p);

    long prime() const { return p_; }
    bool is_exact() const { return exact_; }
    // Relative precision; -1 means exact.
    long precision() const { return exact_ ? -1 : N_; }
    // Absolute precision; kInfVal for exact values.
    long abs_precision() const;

    // True for exact zero and for capped values that vanish at stored precision.
    bool is_zero() const;
    long val() const;
    // Unit part modulo p (in 1..p-1).
    long unit_residue() const;
    // Unit part modulo p^k (k <= precision for capped values).
    Integer unit_mod(long k) const;

    const Rational& exact_value() const;
    // p^v * u as a rational (the stored approximant for capped values).
    Rational approx() const;
    const Integer& unit_digits_value() const { return u_; }

    PadicScalar to_capped(long N = 0) const;
    std::vector<int> digits() const;

    PadicScalar operator-() const;
    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
    PadicScalar inv() const;

    // Equality at stored precision (exact equality for exact operands).
    bool equals(const PadicScalar& o) const { return (*this - o).is_zero(); }

    std::string str() const;

private:
    long p_ = 3;
    bool exact_ = true;
    Rational q_ = 0;
    // capped: value = p^v_ * u_, u_ a unit mod p^N_; czero_ means zero mod p^v_
    long v_ = 0;
    Integer u_ = 0;
    long N_ = 0;
    bool czero_ = false;

    static PadicScalar from_rational_at(const Rational& r, long abs_prec, long p);
};

long val(const PadicScalar& x);
// Quadratic character with kernel N(F^x), F = Q_p(sqrt p).
int eta(const PadicScalar& x);
int eta(const Rational& x, long p);

// Square root with leading digit in {1..(p-1)/2}; input of even valuation.
PadicScalar hensel_sqrt(const PadicScalar& u, long N = 0);
bool is_square(const PadicScalar& x);

}  // namespace atlas
