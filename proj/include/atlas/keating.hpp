#pragma once

#include "atlas/orbit.hpp"

namespace atlas {

struct DistParams {
    long ell_minus = 1;
    long im_plus_val = kInfVal;
};

long dist_j(const DistParams& d, long j);
Rational keating_n(long ell, long j, long p);

// Twice the quasi-canonical sum of Keating lengths.
Rational l_int_keating(long m, long lminus, long lplus, long p);

enum class LIntCase { I1, I2, I3, II1, II2 };
LIntCase l_int_case(long m, long lminus, long lplus);
std::string to_string(LIntCase c);
Rational l_int_closed(long m, long lminus, long lplus, long p);

// Zero on side 0 and off the integral locus.
Rational l_int(const BPoint& x);

// Intersection number of a group element in (alpha, beta, b, c, d) coordinates.
Rational int_group(const MatD& g);

}  // namespace atlas
