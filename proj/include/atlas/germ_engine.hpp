#pragma once
#include "atlas/keating.hpp"
#include "atlas/orbital_values.hpp"
#include "atlas/svalue.hpp"

#include <optional>

namespace atlas {

struct GermCoeff {
    OrbitRep rep;
    std::optional<Rational> value_at_0;
    LogQVal dvalue;
    std::optional<RatX> s_form;
};

// Gamma_{n(mu)}(x, s) in X = q^{-s}; use_other_root picks the second root nu.
GermCoeff gamma_n_mu(const BPoint& x, const PadicScalar& mu, bool use_other_root = false);

struct DGamma {
    enum class Kind { value, unneeded, excluded };
    Kind kind = Kind::value;
    LogQVal value;
};

// True when x lies in the neighborhood of x0 where the germ formulas apply.
bool in_neighborhood(const BPoint& x0, const BPoint& x, long depth = 4);

// Derivative of Gamma_rep at s = 0. The n_mu family needs mu.
DGamma dgamma_table(const BPoint& x0, const OrbitRep& rep, const BPoint& x,
                    const std::optional<PadicScalar>& mu = std::nullopt);

// Closed form of the n_mu family contribution, for side-1 x near 0.
LogQVal phi_closed(const BPoint& x);

struct Dorb1 {
    LogQVal varying;
    std::string constant;  // empty at x0 = 0, else the symbolic constant name
};

// d/ds Orb(sigma(x), phi') at s = 0, near the degenerate point x0.
Dorb1 dorb1(const BPoint& x0, const BPoint& x);
// Same from the germ table: sum over x0-nilpotent reps of dGamma * Orb.
// For x0 = 0 the n_mu family enters through phi_closed.
Dorb1 dorb1_assembled(const BPoint& x0, const BPoint& x);

}  // namespace atlas
