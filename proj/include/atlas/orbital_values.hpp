#pragma once
#include "atlas/orbit.hpp"
#include "atlas/svalue.hpp"

#include <map>
#include <optional>

namespace atlas {

// zeta_{F_0}(1) = 1/(1 - q^{-1}).
Rational zeta1(long p);

enum class PhiTag { phi0, phi1, phi2, phi3 };
std::string to_string(PhiTag t);

// Linear combination of the fundamental functions phi0..phi3 with
// log q-graded coefficients.
struct CClassFn {
    long p = 3;
    std::map<PhiTag, LogQVal> coeff;

    static CClassFn basis(PhiTag t, long p);
    CClassFn& add(PhiTag t, const LogQVal& c);
    friend CClassFn operator+(const CClassFn& a, const CClassFn& b);
    friend CClassFn operator*(const LogQVal& s, const CClassFn& f);
    friend bool operator==(const CClassFn& a, const CClassFn& b);
    std::string str() const;
};

LogQVal phi_eval(const CClassFn& f, const PadicScalar& x);
CClassFn ext_fourier(const CClassFn& f);

// Nilpotent orbital integrals of the transfer phi' on s_red.
Rational orb_nil_family_s(const PadicScalar& mu);
Rational orb_nil_reg_s(bool plus, long p);
// Nilpotent orbital integrals of 1_{k_0} on u_0.
Rational orb_u0_zero(long p);
Rational orb_u0_nil_family(const PadicScalar& beta);

// Semisimple orbital integrals of 1_{k_0} on u_0 above degenerate x0.
Rational orb_u0_ss_case0(const PadicScalar& lambda0);
Rational orb_u0_ss_case1(const PadicScalar& lambda0, const PadicScalar& u0);
Rational orb_u0_ss(const BPoint& x0);

struct ForcedValue {
    enum class Kind { value, not_needed, excluded };
    Kind kind = Kind::value;
    Rational value = 0;
};
std::string to_string(ForcedValue::Kind k);

// Orb(rep, phi') forced by transfer to (1_{k_0,red}, 0). For the n_mu family
// pass the family parameter mu.
ForcedValue forced_s_values(const BPoint& x0, const OrbitRep& rep,
                            const std::optional<PadicScalar>& mu = std::nullopt);

// Transfer factor of the section used near x0 (sigma, or sigma_1 in case 0ii).
int section_omega(const BPoint& x0);

}  // namespace atlas
