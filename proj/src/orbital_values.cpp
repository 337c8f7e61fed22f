#include "atlas/orbital_values.hpp"

#include <sstream>
#include <stdexcept>

namespace atlas {

Rational zeta1(long p) { return Rational(p, p - 1); }

std::string to_string(PhiTag t) {
    switch (t) {
        case PhiTag::phi0: return "phi0";
        case PhiTag::phi1: return "phi1";
        case PhiTag::phi2: return "phi2";
        case PhiTag::phi3: return "phi3";
    }
    return "?";
}

CClassFn CClassFn::basis(PhiTag t, long p) {
    CClassFn f;
    f.p = p;
    f.coeff[t] = LogQVal(1);
    return f;
}

CClassFn& CClassFn::add(PhiTag t, const LogQVal& c) {
    LogQVal s = coeff[t] + c;
    if (s.is_zero())
        coeff.erase(t);
    else
        coeff[t] = s;
    return *this;
}

CClassFn operator+(const CClassFn& a, const CClassFn& b) {
    CClassFn r = a;
    for (const auto& [t, c] : b.coeff) r.add(t, c);
    return r;
}

CClassFn operator*(const LogQVal& s, const CClassFn& f) {
    CClassFn r;
    r.p = f.p;
    for (const auto& [t, c] : f.coeff) r.add(t, s * c);
    return r;
}

bool operator==(const CClassFn& a, const CClassFn& b) { return a.p == b.p && a.coeff == b.coeff; }

std::string CClassFn::str() const {
    if (coeff.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : coeff) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << to_string(t);
    }
    return os.str();
}

LogQVal phi_eval(const CClassFn& f, const PadicScalar& x) {
    long p = f.p;
    LogQVal out;
    bool small = x.is_zero() || x.val() >= 0;
    for (const auto& [t, c] : f.coeff) {
        LogQVal v;
        if (t == PhiTag::phi0) {
            v = LogQVal(small ? 1 : 0);
        } else if (!small) {
            long e = x.val();
            Rational a = qpow(p, e);  // 1/|x|
            switch (t) {
                case PhiTag::phi1: v = LogQVal(eta(x) * a); break;
                case PhiTag::phi2: v = LogQVal(a); break;
                case PhiTag::phi3: v = LogQVal::logq(eta(x) * Rational(-e) * a); break;
                default: break;
            }
        }
        out = out + c * v;
    }
    return out;
}

CClassFn ext_fourier(const CClassFn& f) {
    long p = f.p;
    Rational e1 = eta_minus_one(p), z = zeta1(p), qi = Rational(1, p);
    CClassFn r;
    r.p = p;
    for (const auto& [t, c] : f.coeff) {
        switch (t) {
            case PhiTag::phi0:
                r.add(PhiTag::phi1, c * LogQVal(e1));
                break;
            case PhiTag::phi1:
                r.add(PhiTag::phi0, c * LogQVal(qi));
                break;
            case PhiTag::phi2:
                r.add(PhiTag::phi3, c * LogQVal(e1 / z).shift(-1));
                r.add(PhiTag::phi1, c * LogQVal(-e1));
                break;
            case PhiTag::phi3:
                r.add(PhiTag::phi0, c * LogQVal::logq(z * qi));
                r.add(PhiTag::phi2, c * LogQVal::logq(z * qi));
                break;
        }
    }
    return r;
}

Rational orb_nil_family_s(const PadicScalar& mu) {
    long p = mu.prime();
    if (mu.is_zero() || mu.val() >= 0) return 0;
    long v = mu.val();
    return Rational(eta_minus_one(p) * eta(mu) * (-v)) * qpow(p, 1 + v);
}

Rational orb_nil_reg_s(bool plus, long p) {
    Rational r = -zeta1(p) / p;
    return plus ? eta_minus_one(p) * r : r;
}

Rational orb_u0_zero(long p) { return 2 * zeta1(p) / p; }

Rational orb_u0_nil_family(const PadicScalar& beta) {
    long p = beta.prime();
    Rational c = p * zeta1(p);
    if (beta.is_zero() || beta.val() >= 0) return c;
    return c * qpow(p, beta.val());
}

namespace {

Rational case0_shape(long v, long p) {
    Rational q(p), qi(1, p);
    if (v % 2 == 0) return -2 * qi + qpow(p, v / 2) * (1 + qi);
    return 2 * qi * (qpow(p, (v + 1) / 2) - 1);
}

}  // namespace

Rational orb_u0_ss_case0(const PadicScalar& lambda0) {
    long p = lambda0.prime();
    if (lambda0.is_zero()) throw std::domain_error("case 0 needs lambda0 != 0");
    if (is_square(-lambda0)) throw std::domain_error("excluded case");
    if (lambda0.val() < 0) return 0;
    return zeta1(p) * case0_shape(lambda0.val(), p);
}

Rational orb_u0_ss_case1(const PadicScalar& lambda0, const PadicScalar& u0) {
    long p = u0.prime();
    if (u0.is_zero()) throw std::domain_error("case 1 needs u0 != 0");
    if (u0.val() < 0 || (!lambda0.is_zero() && lambda0.val() < 0)) return 0;
    Rational qi(1, p);
    if (lambda0.is_zero() || lambda0.val() > 2 * u0.val())
        return zeta1(p) * 2 * qi * (qpow(p, u0.val() + 1) - 1);
    return zeta1(p) * 2 * qi * (qpow(p, (lambda0.val() + 1) / 2) - 1);
}

Rational orb_u0_ss(const BPoint& x0) {
    switch (degenerate_case(x0)) {
        case DegenerateCase::zero: return orb_u0_zero(x0.prime());
        case DegenerateCase::case0i:
        case DegenerateCase::case0ii: return orb_u0_ss_case0(x0.lambda);
        case DegenerateCase::case0i_split: throw std::domain_error("excluded case");
        case DegenerateCase::case1:
            if (!x0.wtilde.is_zero() && x0.wtilde.val() < 0) return 0;
            return orb_u0_ss_case1(x0.lambda, x0.u);
    }
    return 0;
}

std::string to_string(ForcedValue::Kind k) {
    switch (k) {
        case ForcedValue::Kind::value: return "value";
        case ForcedValue::Kind::not_needed: return "not_needed";
        case ForcedValue::Kind::excluded: return "excluded";
    }
    return "?";
}

int section_omega(const BPoint& x0) {
    if (degenerate_case(x0) != DegenerateCase::case0ii) return 1;
    PadicScalar pp(x0.prime(), x0.prime());
    return omega_sigma1(hensel_sqrt(-x0.lambda / pp));
}

ForcedValue forced_s_values(const BPoint& x0, const OrbitRep& rep, const std::optional<PadicScalar>& mu) {
    using K = ForcedValue::Kind;
    long p = x0.prime();
    auto val = [](const Rational& r) { return ForcedValue{K::value, r}; };
    const ForcedValue none{K::not_needed, 0};
    const std::string& t = rep.tag;
    switch (degenerate_case(x0)) {
        case DegenerateCase::zero:
            if (t == "n0_plus") return val(orb_nil_reg_s(true, p));
            if (t == "n0_minus") return val(orb_nil_reg_s(false, p));
            if (t == "n_mu") {
                if (!mu) throw std::invalid_argument("n_mu needs a family parameter");
                return val(orb_nil_family_s(*mu));
            }
            break;
        case DegenerateCase::case0i_split:
            return {K::excluded, 0};
        case DegenerateCase::case0i: {
            Rational h = orb_u0_ss_case0(x0.lambda) / 2;
            if (t == "y_plus") return val(h);
            if (t == "y_minus") return val(eta(-x0.lambda) * h);
            return none;
        }
        case DegenerateCase::case0ii: {
            Rational h = section_omega(x0) * orb_u0_ss_case0(x0.lambda) / 2;
            if (t == "y_pp") return val(h);
            if (t == "y_mm") return val(eta_minus_one(p) * h);
            if (t == "y_pm" || t == "y_mp") return val(0);
            return none;
        }
        case DegenerateCase::case1: {
            Rational h = orb_u0_ss(x0) / 2;
            if (t == "y_plus" || t == "y_minus") return val(h);
            return none;
        }
    }
    throw std::invalid_argument("unknown representative " + t);
}

}  // namespace atlas
