#include "atlas/padic.hpp"

#include <atomic>
#include <sstream>

namespace atlas {

namespace {
std::atomic<long> g_precision{kDefaultPrecision};
}

long working_precision() { return g_precision.load(); }

void set_working_precision(long N) {
    if (N <= 0) throw std::invalid_argument("precision must be positive");
    g_precision.store(N);
}

PadicScalar PadicScalar::capped(long v, const Integer& unit, long N, long p) {
    PadicScalar r;
    r.p_ = p;
    r.exact_ = false;
    r.N_ = N;
    Integer m = ipow(p, static_cast<unsigned long>(N));
    r.u_ = unit % m;
    if (r.u_ < 0) r.u_ += m;
    if (N <= 0 || r.u_ % p == 0) throw std::invalid_argument("capped unit must be a unit");
    r.v_ = v;
    return r;
}

PadicScalar PadicScalar::capped_zero(long abs_prec, long p) {
    PadicScalar r;
    r.p_ = p;
    r.exact_ = false;
    r.czero_ = true;
    r.v_ = abs_prec;
    r.N_ = 0;
    return r;
}

PadicScalar PadicScalar::from_rational_at(const Rational& r, long abs_prec, long p) {
    if (is_inf(abs_prec)) return PadicScalar(r, p);
    long v = vp(r, p);
    if (v >= abs_prec) return capped_zero(abs_prec, p);
    long N = abs_prec - v;
    return capped(v, mod_residue(unit_part(r, p), ipow(p, N)), N, p);
}

long PadicScalar::abs_precision() const {
    if (exact_) return kInfVal;
    return czero_ ? v_ : v_ + N_;
}

bool PadicScalar::is_zero() const { return exact_ ? q_ == 0 : czero_; }

long PadicScalar::val() const {
    if (exact_) return vp(q_, p_);
    if (czero_) throw PrecisionError();
    return v_;
}

long PadicScalar::unit_residue() const {
    return unit_mod(1).get_si();
}

Integer PadicScalar::unit_mod(long k) const {
    Integer m = ipow(p_, static_cast<unsigned long>(k));
    if (exact_) {
        if (q_ == 0) throw PrecisionError();
        return mod_residue(unit_part(q_, p_), m);
    }
    if (czero_ || k > N_) throw PrecisionError();
    return u_ % m;
}

const Rational& PadicScalar::exact_value() const {
    if (!exact_) throw std::logic_error("not an exact scalar");
    return q_;
}

Rational PadicScalar::approx() const {
    if (exact_) return q_;
    if (czero_) return 0;
    return Rational(u_) * qpow(p_, v_);
}

PadicScalar PadicScalar::to_capped(long N) const {
    if (N <= 0) N = working_precision();
    if (!exact_) return *this;
    if (q_ == 0) return capped_zero(N, p_);
    long v = vp(q_, p_);
    return capped(v, mod_residue(unit_part(q_, p_), ipow(p_, N)), N, p_);
}

std::vector<int> PadicScalar::digits() const {
    std::vector<int> d;
    if (is_zero()) return d;
    long n = exact_ ? working_precision() : N_;
    Integer u = unit_mod(n);
    for (long i = 0; i < n; ++i) {
        Integer r = u % p_;
        d.push_back(static_cast<int>(r.get_si()));
        u /= p_;
    }
    return d;
}

PadicScalar PadicScalar::operator-() const {
    if (exact_) return PadicScalar(Rational(-q_), p_);
    if (czero_) return *this;
    return capped(v_, -u_, N_, p_);
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("prime mismatch");
    if (a.exact_ && b.exact_) return PadicScalar(Rational(a.q_ + b.q_), a.p_);
    long A = std::min(a.abs_precision(), b.abs_precision());
    return PadicScalar::from_rational_at(a.approx() + b.approx(), A, a.p_);
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("prime mismatch");
    if (a.exact_ && b.exact_) return PadicScalar(Rational(a.q_ * b.q_), a.p_);
    long p = a.p_;
    if (a.is_zero() || b.is_zero()) {
        if ((a.exact_ && a.q_ == 0) || (b.exact_ && b.q_ == 0)) return PadicScalar(0L, p);
        // zero known to absolute precision A, times something of valuation w
        long A = 0;
        if (a.is_zero() && b.is_zero()) A = a.v_ + b.v_;
        else if (a.is_zero()) A = a.v_ + b.val();
        else A = b.v_ + a.val();
        return PadicScalar::capped_zero(A, p);
    }
    long N = std::min(a.exact_ ? kInfVal : a.N_, b.exact_ ? kInfVal : b.N_);
    long v = a.val() + b.val();
    Integer u = a.unit_mod(N) * b.unit_mod(N);
    return PadicScalar::capped(v, u, N, p);
}

PadicScalar PadicScalar::inv() const {
    if (is_zero()) {
        if (exact_) throw std::domain_error("inverse of zero");
        throw PrecisionError();
    }
    if (exact_) return PadicScalar(Rational(1 / q_), p_);
    Integer m = ipow(p_, static_cast<unsigned long>(N_)), iu;
    mpz_invert(iu.get_mpz_t(), u_.get_mpz_t(), m.get_mpz_t());
    return capped(-v_, iu, N_, p_);
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return a * b.inv(); }

std::string PadicScalar::str() const {
    if (exact_) return q_.get_str();
    std::ostringstream os;
    if (czero_) {
        os << "O(" << p_ << "^" << v_ << ")";
        return os.str();
    }
    os << p_ << "^" << v_ << "*" << u_.get_str() << "+O(" << p_ << "^" << (v_ + N_) << ")";
    return os.str();
}

long val(const PadicScalar& x) { return x.val(); }

int eta(const PadicScalar& x) {
    if (x.is_zero()) {
        if (x.is_exact()) throw std::domain_error("eta of zero");
        throw PrecisionError();
    }
    long p = x.prime();
    int s = legendre(Integer(x.unit_residue()), p);
    long v = x.val();
    if (v % 2 != 0) s *= eta_minus_one(p);
    return s;
}

int eta(const Rational& x, long p) { return eta(PadicScalar(x, p)); }

bool is_square(const PadicScalar& x) {
    if (x.is_zero()) return x.is_exact();
    return x.val() % 2 == 0 && legendre(Integer(x.unit_residue()), x.prime()) == 1;
}

PadicScalar hensel_sqrt(const PadicScalar& x, long N) {
    if (N <= 0) N = working_precision();
    long p = x.prime();
    if (x.is_zero()) {
        if (x.is_exact()) return x;
        throw PrecisionError();
    }
    long v = x.val();
    if (v % 2 != 0) throw std::domain_error("no square root");
    long a = x.unit_residue();
    if (legendre(Integer(a), p) != 1) throw std::domain_error("no square root");
    long prec = x.is_exact() ? N : std::min(N, x.precision());
    // Exact rational square roots stay exact.
    if (x.is_exact()) {
        const Rational& q = x.exact_value();
        if (q > 0 && mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
            mpz_perfect_square_p(q.get_den().get_mpz_t())) {
            Integer n, d;
            mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
            mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
            Rational r(n, d);
            r.canonicalize();
            long lead = mod_residue(unit_part(r, p), Integer(p)).get_si();
            if (lead > (p - 1) / 2) r = -r;
            return PadicScalar(r, p);
        }
    }
    Integer s = 0;
    for (long c = 1; c < p; ++c)
        if ((c * c - a) % p == 0) {
            s = c;
            break;
        }
    Integer target = x.unit_mod(prec);
    Integer m = p;
    for (long k = 1; k < prec; ++k) {
        // lift from mod p^k to mod p^(k+1): s <- s - (s^2 - t)/(2s)
        m *= p;
        Integer inv2s;
        Integer two_s = 2 * s;
        mpz_invert(inv2s.get_mpz_t(), two_s.get_mpz_t(), m.get_mpz_t());
        s = (s - (s * s - target) * inv2s) % m;
        if (s < 0) s += m;
    }
    if (s % p > (p - 1) / 2) s = m - s;
    return PadicScalar::capped(v / 2, s, prec, p);
}

}  // namespace atlas
