#pragma once

#include "atlas/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace atlas {

// Dense polynomial over Q; coeffs[i] multiplies X^i.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    static Poly constant(const Rational& a) { return Poly({a}); }
    static Poly monomial(const Rational& a, int k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& operator[](int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& lead() const { return c_.back(); }

    Rational eval(const Rational& x) const;
    Poly derivative() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
    static Poly gcd(Poly a, Poly b);

    std::string str(const char* var = "X") const;

private:
    std::vector<Rational> c_;
    void trim();
};

// Exact rational function in X = q^{-s}.
class RatX {
public:
    RatX() : num_(), den_(Poly::constant(1)) {}
    RatX(const Rational& a) : num_(Poly::constant(a)), den_(Poly::constant(1)) { normalize(); }
    RatX(Poly n, Poly d);
    // a * X^k for any integer k.
    static RatX monomial(const Rational& a, int k);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatX inv() const;
    RatX derivative() const;
    Rational eval(const Rational& x) const;
    // Order of the pole at X = 1 (0 if regular).
    int pole_order_at_1() const;
    // f(rho * X^e); e may be negative.
    RatX substitute_monomial(const Rational& rho, int e) const;

    friend RatX operator+(const RatX& a, const RatX& b);
    friend RatX operator-(const RatX& a, const RatX& b);
    friend RatX operator*(const RatX& a, const RatX& b);
    friend RatX operator/(const RatX& a, const RatX& b) { return a * b.inv(); }
    friend bool operator==(const RatX& a, const RatX& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    RatX shift(int k) const { return *this * monomial(1, k); }

    std::string str() const;

private:
    Poly num_, den_;
    void normalize();
};

// Finite sum of c_k (log q)^k; negative k allowed.
class LogQVal {
public:
    LogQVal() = default;
    LogQVal(const Rational& c0) { set(0, c0); }
    static LogQVal logq(const Rational& c) {
        LogQVal v;
        v.set(1, c);
        return v;
    }

    Rational coeff(int k) const;
    void set(int k, const Rational& c);
    const std::map<int, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    friend LogQVal operator+(const LogQVal& a, const LogQVal& b);
    friend LogQVal operator-(const LogQVal& a, const LogQVal& b);
    friend LogQVal operator*(const LogQVal& a, const LogQVal& b);
    friend LogQVal operator*(const Rational& s, const LogQVal& a);
    LogQVal operator-() const { return Rational(-1) * *this; }
    friend bool operator==(const LogQVal& a, const LogQVal& b) { return a.t_ == b.t_; }
    friend bool operator!=(const LogQVal& a, const LogQVal& b) { return !(a == b); }
    // Multiply by (log q)^k.
    LogQVal shift(int k) const;

    std::string str() const;
    double approx(long p) const;

private:
    std::map<int, Rational> t_;
};

// log|x| for v(x) = v.
inline LogQVal log_abs(long v) { return LogQVal::logq(Rational(-v)); }

// Laurent coefficients of f in powers of (1-X): returns a_{-r..order}, with
// lowest index stored in *lowest.
std::vector<Rational> laurent_at_1(const RatX& f, int order, int* lowest);
Rational value_s0(const RatX& f);
LogQVal dds_s0(const RatX& f);

// Residue in s at s = 0, in units of 1/log q.
LogQVal residue_s0(const RatX& f);

}  // namespace atlas
