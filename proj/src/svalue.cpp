#include "atlas/svalue.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace atlas {

namespace {
const Rational kZero = 0;
}

Poly Poly::monomial(const Rational& a, int k) {
    std::vector<Rational> c(static_cast<size_t>(k) + 1, Rational(0));
    c[static_cast<size_t>(k)] = a;
    return Poly(std::move(c));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Poly::operator[](int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(i)];
}

Rational Poly::eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Poly Poly::derivative() const {
    std::vector<Rational> d;
    for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
    return Poly(std::move(d));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + Rational(-1) * b; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
}

Poly operator*(const Rational& s, const Poly& a) {
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    r = a;
    std::vector<Rational> qc(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0, Rational(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        Rational f = r.lead() / b.lead();
        qc[static_cast<size_t>(k)] = f;
        r = r - Poly::monomial(f, k) * b;
    }
    q = Poly(std::move(qc));
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return Rational(1 / a.lead()) * a;
}

std::string Poly::str(const char* var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[i].get_str() << ")";
        if (i > 0) os << "*" << var << "^" << i;
    }
    return os.str();
}

RatX::RatX(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    normalize();
}

void RatX::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(1);
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
        Poly q, r;
        Poly::divmod(num_, g, q, r);
        num_ = q;
        Poly::divmod(den_, g, q, r);
        den_ = q;
    }
    Rational l = den_.lead();
    num_ = Rational(1 / l) * num_;
    den_ = Rational(1 / l) * den_;
}

RatX RatX::monomial(const Rational& a, int k) {
    if (k >= 0) return RatX(Poly::monomial(a, k), Poly::constant(1));
    return RatX(Poly::constant(a), Poly::monomial(1, -k));
}

RatX RatX::inv() const {
    if (num_.is_zero()) throw std::domain_error("division by zero rational function");
    return RatX(den_, num_);
}

RatX RatX::derivative() const {
    return RatX(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rational RatX::eval(const Rational& x) const {
    Rational d = den_.eval(x);
    if (d == 0) throw std::domain_error("pole");
    return num_.eval(x) / d;
}

int RatX::pole_order_at_1() const {
    int r = 0;
    Poly d = den_;
    Poly f({Rational(-1), Rational(1)});
    while (d.eval(1) == 0) {
        Poly q, rem;
        Poly::divmod(d, f, q, rem);
        d = q;
        ++r;
    }
    return r;
}

RatX RatX::substitute_monomial(const Rational& rho, int e) const {
    // Laurent substitution: collect terms a_i rho^i X^{e i}
    auto lsub = [&](const Poly& P) {
        RatX out(0);
        Rational rp = 1;
        for (int i = 0; i <= P.degree(); ++i) {
            if (P[i] != 0) out = out + monomial(P[i] * rp, e * i);
            rp *= rho;
        }
        return out;
    };
    return lsub(num_) / lsub(den_);
}

RatX operator+(const RatX& a, const RatX& b) {
    if (a.den_ == b.den_) return RatX(a.num_ + b.num_, a.den_);
    return RatX(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatX operator-(const RatX& a, const RatX& b) { return a + RatX(-1) * b; }

RatX operator*(const RatX& a, const RatX& b) { return RatX(a.num_ * b.num_, a.den_ * b.den_); }

std::string RatX::str() const {
    if (is_polynomial()) return Rational(1 / den_[0]) == 1 ? num_.str() : (Rational(1 / den_[0]) * num_).str();
    return "[" + num_.str() + "] / [" + den_.str() + "]";
}

Rational LogQVal::coeff(int k) const {
    auto it = t_.find(k);
    return it == t_.end() ? Rational(0) : it->second;
}

void LogQVal::set(int k, const Rational& c) {
    if (c == 0)
        t_.erase(k);
    else
        t_[k] = c;
}

LogQVal operator+(const LogQVal& a, const LogQVal& b) {
    LogQVal r = a;
    for (auto& [k, c] : b.t_) r.set(k, r.coeff(k) + c);
    return r;
}

LogQVal operator-(const LogQVal& a, const LogQVal& b) { return a + Rational(-1) * b; }

LogQVal operator*(const LogQVal& a, const LogQVal& b) {
    LogQVal r;
    for (auto& [i, x] : a.t_)
        for (auto& [j, y] : b.t_) r.set(i + j, r.coeff(i + j) + x * y);
    return r;
}

LogQVal operator*(const Rational& s, const LogQVal& a) {
    LogQVal r;
    for (auto& [k, c] : a.t_) r.set(k, s * c);
    return r;
}

LogQVal LogQVal::shift(int k) const {
    LogQVal r;
    for (auto& [i, c] : t_) r.set(i + k, c);
    return r;
}

std::string LogQVal::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        if (k == 1) os << "*logq";
        else if (k != 0) os << "*logq^" << k;
    }
    return os.str();
}

double LogQVal::approx(long p) const {
    double L = std::log(static_cast<double>(p)), s = 0;
    for (auto& [k, c] : t_) s += c.get_d() * std::pow(L, k);
    return s;
}

std::vector<Rational> laurent_at_1(const RatX& f, int order, int* lowest) {
    // X = 1 - e
    auto compose = [](const Poly& P) {
        Poly out;
        Poly base({Rational(1), Rational(-1)});
        Poly pw = Poly::constant(1);
        for (int i = 0; i <= P.degree(); ++i) {
            out = out + P[i] * pw;
            pw = pw * base;
        }
        return out;
    };
    Poly N = compose(f.num()), D = compose(f.den());
    int r = 0;
    while (D[r] == 0) ++r;
    int nterms = order + r + 1;
    std::vector<Rational> s(static_cast<size_t>(std::max(nterms, 0)), Rational(0));
    // power series N(e) / (D(e)/e^r)
    for (int k = 0; k < nterms; ++k) {
        Rational acc = N[k];
        for (int i = 1; i <= k; ++i) acc -= D[r + i] * s[static_cast<size_t>(k - i)];
        s[static_cast<size_t>(k)] = acc / D[r];
    }
    if (lowest) *lowest = -r;
    return s;
}

Rational value_s0(const RatX& f) {
    if (f.pole_order_at_1() > 0) throw std::domain_error("pole at s=0");
    return f.eval(1);
}

LogQVal dds_s0(const RatX& f) {
    if (f.pole_order_at_1() > 0) throw std::domain_error("pole at s=0");
    return LogQVal::logq(-f.derivative().eval(1));
}

LogQVal residue_s0(const RatX& f) {
    int lo = 0;
    auto c = laurent_at_1(f, 0, &lo);
    if (lo > -1) return LogQVal();
    if (lo < -1) throw std::domain_error("higher order pole at s=0");
    // 1 - X = s log q + O(s^2)
    LogQVal r;
    r.set(-1, c[0]);
    return r;
}

}  // namespace atlas
