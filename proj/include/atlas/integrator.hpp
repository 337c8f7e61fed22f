#pragma once

#include "atlas/orbit.hpp"
#include "atlas/svalue.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace atlas {

// Sparse polynomial over Q in a fixed number of variables.
class MPoly {
public:
    using Exp = std::vector<int>;

    MPoly() = default;
    explicit MPoly(int nvars) : n_(nvars) {}
    static MPoly constant(int nvars, const Rational& c);
    static MPoly var(int nvars, int i);

    int nvars() const { return n_; }
    const std::map<Exp, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Rational constant_term() const;
    bool depends_on(int i) const;

    // P(x) with x_i -> c + s * x_i.
    MPoly shift(int i, const Rational& c, const Rational& s) const;

    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const Rational& s, const MPoly& a);
    MPoly operator-() const { return Rational(-1) * *this; }

private:
    int n_ = 0;
    std::map<Exp, Rational> t_;
    void add_term(const Exp& e, const Rational& c);
};

// a + b*pi with polynomial coefficients.
struct FPoly {
    MPoly a, b;
    friend FPoly operator+(const FPoly& x, const FPoly& y) { return {x.a + y.a, x.b + y.b}; }
    friend FPoly operator-(const FPoly& x, const FPoly& y) { return {x.a - y.a, x.b - y.b}; }
    static FPoly mul(const FPoly& x, const FPoly& y, long p);
};

// Valuation data of a polynomial on a ball: exact valuation and unit
// residue, or only a lower bound.
struct AtomVal {
    bool exact = false;
    long val = kInfVal;
    long residue = 0;
};

std::optional<bool> val_ge(const AtomVal& a, long bound);
int eta_of(const AtomVal& a, long p);

// (log grade, X exponent) -> coefficient.
using Graded = std::map<std::pair<int, long>, Rational>;
void add_into(Graded& acc, const Graded& g, const Rational& scale = 1);

// Atom data handed to an integrand; an undecided integrand names the atoms
// that block it so only their variables get subdivided.
struct AtomCtx {
    const std::vector<AtomVal>& v;
    const std::vector<AtomVal>& f;
    const std::vector<std::pair<int, int>>& f_index;
    std::vector<int> blocking;

    void need(int i) { blocking.push_back(i); }
    void need_f(int i) {
        blocking.push_back(f_index[i].first);
        blocking.push_back(f_index[i].second);
    }
};

struct Integrand {
    int nvars = 1;
    long p = 3;
    std::vector<MPoly> atoms;
    std::vector<std::pair<int, int>> f_atoms;  // indices into atoms forming A + B*pi
    std::function<std::optional<Graded>(AtomCtx&)> eval;
    int depth_cap = 40;
};

// Ball prod_i (center_i + p^rad_i O).
struct Box {
    std::vector<Rational> center;
    std::vector<long> rad;
};

Graded integrate_boxes(const Integrand& ig, const std::vector<Box>& boxes);

using GradedRatX = std::map<int, RatX>;
LogQVal at_s0(const GradedRatX& g);
std::string to_string(const GradedRatX& g);

struct ShellResult {
    GradedRatX value;
    int shells_used = 0;
};

struct ShellProblem {
    Integrand integrand;
    std::vector<Box> boxes;
};
using ShellFn = std::function<ShellProblem(long k)>;

// Sum over shells k = k_start + dir*i, i >= 0, closing an eventually
// polynomial-times-geometric tail exactly.
ShellResult shell_integrate(const ShellFn& f, long k_start, int dir, int window);

// Both directions: k >= k_start and k < k_start.
ShellResult shell_integrate_both(const ShellFn& f, long k_start, int window);

// Shell decomposition of {z in F : v_F(z) = k} in coordinates z = a + c*pi.
std::vector<Box> f_shell_boxes(long k, long p);
// {t in Q_p : v(t) = k}.
std::vector<Box> f0_shell_boxes(long k, long p);

struct OrbitIntegral {
    RatX value;
    int shells_used = 0;
};

// Orbital integral of the characteristic function of the integral lattice
// over H_0 in Iwasawa coordinates. With s_twist the integrand carries |z zbar|^s.
OrbitIntegral iwasawa_orbit_u0(const Mat3F& y, bool s_twist = false, int window = 30);

struct XiResult {
    LogQVal xi;
    LogQVal phi;
    int shells_used = 0;
};

// The integral Xi(x) and the derived Phi(x), for x rs on side 1.
XiResult xi_integral(const BPoint& x, int window = 30);
// Contribution to Xi(x) of the shell v(t) = k.
LogQVal xi_shell(const BPoint& x, long k);

}  // namespace atlas
