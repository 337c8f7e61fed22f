#include "atlas/integrator.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace atlas {

MPoly MPoly::constant(int nvars, const Rational& c) {
    MPoly r(nvars);
    r.add_term(Exp(nvars, 0), c);
    return r;
}

MPoly MPoly::var(int nvars, int i) {
    MPoly r(nvars);
    Exp e(nvars, 0);
    e[i] = 1;
    r.add_term(e, 1);
    return r;
}

void MPoly::add_term(const Exp& e, const Rational& c) {
    if (c == 0) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) t_.erase(it);
}

Rational MPoly::constant_term() const {
    auto it = t_.find(Exp(n_, 0));
    return it == t_.end() ? Rational(0) : it->second;
}

bool MPoly::depends_on(int i) const {
    for (const auto& [e, c] : t_)
        if (e[i] > 0) return true;
    return false;
}

MPoly MPoly::shift(int i, const Rational& c, const Rational& s) const {
    MPoly r(n_);
    for (const auto& [e, coef] : t_) {
        int n = e[i];
        if (n == 0) {
            r.add_term(e, coef);
            continue;
        }
        // (c + s y)^n = sum_m C(n,m) c^(n-m) s^m y^m
        Integer binom = 1;
        for (int m = 0; m <= n; ++m) {
            Exp f = e;
            f[i] = m;
            Rational term = coef * Rational(binom);
            for (int k = 0; k < n - m; ++k) term *= c;
            for (int k = 0; k < m; ++k) term *= s;
            r.add_term(f, term);
            binom = binom * (n - m) / (m + 1);
        }
    }
    return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    r.n_ = std::max(a.n_, b.n_);
    for (const auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(std::max(a.n_, b.n_));
    for (const auto& [e1, c1] : a.t_)
        for (const auto& [e2, c2] : b.t_) {
            MPoly::Exp e(e1.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

MPoly operator*(const Rational& s, const MPoly& a) {
    MPoly r(a.n_);
    if (s == 0) return r;
    for (const auto& [e, c] : a.t_) r.t_.emplace(e, s * c);
    return r;
}

FPoly FPoly::mul(const FPoly& x, const FPoly& y, long p) {
    return {x.a * y.a + Rational(p) * (x.b * y.b), x.a * y.b + x.b * y.a};
}

std::optional<bool> val_ge(const AtomVal& a, long bound) {
    if (a.exact) return a.val >= bound;
    if (a.val >= bound) return true;
    return std::nullopt;
}

int eta_of(const AtomVal& a, long p) {
    if (!a.exact || is_inf(a.val)) throw std::logic_error("character of undetermined value");
    int s = legendre(Integer(a.residue), p);
    if (a.val % 2 != 0) s *= eta_minus_one(p);
    return s;
}

void add_into(Graded& acc, const Graded& g, const Rational& scale) {
    for (const auto& [k, c] : g) {
        Rational& slot = acc[k];
        slot += scale * c;
        if (slot == 0) acc.erase(k);
    }
}

namespace {

AtomVal atom_val(const MPoly& P, long p) {
    AtomVal r;
    if (P.is_zero()) {
        r.exact = true;
        return r;
    }
    Rational c0 = P.constant_term();
    long v0 = c0 == 0 ? kInfVal : vp(c0, p);
    long m1 = kInfVal;
    for (const auto& [e, c] : P.terms()) {
        bool is_const = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        if (!is_const) m1 = std::min(m1, vp(c, p));
    }
    if (v0 < m1) {
        r.exact = true;
        r.val = v0;
        r.residue = mod_residue(unit_part(c0, p), Integer(p)).get_si();
    } else {
        r.val = std::min(v0, m1);
    }
    return r;
}

AtomVal f_atom_val(const AtomVal& A, const AtomVal& B) {
    AtomVal r;
    long a = is_inf(A.val) ? kInfVal : 2 * A.val;
    long b = is_inf(B.val) ? kInfVal : 2 * B.val + 1;
    if (A.exact && B.exact) {
        r.exact = true;
        r.val = std::min(a, b);
    } else if (A.exact && a < b) {
        r.exact = true;
        r.val = a;
    } else if (B.exact && b < a) {
        r.exact = true;
        r.val = b;
    } else {
        r.val = std::min(a, b);
    }
    return r;
}

struct Walker {
    const Integrand& ig;
    Graded acc;

    void run(std::vector<MPoly>& polys, std::vector<long>& rad, int depth) {
        long p = ig.p;
        std::vector<AtomVal> vals(polys.size());
        for (size_t i = 0; i < polys.size(); ++i) vals[i] = atom_val(polys[i], p);
        std::vector<AtomVal> fvals(ig.f_atoms.size());
        for (size_t i = 0; i < ig.f_atoms.size(); ++i)
            fvals[i] = f_atom_val(vals[ig.f_atoms[i].first], vals[ig.f_atoms[i].second]);
        AtomCtx ctx{vals, fvals, ig.f_atoms, {}};
        if (auto g = ig.eval(ctx)) {
            long tot = 0;
            for (long r : rad) tot += r;
            add_into(acc, *g, qpow(p, -tot));
            return;
        }
        if (depth >= ig.depth_cap) throw std::runtime_error("conductor too small: depth cap reached");
        // split a variable occurring in a minimal-valuation term of a blocking atom
        int split = -1;
        for (int a : ctx.blocking) {
            if (vals[a].exact) continue;
            for (const auto& [e, c] : polys[a].terms()) {
                if (vp(c, p) != vals[a].val) continue;
                for (int i = 0; i < ig.nvars; ++i)
                    if (e[i] > 0 && (split < 0 || rad[i] < rad[split])) split = i;
            }
        }
        if (split < 0) throw std::logic_error("integrand undecided on exact data");
        rad[split] += 1;
        for (long j = 0; j < p; ++j) {
            std::vector<MPoly> child(polys.size());
            for (size_t a = 0; a < polys.size(); ++a) child[a] = polys[a].shift(split, Rational(j), Rational(p));
            run(child, rad, depth + 1);
        }
        rad[split] -= 1;
    }
};

}  // namespace

Graded integrate_boxes(const Integrand& ig, const std::vector<Box>& boxes) {
    Walker w{ig, {}};
    for (const Box& b : boxes) {
        std::vector<MPoly> polys = ig.atoms;
        for (auto& P : polys)
            for (int i = 0; i < ig.nvars; ++i) P = P.shift(i, b.center[i], qpow(ig.p, b.rad[i]));
        std::vector<long> rad = b.rad;
        w.run(polys, rad, 0);
    }
    return w.acc;
}

LogQVal at_s0(const GradedRatX& g) {
    LogQVal out;
    for (const auto& [k, f] : g) out = out + LogQVal(value_s0(f)).shift(k);
    return out;
}

std::string to_string(const GradedRatX& g) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, f] : g) {
        if (!first) os << " + ";
        first = false;
        os << "(" << f.str() << ")";
        if (k != 0) os << "*logq^" << k;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

constexpr int kFitLen = 8;
constexpr int kMaxDeg = 4;

RatX graded_monomials(const Graded& g, int grade) {
    RatX r;
    for (const auto& [k, c] : g)
        if (k.first == grade) r = r + RatX::monomial(c, static_cast<int>(k.second));
    return r;
}

// sum_{j>=0} b(j) Y^j for a polynomial b given by forward differences at 0.
RatX newton_series(const std::vector<Rational>& D) {
    RatX out;
    Poly omy({Rational(1), Rational(-1)});
    for (size_t m = 0; m < D.size(); ++m) {
        if (D[m] == 0) continue;
        Poly den = Poly::constant(1);
        for (size_t i = 0; i <= m; ++i) den = den * omy;
        out = out + RatX(Poly::monomial(D[m], static_cast<int>(m)), den);
    }
    return out;
}

std::optional<std::vector<Rational>> fit_poly_geom(const std::vector<Rational>& seq, const Rational& r) {
    std::vector<Rational> b(seq.size());
    Rational rj = 1;
    for (size_t j = 0; j < seq.size(); ++j) {
        b[j] = seq[j] / rj;
        rj *= r;
    }
    std::vector<Rational> D;
    std::vector<Rational> cur = b;
    for (int m = 0; m <= kMaxDeg + 1; ++m) {
        D.push_back(cur[0]);
        std::vector<Rational> nxt;
        for (size_t j = 0; j + 1 < cur.size(); ++j) nxt.push_back(cur[j + 1] - cur[j]);
        cur = nxt;
    }
    // cur now holds differences of order kMaxDeg + 2; order kMaxDeg + 1 must vanish
    std::vector<Rational> top = b;
    for (int m = 0; m <= kMaxDeg; ++m) {
        std::vector<Rational> nxt;
        for (size_t j = 0; j + 1 < top.size(); ++j) nxt.push_back(top[j + 1] - top[j]);
        top = nxt;
    }
    for (const auto& x : top)
        if (x != 0) return std::nullopt;
    D.resize(kMaxDeg + 1);
    return D;
}

std::optional<GradedRatX> close_tail(const std::vector<Graded>& a, long p, int period) {
    int n = static_cast<int>(a.size());
    int span = period * kFitLen;
    if (n < span) return std::nullopt;
    int i0 = n - span;
    // drift of the X exponent per shell
    int best_d = 0;
    size_t best_size = SIZE_MAX;
    for (int d : {0, -1, 1, -2, 2, -3, 3, -4, 4}) {
        std::set<std::pair<int, long>> keys;
        for (int i = i0; i < n; ++i)
            for (const auto& [k, c] : a[i]) keys.insert({k.first, k.second - static_cast<long>(d) * i});
        if (keys.size() < best_size) best_size = keys.size(), best_d = d;
    }
    std::vector<Rational> cands;
    for (int m = -6; m <= 6; ++m) {
        cands.push_back(qpow(p, m));
        cands.push_back(-qpow(p, m));
    }
    GradedRatX out;
    for (int i = 0; i < i0; ++i) {
        std::set<int> grades;
        for (const auto& [k, c] : a[i]) grades.insert(k.first);
        for (int g : grades) out[g] = out[g] + graded_monomials(a[i], g);
    }
    for (int c = 0; c < period; ++c) {
        int ic = i0 + c;
        std::set<std::pair<int, long>> keys;
        for (int j = 0; j < kFitLen; ++j) {
            int i = ic + period * j;
            for (const auto& [k, v] : a[i]) keys.insert({k.first, k.second - static_cast<long>(best_d) * i});
        }
        for (const auto& key : keys) {
            std::vector<Rational> seq(kFitLen);
            bool allzero = true;
            for (int j = 0; j < kFitLen; ++j) {
                int i = ic + period * j;
                auto it = a[i].find({key.first, key.second + static_cast<long>(best_d) * i});
                seq[j] = it == a[i].end() ? Rational(0) : it->second;
                if (seq[j] != 0) allzero = false;
            }
            if (allzero) continue;
            bool done = false;
            for (const Rational& r : cands) {
                auto D = fit_poly_geom(seq, r);
                if (!D) continue;
                int e = period * best_d;
                RatX F = newton_series(*D);
                RatX tail;
                if (e == 0) {
                    if (abs(r) >= 1) return std::nullopt;
                    tail = RatX(F.eval(r));
                } else {
                    tail = F.substitute_monomial(r, e);
                }
                long x0 = key.second + static_cast<long>(best_d) * ic;
                out[key.first] = out[key.first] + tail * RatX::monomial(1, static_cast<int>(x0));
                done = true;
                break;
            }
            if (!done) return std::nullopt;
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

ShellResult shell_integrate(const ShellFn& f, long k_start, int dir, int window) {
    std::vector<Graded> shells;
    long p = 0;
    for (int i = 0; i < window; ++i) {
        ShellProblem sp = f(k_start + dir * i);
        p = sp.integrand.p;
        shells.push_back(integrate_boxes(sp.integrand, sp.boxes));
        for (int period : {1, 2}) {
            if (auto r = close_tail(shells, p, period)) return {*r, i + 1};
        }
    }
    throw std::runtime_error("no stabilization");
}

ShellResult shell_integrate_both(const ShellFn& f, long k_start, int window) {
    ShellResult up = shell_integrate(f, k_start, 1, window);
    ShellResult down = shell_integrate(f, k_start - 1, -1, window);
    for (const auto& [g, v] : down.value) up.value[g] = up.value[g] + v;
    for (auto it = up.value.begin(); it != up.value.end();)
        it = it->second.is_zero() ? up.value.erase(it) : std::next(it);
    up.shells_used += down.shells_used;
    return up;
}

std::vector<Box> f_shell_boxes(long k, long p) {
    std::vector<Box> out;
    long j = k >= 0 ? k / 2 : -((-k + 1) / 2);
    if (k - 2 * j == 0) {
        for (long u = 1; u < p; ++u) out.push_back({{Rational(u) * qpow(p, j), Rational(0)}, {j + 1, j}});
    } else {
        for (long u = 1; u < p; ++u) out.push_back({{Rational(0), Rational(u) * qpow(p, j)}, {j + 1, j + 1}});
    }
    return out;
}

std::vector<Box> f0_shell_boxes(long k, long p) {
    std::vector<Box> out;
    for (long u = 1; u < p; ++u) out.push_back({{Rational(u) * qpow(p, k)}, {k + 1}});
    return out;
}

namespace {

Rational exact_of(const PadicScalar& s) {
    if (!s.is_exact()) throw std::domain_error("exact representative required");
    return s.exact_value();
}

}  // namespace

OrbitIntegral iwasawa_orbit_u0(const Mat3F& y, bool s_twist, int window) {
    long p = y[0][0].prime();
    BPoint inv = invariants(y);
    bool nilpotent = inv.is_zero();
    int nv = nilpotent ? 2 : 3;
    // entries over F as polynomials in (a, c, t) with z = a + c*pi
    auto cst = [&](const QuadElt& q) {
        return FPoly{MPoly::constant(nv, exact_of(q.a)), MPoly::constant(nv, exact_of(q.b))};
    };
    MPoly zero(nv);
    MPoly A = MPoly::var(nv, 0), C = MPoly::var(nv, 1);
    MPoly T = nilpotent ? zero : MPoly::var(nv, 2);
    FPoly z{A, C}, zb{A, -C}, N{A * A - Rational(p) * (C * C), zero}, t{T, zero};
    auto mul = [p](const FPoly& a, const FPoly& b) { return FPoly::mul(a, b, p); };
    FPoly y11 = cst(y[0][0]), y12 = cst(y[0][1]), y13 = cst(y[0][2]);
    FPoly y21 = cst(y[1][0]), y22 = cst(y[1][1]), y23 = cst(y[1][2]);
    FPoly y31 = cst(y[2][0]), y32 = cst(y[2][1]), y33 = cst(y[2][2]);
    // entries of the conjugate, with the factors 1/N removed
    std::vector<std::pair<FPoly, int>> entries = {
        {y11 + mul(t, y21), 0},
        {mul(y12 + mul(t, y22 - y11) - mul(mul(t, t), y21), N), 0},
        {mul(y13 + mul(t, y23), z), 0},
        {y21, 2},
        {y22 - mul(t, y21), 0},
        {mul(y23, z), 2},
        {mul(y31, zb), 2},
        {mul(y32 - mul(t, y31), zb), 0},
        {y33, 0},
    };
    ShellFn f = [&](long k) {
        Integrand ig;
        ig.nvars = nv;
        ig.p = p;
        std::vector<long> shift;
        for (const auto& [e, s] : entries) {
            ig.atoms.push_back(e.a);
            ig.atoms.push_back(e.b);
            ig.f_atoms.push_back({static_cast<int>(ig.atoms.size()) - 2, static_cast<int>(ig.atoms.size()) - 1});
            shift.push_back(s * k);
        }
        ig.eval = [shift, k, s_twist](AtomCtx& cx) -> std::optional<Graded> {
            bool undecided = false;
            for (size_t i = 0; i < cx.f.size(); ++i) {
                auto ok = val_ge(cx.f[i], shift[i]);
                if (ok && !*ok) return Graded{};
                if (!ok) {
                    undecided = true;
                    cx.need_f(static_cast<int>(i));
                }
            }
            if (undecided) return std::nullopt;
            return Graded{{{0, s_twist ? k : 0}, Rational(1)}};
        };
        std::vector<Box> boxes = f_shell_boxes(k, p);
        if (!nilpotent)
            for (auto& b : boxes) {
                b.center.push_back(0);
                b.rad.push_back(-2);
            }
        return ShellProblem{ig, boxes};
    };
    ShellResult r = shell_integrate_both(f, 0, window);
    Rational zeta = Rational(p) / Rational(p - 1);
    RatX v = r.value.count(0) ? r.value.at(0) : RatX();
    return {RatX(zeta) * v, r.shells_used};
}

namespace {

Integrand xi_integrand(const BPoint& x, long k) {
    long p = x.prime();
    Rational u = exact_of(x.u), w = exact_of(x.wtilde), lam = exact_of(x.lambda);
    Rational D = lam * u * u + w * w * p;
    // Q(t) = t^2 + 2 w' t + Delta'/p with w' = wtilde/u^2, Delta' = Delta/u^4
    MPoly t = MPoly::var(1, 0);
    MPoly Q = t * t + Rational(2 * w / (u * u)) * t + MPoly::constant(1, D / (u * u * u * u * p));
    Integrand ig;
    ig.nvars = 1;
    ig.p = p;
    ig.atoms = {Q};
    ig.eval = [k, p](AtomCtx& cx) -> std::optional<Graded> {
        // log|Q/t| * eta(Q)/|Q| * log|t| on |Q/t| > 1
        const auto& v = cx.v;
        auto big = val_ge(v[0], k);
        if (big && *big) return Graded{};
        if (!v[0].exact) {
            cx.need(0);
            return std::nullopt;
        }
        long vq = v[0].val;
        Rational c = Rational((vq - k) * k) * eta_of(v[0], p) * qpow(p, vq);
        return Graded{{{2, 0}, c}};
    };
    return ig;
}

}  // namespace

LogQVal xi_shell(const BPoint& x, long k) {
    Graded g = integrate_boxes(xi_integrand(x, k), f0_shell_boxes(k, x.prime()));
    LogQVal out;
    for (const auto& [key, c] : g) out = out + LogQVal(c).shift(key.first);
    return out;
}

XiResult xi_integral(const BPoint& x, int window) {
    long p = x.prime();
    if (classify_side(x) != 1) throw std::domain_error("xi integral needs a side-1 point");
    ShellFn f = [&](long k) { return ShellProblem{xi_integrand(x, k), f0_shell_boxes(k, p)}; };
    ShellResult r = shell_integrate_both(f, 0, window);
    XiResult out;
    out.xi = at_s0(r.value);
    out.shells_used = r.shells_used;
    // Phi = -q |u|^{-1} (log q)^{-1} Xi
    Rational c = -Rational(p) * qpow(p, x.u.val());
    out.phi = (c * out.xi).shift(-1);
    return out;
}

}  // namespace atlas
