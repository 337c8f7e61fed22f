#include "atlas/at_verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>

namespace atlas {

LogQVal phi1_zero_constant(long p) {
    Rational t(1, p);
    return LogQVal::logq(4 * t * (t - 3) / ((1 - t) * (1 - t)));
}

LogQVal phi1(const BPoint& x, const std::optional<BPoint>& x0) {
    long p = x.prime();
    if (classify_side(x) == 0) return {};
    BPoint base = x0 ? *x0 : BPoint{PadicScalar(0L, p), PadicScalar(0L, p), PadicScalar(0L, p)};
    Dorb1 d = dorb1(base, x);
    return Rational(2 * section_omega(base)) * d.varying + LogQVal::logq(l_int(x));
}

namespace {

VerifySample make_sample(const BPoint& x, const std::optional<BPoint>& x0) {
    VerifySample s;
    s.x = x;
    s.ml = ml_params(x);
    s.l_case = to_string(l_int_case(s.ml.m, s.ml.lminus, s.ml.lplus));
    s.phi1 = phi1(x, x0);
    return s;
}

void settle(VerifyReport& r) {
    r.constant = !r.samples.empty();
    for (const auto& s : r.samples)
        if (s.phi1 != r.samples.front().phi1) r.constant = false;
    if (r.constant) r.value = r.samples.front().phi1;
    if (!r.constant && r.failure.empty()) r.failure = "phi1 varies";
    if (r.constant && r.expected && *r.value != *r.expected) r.failure = "constant differs from expected value";
}

std::optional<PadicScalar> exact_sqrt(const PadicScalar& x) {
    if (!x.is_exact() || x.is_zero()) return std::nullopt;
    const Rational& q = x.exact_value();
    if (q < 0 || !mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
        return std::nullopt;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    return PadicScalar(Rational(n, d), x.prime());
}

}  // namespace

VerifyReport verify_zero(long p, const ZeroGrid& grid) {
    VerifyReport r;
    r.p = p;
    r.base = BPoint{PadicScalar(0L, p), PadicScalar(0L, p), PadicScalar(0L, p)};
    r.case_tag = "zero";
    r.expected = phi1_zero_constant(p);
    std::vector<long> lplus;
    for (long k = 1; k <= grid.lplus_max; k += 2) lplus.push_back(k);
    lplus.push_back(kInfVal);
    for (long m = 0; m <= grid.m_max; ++m)
        for (long lm = 1; lm <= grid.l_max; ++lm)
            for (long lp : lplus) {
                BPoint x;
                try {
                    x = make_bpoint_rs1(m, lm, lp, p);
                } catch (const std::domain_error&) {
                    continue;
                }
                r.samples.push_back(make_sample(x, std::nullopt));
                if (r.samples.back().phi1 != *r.expected && r.failure.empty())
                    r.failure = "mismatch at (" + std::to_string(m) + "," + std::to_string(lm) + "," +
                                (is_inf(lp) ? std::string("inf") : std::to_string(lp)) + ")";
            }
    r.notes.push_back("omega(sigma(x)) = 1");
    settle(r);
    return r;
}

std::vector<BPoint> sample_near(const BPoint& x0, int n, unsigned seed) {
    long p = x0.prime();
    const long depth = 4;
    long top = 0;
    for (const PadicScalar* c : {&x0.lambda, &x0.u, &x0.wtilde})
        if (!c->is_zero()) top = std::max(top, c->val());
    if (!x0.u.is_zero() && !x0.lambda.is_zero()) top = std::max(top, x0.lambda.val() + 2 * x0.u.val());
    long lo = top + depth;
    std::vector<long> units;
    for (long c = 1; c < p && c <= 4; ++c) units.push_back(c);

    auto scal = [p](long c, long e) { return PadicScalar(Rational(c) * qpow(p, e), p); };
    std::vector<BPoint> cand;
    if (x0.u.is_zero()) {
        for (long a = lo; a <= lo + 6; ++a)
            for (long c : units) {
                PadicScalar u = scal(c, a);
                cand.push_back({x0.lambda, u, PadicScalar(0L, p)});
                for (long b = lo; b <= lo + 8; ++b)
                    for (long d : units) cand.push_back({x0.lambda, u, scal(d, b)});
            }
        // -lambda0/p = alpha^2: wtilde near alpha*u cancels the leading term of Delta
        if (auto alpha = exact_sqrt(-x0.lambda / PadicScalar(p, p)))
            for (long a = lo; a <= lo + 6; ++a)
                for (long r = 1; r <= 8; ++r)
                    for (long d : units)
                        for (long sgn : {1L, -1L}) {
                            PadicScalar u = scal(1, a);
                            PadicScalar w = *alpha * u * (PadicScalar(1L, p) + scal(sgn * d, r));
                            cand.push_back({x0.lambda, u, w});
                        }
    } else {
        for (long a = lo; a <= lo + 8; ++a)
            for (long c : units) {
                PadicScalar lam = x0.lambda.is_zero() ? scal(c, a) : x0.lambda + scal(c, a);
                cand.push_back({lam, x0.u, x0.wtilde});
                for (long b = lo; b <= lo + 8; ++b)
                    for (long d : units) {
                        PadicScalar w = x0.wtilde.is_zero() ? scal(d, b) : x0.wtilde + scal(d, b);
                        cand.push_back({lam, x0.u, w});
                    }
            }
    }
    std::mt19937 rng(seed);
    std::shuffle(cand.begin(), cand.end(), rng);

    std::vector<BPoint> ok;
    for (const BPoint& x : cand) {
        if (!x.is_rs() || !in_neighborhood(x0, x, depth) || classify_side(x) != 1) continue;
        try {
            ml_params(x);
        } catch (const std::domain_error&) {
            continue;
        }
        ok.push_back(x);
    }
    // prefer new l- values, then new Case I/II branches, then new v(Delta)
    std::vector<BPoint> out;
    std::vector<char> used(ok.size(), 0);
    auto pick = [&](auto key) {
        std::set<long> seen;
        for (size_t i = 0; i < ok.size(); ++i)
            if (used[i]) seen.insert(key(ok[i]));
        for (size_t i = 0; i < ok.size() && static_cast<int>(out.size()) < n; ++i) {
            if (used[i] || seen.count(key(ok[i]))) continue;
            seen.insert(key(ok[i]));
            out.push_back(ok[i]);
            used[i] = 1;
        }
    };
    pick([](const BPoint& x) { return ml_params(x).lminus; });
    pick([](const BPoint& x) {
        MLParams ml = ml_params(x);
        return static_cast<long>(ml.lminus <= ml.lplus);
    });
    pick([](const BPoint& x) { return x.delta().val(); });
    pick([](const BPoint&) { return 0L; });
    for (size_t i = 0; i < ok.size() && static_cast<int>(out.size()) < n; ++i)
        if (!used[i]) {
            out.push_back(ok[i]);
            used[i] = 1;
        }
    return out;
}

VerifyReport verify_x0(const BPoint& x0, int samples, unsigned seed) {
    VerifyReport r;
    r.p = x0.prime();
    r.base = x0;
    DegenerateCase c = degenerate_case(x0);
    r.case_tag = to_string(c);
    if (c == DegenerateCase::zero) return verify_zero(r.p);
    if (c == DegenerateCase::case0i_split) {
        r.failure = "excluded case";
        return r;
    }
    for (const BPoint& x : sample_near(x0, samples, seed)) r.samples.push_back(make_sample(x, x0));
    if (static_cast<int>(r.samples.size()) < samples) r.failure = "neighborhood construction failure";
    r.notes.push_back("values modulo the constant 2*omega*C(x0)");
    r.notes.push_back("omega(section) = " + std::to_string(section_omega(x0)));
    settle(r);
    return r;
}

std::vector<LibraryPoint> x0_library(long p) {
    std::vector<LibraryPoint> lib;
    Rational ns = default_eps(p);
    auto pt = [p](const Rational& l, const Rational& u, const Rational& w) { return BPoint::of(l, u, w, p); };
    for (long v = 0; v <= 4; ++v)
        lib.push_back({pt(-ns * qpow(p, v), 0, 0), "0i v(lambda0)=" + std::to_string(v)});
    for (long v : {1L, 3L}) lib.push_back({pt(-qpow(p, v), 0, 0), "0ii v(lambda0)=" + std::to_string(v)});
    for (long k = 0; k <= 2; ++k) {
        // lambda0 = -p alpha^2, u0 = p^k, w0 = alpha u0
        for (long i : {k, k - 1}) {
            if (i < 0) continue;
            Rational a = qpow(p, i), u0 = qpow(p, k);
            std::string br = i >= k ? "|lambda0|<|u0|^2" : "|lambda0|>|u0|^2";
            lib.push_back({pt(-Rational(p) * a * a, u0, a * u0), "1 v(u0)=" + std::to_string(k) + " " + br});
        }
        lib.push_back({pt(0, qpow(p, k), 0), "1 v(u0)=" + std::to_string(k) + " lambda0=0"});
    }
    return lib;
}

unsigned env_seed() {
    const char* s = std::getenv("ATLAS_SEED");
    if (!s) return 0;
    return static_cast<unsigned>(std::strtoul(s, nullptr, 10));
}

}  // namespace atlas
