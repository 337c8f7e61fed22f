#include "atlas/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace atlas {

json to_json(const Rational& x) { return {{"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}}; }

json to_json(const PadicScalar& x) {
    if (x.is_exact()) return to_json(x.exact_value());
    return {{"v", x.is_zero() ? x.abs_precision() : x.val()},
            {"digits", x.digits()},
            {"p", x.prime()},
            {"N", x.precision()}};
}

json to_json(const QuadElt& x) { return {{"a", to_json(x.a)}, {"b", to_json(x.b)}}; }

json to_json(const QuatElt& x) { return {{"x", to_json(x.x)}, {"y", to_json(x.y)}, {"eps", to_json(x.eps)}}; }

json to_json(const BPoint& x) {
    return {{"lambda", to_json(x.lambda)}, {"u", to_json(x.u)}, {"wtilde", to_json(x.wtilde)}};
}

json to_json(const LogQVal& x) {
    json terms = json::object();
    for (const auto& [k, c] : x.terms()) terms[std::to_string(k)] = to_json(c);
    return {{"logq_terms", terms}, {"text", x.str()}};
}

json to_json(const RatX& x) {
    auto poly = [](const Poly& p) {
        json a = json::array();
        for (const auto& c : p.coeffs()) a.push_back(to_json(c));
        return a;
    };
    return {{"num", poly(x.num())}, {"den", poly(x.den())}, {"text", x.str()}};
}

json to_json(const MLParams& ml) {
    json lp = is_inf(ml.lplus) ? json("inf") : json(ml.lplus);
    return {{"m", ml.m}, {"lminus", ml.lminus}, {"lplus", lp}};
}

json to_json(const VerifyReport& r) {
    json s = json::array();
    for (const auto& x : r.samples)
        s.push_back({{"x", to_json(x.x)}, {"ml", to_json(x.ml)}, {"case", x.l_case}, {"phi1", to_json(x.phi1)}});
    json out = {{"p", r.p},
                {"base_point", to_json(r.base)},
                {"case_tag", r.case_tag},
                {"constant", r.constant},
                {"passed", r.passed()},
                {"value", r.value ? to_json(*r.value) : json("varies")},
                {"notes", r.notes},
                {"samples", s}};
    if (r.expected) out["expected"] = to_json(*r.expected);
    if (!r.failure.empty()) out["failure"] = r.failure;
    return out;
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_object() && j.contains("num")) {
        auto part = [](const json& v) { return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long>()); };
        Rational r(Integer(part(j.at("num"))), Integer(j.contains("den") ? part(j.at("den")) : "1"));
        r.canonicalize();
        return r;
    }
    throw std::invalid_argument("expected a rational, got " + j.dump());
}

PadicScalar scalar_from_json(const json& j, long p) {
    if (j.is_object() && j.contains("digits")) {
        long q = j.value("p", p);
        long N = j.at("N").get<long>();
        long v = j.at("v").get<long>();
        if (N <= 0) return PadicScalar::capped_zero(v, q);
        Integer u = 0, pk = 1;
        for (int d : j.at("digits").get<std::vector<int>>()) {
            u += pk * d;
            pk *= q;
        }
        return PadicScalar::capped(v, u, N, q);
    }
    return PadicScalar(rational_from_json(j), p);
}

QuadElt quad_from_json(const json& j, long p) {
    if (!j.is_object()) return {scalar_from_json(j, p), PadicScalar(0L, p)};
    return {scalar_from_json(j.value("a", json(0)), p), scalar_from_json(j.value("b", json(0)), p)};
}

QuatElt quat_from_json(const json& j, long p, const Rational& eps) {
    Rational e = j.contains("eps") ? rational_from_json(j.at("eps")) : eps;
    return {quad_from_json(j.value("x", json(0)), p), quad_from_json(j.value("y", json(0)), p), e};
}

BPoint bpoint_from_json(const json& j, long p) {
    return {scalar_from_json(j.at("lambda"), p), scalar_from_json(j.at("u"), p), scalar_from_json(j.at("wtilde"), p)};
}

VerifyReport report_from_json(const json& j) {
    VerifyReport r;
    r.p = j.at("p").get<long>();
    r.base = bpoint_from_json(j.at("base_point"), r.p);
    r.case_tag = j.at("case_tag").get<std::string>();
    r.constant = j.at("constant").get<bool>();
    r.notes = j.value("notes", std::vector<std::string>{});
    r.failure = j.value("failure", std::string());
    auto logq = [](const json& v) {
        LogQVal l;
        for (const auto& [k, c] : v.at("logq_terms").items()) l.set(std::stoi(k), rational_from_json(c));
        return l;
    };
    if (j.at("value").is_object()) r.value = logq(j.at("value"));
    if (j.contains("expected")) r.expected = logq(j.at("expected"));
    for (const auto& s : j.at("samples")) {
        VerifySample v;
        v.x = bpoint_from_json(s.at("x"), r.p);
        v.ml.m = s.at("ml").at("m").get<long>();
        v.ml.lminus = s.at("ml").at("lminus").get<long>();
        const json& lp = s.at("ml").at("lplus");
        v.ml.lplus = lp.is_string() ? kInfVal : lp.get<long>();
        v.l_case = s.at("case").get<std::string>();
        v.phi1 = logq(s.at("phi1"));
        r.samples.push_back(v);
    }
    return r;
}

AnyElement element_from_json(const json& j, long p) {
    AnyElement e;
    std::string sp = j.at("space").get<std::string>();
    Rational eps = j.contains("eps") ? rational_from_json(j.at("eps")) : default_eps(p);
    if (sp == "s_red") {
        SRedElt y;
        const json& z = j.at("z");
        if (z.size() != 3) throw std::invalid_argument("z must be 3x3");
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) y.z[r][c] = scalar_from_json(z.at(r).at(c), p);
        e.space = Space::s_red;
        e.s = y;
    } else if (sp == "u0_red") {
        U0RedElt y{scalar_from_json(j.at("a1"), p), scalar_from_json(j.at("a2"), p), scalar_from_json(j.at("a3"), p),
                   quad_from_json(j.at("b1"), p), quad_from_json(j.at("b2"), p)};
        e.space = Space::u0_red;
        e.u0 = y;
    } else if (sp == "u1_red") {
        e.space = Space::u1_red;
        e.u1 = U1RedElt{quat_from_json(j.at("alpha"), p, eps), quat_from_json(j.at("b"), p, eps)};
    } else {
        throw std::invalid_argument("unknown space " + sp);
    }
    return e;
}

json to_json(const AnyElement& e) {
    json j = {{"space", to_string(e.space)}};
    if (e.s) {
        json z = json::array();
        for (const auto& row : e.s->z) {
            json r = json::array();
            for (const auto& v : row) r.push_back(to_json(v));
            z.push_back(r);
        }
        j["z"] = z;
    }
    if (e.u0) {
        j["a1"] = to_json(e.u0->a1);
        j["a2"] = to_json(e.u0->a2);
        j["a3"] = to_json(e.u0->a3);
        j["b1"] = to_json(e.u0->b1);
        j["b2"] = to_json(e.u0->b2);
    }
    if (e.u1) {
        j["alpha"] = to_json(e.u1->alpha);
        j["b"] = to_json(e.u1->b);
    }
    return j;
}

BPoint invariants(const AnyElement& e) {
    if (e.s) return invariants(*e.s);
    if (e.u0) return invariants(*e.u0);
    return invariants(*e.u1);
}

std::string report_csv(const std::vector<VerifyReport>& rs) {
    std::ostringstream os;
    os << "p,base,case,m,lminus,lplus,l_case,phi1,constant\n";
    for (const auto& r : rs)
        for (const auto& s : r.samples)
            os << r.p << ",\"" << r.base.str() << "\"," << r.case_tag << "," << s.ml.m << "," << s.ml.lminus << ","
               << (is_inf(s.ml.lplus) ? std::string("inf") : std::to_string(s.ml.lplus)) << "," << s.l_case << ","
               << s.phi1.str() << "," << (r.constant ? "true" : "false") << "\n";
    return os.str();
}

std::string report_text(const std::vector<VerifyReport>& rs) {
    std::ostringstream os;
    for (const auto& r : rs) {
        os << (r.passed() ? "PASS" : "FAIL") << "  p=" << r.p << "  x0=" << r.base.str() << "  case " << r.case_tag
           << "  samples " << r.samples.size() << "  phi1 = " << (r.value ? r.value->str() : "varies");
        if (!r.base.is_zero()) os << " + 2*omega*C(x0)";
        if (!r.failure.empty()) os << "  (" << r.failure << ")";
        os << "\n";
    }
    return os.str();
}

}  // namespace atlas
