#include "atlas/integrator.hpp"
#include "atlas/json_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace atlas;

namespace {

struct Globals {
    long precision = kDefaultPrecision;
    int window = 30;
    std::string format = "json";
};

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<Rational> parse_list(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& t : split(s)) out.push_back(parse_rational(t));
    return out;
}

BPoint parse_bpoint(const std::string& s, long p) {
    auto v = parse_list(s);
    if (v.size() != 3) throw std::invalid_argument("expected lambda,u,wtilde: " + s);
    return BPoint::of(v[0], v[1], v[2], p);
}

// "a" or "a..b"
std::vector<long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) return {std::stol(s)};
    long a = std::stol(s.substr(0, dots)), b = std::stol(s.substr(dots + 2));
    std::vector<long> out;
    for (long i = a; i <= b; ++i) out.push_back(i);
    return out;
}

std::vector<long> parse_lplus(const std::string& s) {
    std::vector<long> out;
    for (const auto& t : split(s)) {
        if (t == "inf") {
            out.push_back(kInfVal);
            continue;
        }
        auto r = parse_range(t);
        bool ranged = r.size() > 1;
        for (long v : r)
            if (!ranged || v % 2) out.push_back(v);
    }
    return out;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void emit(const Globals& g, const json& j) {
    if (g.format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // flat key/value rendering for csv and text
    std::vector<std::pair<std::string, std::string>> kv;
    for (const auto& [k, v] : j.items()) {
        std::string s;
        if (v.is_object() && v.contains("text"))
            s = v["text"].get<std::string>();
        else if (v.is_object() && v.contains("num") && v.size() == 2)
            s = v["num"].get<std::string>() + (v["den"] == "1" ? "" : "/" + v["den"].get<std::string>());
        else
            s = v.is_string() ? v.get<std::string>() : v.dump();
        kv.emplace_back(k, s);
    }
    if (g.format == "csv") {
        for (size_t i = 0; i < kv.size(); ++i) std::cout << (i ? "," : "") << kv[i].first;
        std::cout << "\n";
        for (size_t i = 0; i < kv.size(); ++i) std::cout << (i ? "," : "") << "\"" << kv[i].second << "\"";
        std::cout << "\n";
    } else {
        for (const auto& [k, v] : kv) std::cout << k << ": " << v << "\n";
    }
}

int emit_reports(const Globals& g, const std::vector<VerifyReport>& rs) {
    bool ok = true;
    for (const auto& r : rs) ok = ok && r.passed();
    if (g.format == "csv") {
        std::cout << report_csv(rs);
    } else if (g.format == "text") {
        std::cout << report_text(rs);
    } else {
        json a = json::array();
        for (const auto& r : rs) a.push_back(to_json(r));
        std::cout << json{{"passed", ok}, {"reports", a}}.dump(2) << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"atlas: exact arithmetic-transfer computations for n = 3, F = Q_p(sqrt p)"};
    Globals g;
    app.add_option("--precision", g.precision, "p-adic digits for capped values")->check(CLI::PositiveNumber);
    app.add_option("--shell-window", g.window, "maximum shells before tail closure")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    int rc = 0;

    // verify
    auto* verify = app.add_subcommand("verify", "check the constancy of phi_1");
    verify->require_subcommand(1);
    auto* vzero = verify->add_subcommand("zero", "phi_1 near x0 = 0 against 4t(t-3)/(1-t)^2 log q");
    std::vector<long> vz_p{3};
    ZeroGrid grid;
    vzero->add_option("--p", vz_p, "primes")->check(CLI::Range(3L, 1000L));
    vzero->add_option("--m-max", grid.m_max);
    vzero->add_option("--l-max", grid.l_max);
    vzero->add_option("--lplus-max", grid.lplus_max);
    auto* vx0 = verify->add_subcommand("x0", "phi_1 differences near degenerate base points");
    std::string spec_file;
    bool library = false;
    std::vector<long> vx_p{3};
    int nsamples = 6;
    vx0->add_option("--spec", spec_file, "JSON file: {p, x0, samples} or {base_points: [...]}");
    vx0->add_flag("--library", library, "run the built-in base-point library");
    vx0->add_option("--p", vx_p, "primes for --library");
    vx0->add_option("--samples", nsamples)->check(CLI::PositiveNumber);

    // lint
    auto* lint = app.add_subcommand("lint", "intersection numbers l-Int");
    std::string lm_s = "0", lmi_s = "1", lpl_s = "inf";
    long lint_p = 3;
    bool use_oracle = false, use_closed = false, use_both = false;
    lint->add_option("--m", lm_s, "m or lo..hi");
    lint->add_option("--lminus", lmi_s, "l- or lo..hi");
    lint->add_option("--lplus", lpl_s, "comma list; ranges keep odd values; inf allowed");
    lint->add_option("--p", lint_p);
    lint->add_flag("--oracle", use_oracle, "Keating sum");
    lint->add_flag("--closed", use_closed, "closed form");
    lint->add_flag("--both", use_both, "both, with agreement check");

    // orb
    auto* orb = app.add_subcommand("orb", "orbital integrals on u_0 and the germ integral");
    std::string kind, params;
    long orb_p = 3;
    bool orb_oracle = false;
    orb->add_option("--kind", kind)->required()->check(CLI::IsMember({"nil-u0", "ss-u0-case0", "ss-u0-case1", "xi"}));
    orb->add_option("--params", params, "comma separated rationals")->required();
    orb->add_option("--p", orb_p);
    orb->add_flag("--oracle", orb_oracle, "also evaluate by shell integration");

    // germ
    auto* germ = app.add_subcommand("germ", "germ expansion of dOrb_1 near x0");
    std::string x0_s = "0,0,0", x_s, mu_s;
    long germ_p = 3;
    bool s0 = false, ds = false;
    germ->add_option("--x0", x0_s, "lambda0,u0,wtilde0");
    germ->add_option("--x", x_s, "lambda,u,wtilde")->required();
    germ->add_option("--p", germ_p);
    germ->add_option("--mu", mu_s, "n_mu family parameter");
    germ->add_flag("--s0", s0, "Gamma at s = 0 (x0 = 0)");
    germ->add_flag("--ds", ds, "derivatives at s = 0 (default)");

    // invariants
    auto* inv = app.add_subcommand("invariants", "invariants of an element");
    std::string elem_file;
    long inv_p = 3;
    inv->add_option("--elem", elem_file)->required();
    inv->add_option("--p", inv_p, "used unless the file sets p");

    // values
    auto* values = app.add_subcommand("values", "closed-form orbital integral values");
    std::string what, vparams;
    long val_p = 3;
    values->add_option("--what", what)->required()->check(CLI::IsMember({"nil-s", "nil-u0", "ss-u0", "forced-s"}));
    values->add_option("--params", vparams)->required();
    values->add_option("--p", val_p);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help and version requests exit 0; usage errors share the error exit code
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    set_working_precision(g.precision);

    try {
        if (*vzero) {
            std::vector<VerifyReport> rs;
            for (long p : vz_p) rs.push_back(verify_zero(p, grid));
            return emit_reports(g, rs);
        }
        if (*vx0) {
            std::vector<VerifyReport> rs;
            unsigned seed = env_seed();
            if (library) {
                for (long p : vx_p)
                    for (const auto& lp : x0_library(p)) rs.push_back(verify_x0(lp.x0, nsamples, seed));
            } else {
                if (spec_file.empty()) throw std::invalid_argument("verify x0 needs --spec or --library");
                json j = load_json(spec_file);
                json list = j.contains("base_points") ? j["base_points"] : json::array({j});
                for (const auto& e : list) {
                    long p = e.value("p", 3L);
                    rs.push_back(verify_x0(bpoint_from_json(e.at("x0"), p), e.value("samples", nsamples), seed));
                }
            }
            return emit_reports(g, rs);
        }
        if (*lint) {
            if (!use_oracle && !use_closed) use_both = true;
            json rows = json::array();
            bool agree = true;
            for (long m : parse_range(lm_s))
                for (long l : parse_range(lmi_s))
                    for (long lp : parse_lplus(lpl_s)) {
                        json row = {{"m", m}, {"lminus", l}, {"lplus", is_inf(lp) ? json("inf") : json(lp)}, {"p", lint_p}};
                        if (use_both) {
                            Rational a = l_int_keating(m, l, lp, lint_p), b = l_int_closed(m, l, lp, lint_p);
                            agree = agree && a == b;
                            row["value"] = to_json(b);
                            row["method"] = a == b ? "both" : "mismatch";
                            row["case"] = to_string(l_int_case(m, l, lp));
                        } else {
                            Rational v = use_oracle ? l_int_keating(m, l, lp, lint_p) : l_int_closed(m, l, lp, lint_p);
                            row["value"] = to_json(v);
                            row["method"] = use_oracle ? "oracle" : "closed";
                        }
                        rows.push_back(row);
                    }
            if (g.format == "json") {
                std::cout << rows.dump(2) << "\n";
            } else {
                const char* sep = g.format == "csv" ? "," : "  ";
                std::cout << "m" << sep << "lminus" << sep << "lplus" << sep << "p" << sep << "value" << sep << "method\n";
                for (const auto& r : rows)
                    std::cout << r["m"] << sep << r["lminus"] << sep << (r["lplus"].is_string() ? r["lplus"].get<std::string>() : r["lplus"].dump()) << sep << r["p"]
                              << sep << r["value"]["num"].get<std::string>()
                              << (r["value"]["den"] == "1" ? "" : "/" + r["value"]["den"].get<std::string>()) << sep
                              << r["method"].get<std::string>() << "\n";
            }
            return agree ? 0 : 1;
        }
        if (*orb) {
            auto v = parse_list(params);
            long p = orb_p;
            json out;
            auto need = [&](size_t n) {
                if (v.size() != n) throw std::invalid_argument("--params expects " + std::to_string(n) + " values");
            };
            std::optional<RatX> oracle;
            int shells = 0;
            if (kind == "xi") {
                need(3);
                BPoint x = BPoint::of(v[0], v[1], v[2], p);
                LogQVal closed = phi_closed(x);
                out = {{"value", to_json(closed)}, {"method", "closed"}, {"shells_used", 0}};
                if (orb_oracle) {
                    XiResult r = xi_integral(x, g.window);
                    out["oracle_value"] = to_json(r.phi);
                    out["xi"] = to_json(r.xi);
                    out["shells_used"] = r.shells_used;
                    out["method"] = r.phi == closed ? "closed+oracle" : "mismatch";
                    if (r.phi != closed) rc = 1;
                }
                emit(g, out);
                return rc;
            }
            Rational closed;
            std::optional<Mat3F> rep;
            if (kind == "nil-u0") {
                need(1);
                PadicScalar b(v[0], p);
                closed = orb_u0_nil_family(b);
                rep = n_beta_u0(b);
            } else if (kind == "ss-u0-case0") {
                need(1);
                PadicScalar l(v[0], p);
                closed = orb_u0_ss_case0(l);
                rep = u0_case0_rep(l, PadicScalar(1L, p));
            } else {
                need(3);
                BPoint x0 = BPoint::of(v[0], v[1], v[2], p);
                closed = orb_u0_ss(x0);
                rep = u0_case1_rep(x0);
            }
            out = {{"value", to_json(closed)}, {"method", "closed"}, {"shells_used", 0}};
            if (orb_oracle) {
                if (!rep) throw std::domain_error("no exact representative for the oracle");
                OrbitIntegral r = iwasawa_orbit_u0(*rep, false, g.window);
                oracle = r.value;
                shells = r.shells_used;
                Rational ov = oracle->eval(1);
                out["oracle_value"] = to_json(ov);
                out["shells_used"] = shells;
                out["method"] = ov == closed ? "closed+oracle" : "mismatch";
                if (ov != closed) rc = 1;
            }
            emit(g, out);
            return rc;
        }
        if (*germ) {
            long p = germ_p;
            BPoint x0 = parse_bpoint(x0_s, p), x = parse_bpoint(x_s, p);
            std::optional<PadicScalar> mu;
            if (!mu_s.empty()) mu = PadicScalar(parse_rational(mu_s), p);
            json out = {{"x0", to_json(x0)}, {"x", to_json(x)}, {"case", to_string(degenerate_case(x0))},
                        {"side", classify_side(x)}};
            if (s0) {
                if (!x0.is_zero()) throw std::invalid_argument("--s0 is tabulated only around x0 = 0");
                json c = json::array();
                PadicScalar dp = x.delta() / PadicScalar(p, p);
                c.push_back({{"rep", "n0_minus"}, {"gamma_s0", eta(dp)}});
                c.push_back({{"rep", "n0_plus"}, {"gamma_s0", eta_minus_one(p)}});
                if (mu) {
                    GermCoeff gc = gamma_n_mu(x, *mu);
                    c.push_back({{"rep", "n_mu"}, {"gamma_s0", to_json(*gc.value_at_0)}, {"s_form", to_json(*gc.s_form)}});
                }
                out["contributions"] = c;
                emit(g, out);
                return 0;
            }
            json c = json::array();
            for (const OrbitRep& rep : orbit_reps(x0, Space::s_red)) {
                json e = {{"rep", rep.tag}};
                if (rep.family) {
                    if (mu) {
                        e["dgamma"] = to_json(dgamma_table(x0, rep, x, mu).value);
                        e["orb"] = to_json(forced_s_values(x0, rep, mu).value);
                    }
                    e["integrated"] = to_json(phi_closed(x));
                    c.push_back(e);
                    continue;
                }
                DGamma d = dgamma_table(x0, rep, x);
                ForcedValue f = forced_s_values(x0, rep);
                if (d.kind == DGamma::Kind::value) e["dgamma"] = to_json(d.value);
                else e["dgamma"] = d.kind == DGamma::Kind::unneeded ? "unneeded" : "excluded";
                if (f.kind == ForcedValue::Kind::value) e["orb"] = to_json(f.value);
                else e["orb"] = to_string(f.kind);
                if (d.kind == DGamma::Kind::value && f.kind == ForcedValue::Kind::value)
                    e["contribution"] = to_json(f.value * d.value);
                c.push_back(e);
            }
            out["contributions"] = c;
            Dorb1 d = dorb1(x0, x);
            out["dorb1"] = to_json(d.varying);
            if (!d.constant.empty()) out["constant"] = d.constant;
            out["phi1"] = to_json(phi1(x, x0));
            out["l_int"] = to_json(l_int(x));
            emit(g, out);
            return 0;
        }
        if (*inv) {
            json j = load_json(elem_file);
            long p = j.value("p", inv_p);
            AnyElement e = element_from_json(j, p);
            BPoint x = invariants(e);
            json out = {{"space", to_string(e.space)}, {"invariants", to_json(x)}, {"rs", x.is_rs()}};
            if (x.is_rs()) {
                out["side"] = classify_side(x);
                out["delta"] = to_json(x.delta());
                if (x.is_integral() && !x.u.is_zero()) out["ml"] = to_json(ml_params(x));
            }
            if (e.s && x.is_rs()) out["omega"] = omega(*e.s);
            emit(g, out);
            return 0;
        }
        if (*values) {
            long p = val_p;
            json out = {{"what", what}, {"p", p}};
            if (what == "nil-s") {
                if (vparams == "plus" || vparams == "minus") {
                    out["value"] = to_json(orb_nil_reg_s(vparams == "plus", p));
                } else {
                    out["value"] = to_json(orb_nil_family_s(PadicScalar(parse_rational(vparams), p)));
                }
            } else if (what == "nil-u0") {
                out["value"] = to_json(vparams == "zero" ? orb_u0_zero(p)
                                                         : orb_u0_nil_family(PadicScalar(parse_rational(vparams), p)));
            } else if (what == "ss-u0") {
                out["value"] = to_json(orb_u0_ss(parse_bpoint(vparams, p)));
            } else {
                BPoint x0 = parse_bpoint(vparams, p);
                json a = json::array();
                for (const OrbitRep& rep : orbit_reps(x0, Space::s_red)) {
                    if (rep.family) continue;
                    ForcedValue f = forced_s_values(x0, rep);
                    json e = {{"rep", rep.tag}, {"kind", to_string(f.kind)}};
                    if (f.kind == ForcedValue::Kind::value) e["value"] = to_json(f.value);
                    a.push_back(e);
                }
                out["case"] = to_string(degenerate_case(x0));
                out["values"] = a;
            }
            emit(g, out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
    return rc;
}
