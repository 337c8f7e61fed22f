#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "atlas/json_io.hpp"

#include <algorithm>

using namespace atlas;

TEST_CASE("rationals") {
    json j = to_json(Rational(-3, 7));
    CHECK(j["num"] == "-3");
    CHECK(j["den"] == "7");
    CHECK(rational_from_json(j) == Rational(-3, 7));
    CHECK(rational_from_json(json("5/10")) == Rational(1, 2));
    CHECK(rational_from_json(json(4)) == 4);
}

TEST_CASE("scalars") {
    PadicScalar c = PadicScalar(Rational(1, 3), 5).to_capped(6);
    json j = to_json(c);
    CHECK(j["v"] == 0);
    CHECK(j["p"] == 5);
    CHECK(j["N"] == 6);
    CHECK(j["digits"].size() == 6);
    PadicScalar back = scalar_from_json(j, 5);
    CHECK(back.precision() == 6);
    CHECK(back.equals(c));
    PadicScalar e(Rational(2, 9), 3);
    CHECK(scalar_from_json(to_json(e), 3).exact_value() == Rational(2, 9));
}

TEST_CASE("field elements and base points") {
    long p = 5;
    Rational e = default_eps(p);
    QuadElt z = QuadElt::of(3, Rational(-1, 2), p);
    json jz = to_json(z);
    CHECK(jz.contains("a"));
    CHECK(jz.contains("b"));
    CHECK(quad_from_json(jz, p).equals(z));
    QuatElt q(z, QuadElt::of(1, 1, p), e);
    json jq = to_json(q);
    CHECK(jq.contains("eps"));
    CHECK(quat_from_json(jq, p, e).equals(q));
    BPoint x = BPoint::of(-5, 2, 1, p);
    json jx = to_json(x);
    for (const char* k : {"lambda", "u", "wtilde"}) CHECK(jx.contains(k));
    BPoint y = bpoint_from_json(jx, p);
    CHECK(y.str() == x.str());
}

TEST_CASE("elements") {
    long p = 3;
    json s = json::parse(R"({"space":"s_red","z":[[0,"-1/3",1],[1,0,0],[1,0,0]]})");
    AnyElement a = element_from_json(s, p);
    BPoint b = invariants(a);
    CHECK(b.lambda.exact_value() == 1);
    CHECK(b.u.exact_value() == 1);
    CHECK(b.wtilde.is_zero());
    CHECK(element_from_json(to_json(a), p).s.has_value());
    json u1 = json::parse(R"({"space":"u1_red","alpha":{"x":{"a":0,"b":0},"y":{"a":1,"b":0}},"b":{"x":{"a":1,"b":0},"y":{"a":0,"b":0}}})");
    AnyElement c = element_from_json(u1, p);
    REQUIRE(c.u1);
    CHECK(invariants(c).u.exact_value() == 2);
    json u0 = json::parse(R"({"space":"u0_red","a1":1,"a2":0,"a3":0,"b1":{"a":1,"b":0},"b2":{"a":0,"b":0}})");
    AnyElement d = element_from_json(u0, p);
    REQUIRE(d.u0);
    CHECK(invariants(d).str() == invariants(*d.u0).str());
    CHECK_THROWS(element_from_json(json::parse(R"({"space":"nowhere"})"), p));
}

TEST_CASE("reports") {
    VerifyReport r = verify_zero(3, ZeroGrid{1, 3, 3});
    json j = to_json(r);
    VerifyReport back = report_from_json(j);
    CHECK(back.passed() == r.passed());
    CHECK(back.samples.size() == r.samples.size());
    CHECK(*back.value == *r.value);
    CHECK(to_json(back) == j);
    std::string csv = report_csv({r});
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.samples.size()) + 1);
    CHECK(report_text({r}).find("PASS") != std::string::npos);
}
