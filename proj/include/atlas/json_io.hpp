#pragma once
#include "atlas/at_verify.hpp"

#include "json.hpp"

namespace atlas {

using json = nlohmann::json;

json to_json(const Rational& x);
json to_json(const PadicScalar& x);
json to_json(const QuadElt& x);
json to_json(const QuatElt& x);
json to_json(const BPoint& x);
json to_json(const LogQVal& x);
json to_json(const RatX& x);
json to_json(const MLParams& ml);
json to_json(const VerifyReport& r);

// Accepts {"num","den"}, "a/b" strings and integers.
Rational rational_from_json(const json& j);
// Accepts the capped encoding {"v","digits","p","N"} or any rational form.
PadicScalar scalar_from_json(const json& j, long p);
QuadElt quad_from_json(const json& j, long p);
QuatElt quat_from_json(const json& j, long p, const Rational& eps);
BPoint bpoint_from_json(const json& j, long p);
VerifyReport report_from_json(const json& j);

// Element of s_red, u0_red or u1_red, tagged by "space".
struct AnyElement {
    Space space = Space::s_red;
    std::optional<SRedElt> s;
    std::optional<U0RedElt> u0;
    std::optional<U1RedElt> u1;
};
AnyElement element_from_json(const json& j, long p);
json to_json(const AnyElement& e);
BPoint invariants(const AnyElement& e);

std::string report_csv(const std::vector<VerifyReport>& rs);
std::string report_text(const std::vector<VerifyReport>& rs);

}  // namespace atlas
