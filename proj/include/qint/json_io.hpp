#pragma once

// JSON forms of the value types.
//
//   quaternion  [w, x1, x2, x3]
//   function    {"kind":"series","coeffs":[...],"radius":R}   (radius optional, default infinite)
//               {"kind":"named","name":"exp"}                  (also "n" for monomial, optional "scale")
//   path        {"kind":"line","a":Q,"b":Q}
//               {"kind":"polyline","points":[Q,...]}
//               {"kind":"circle","center":c,"radius":rho,"u":[0,u1,u2,u3],"turns":m}
//               {"kind":"arc","a":Q,"via":Q,"b":Q}
//
// Every parser throws ParseError on malformed input.

#include <string>

#include <nlohmann/json.hpp>

#include "qint/integrate.hpp"
#include "qint/path.hpp"
#include "qint/quaternion.hpp"
#include "qint/slice.hpp"

namespace qint {

using json = nlohmann::json;

Quaternion quaternion_from_json(const json& j);
json to_json(const Quaternion& q);

AnalyticFunction function_from_json(const json& j);
json to_json(const AnalyticFunction& F);

Path path_from_json(const json& j);
json to_json(const Path& path);

json to_json(const IntegrationReport& report);

/// JSON text, or a shorthand: a named kind ("exp", "ln", ...), "x", "x^n".
AnalyticFunction parse_function_spec(const std::string& text);
Path parse_path_spec(const std::string& text);
Quaternion parse_quaternion(const std::string& text);

/// %.17g, enough to round-trip a double.
std::string format_double(double v);
/// "[w,x1,x2,x3]" with 17 significant digits.
std::string format_quaternion(const Quaternion& q);

} // namespace qint
