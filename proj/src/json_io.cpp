#include "qint/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <regex>

#include "qint/errors.hpp"

namespace qint {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double number(const json& j, const char* field) {
    if (!j.is_number()) throw ParseError(std::string("'") + field + "' must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(std::string("'") + field + "' must be finite");
    return v;
}

const json& member(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

// Geometry problems surface as std::invalid_argument from the constructors.
template <class Fn>
auto rethrow_as_parse_error(Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    } catch (const DegenerateSlice& e) {
        throw ParseError(e.what());
    }
}

} // namespace

Quaternion quaternion_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw ParseError("quaternion must be an array of four numbers");
    return {number(j[0], "w"), number(j[1], "x1"), number(j[2], "x2"), number(j[3], "x3")};
}

json to_json(const Quaternion& q) { return json::array({q.w, q.x1, q.x2, q.x3}); }

AnalyticFunction function_from_json(const json& j) {
    const std::string kind = member(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
    if (kind == "series") {
        const json& c = member(j, "coeffs");
        if (!c.is_array()) throw ParseError("'coeffs' must be an array");
        std::vector<double> coeffs;
        for (const auto& v : c) coeffs.push_back(number(v, "coeffs"));
        double radius = std::numeric_limits<double>::infinity();
        if (j.contains("radius") && !j.at("radius").is_null()) {
            const json& r = j.at("radius");
            if (r.is_string() && (r == "inf" || r == "infinity")) {
                // infinite
            } else {
                radius = number(r, "radius");
            }
        }
        return rethrow_as_parse_error([&] { return AnalyticFunction::series(std::move(coeffs), radius); });
    }
    if (kind == "named") {
        const json& name = member(j, "name");
        if (!name.is_string()) throw ParseError("'name' must be a string");
        const NamedKind k = named_kind_from_string(name.get<std::string>());
        NamedFunction f{k, 0, 1.0};
        if (j.contains("scale")) f.scale = number(j.at("scale"), "scale");
        if (k == NamedKind::monomial) {
            const json& n = member(j, "n");
            if (!n.is_number_integer() || n.get<long long>() < 0) throw ParseError("'n' must be a non-negative integer");
            f.degree = n.get<unsigned>();
        }
        return AnalyticFunction{f};
    }
    throw ParseError("function 'kind' must be \"series\" or \"named\"");
}

json to_json(const AnalyticFunction& F) {
    return std::visit(overloaded{[](const PowerSeries& s) {
                                     json j{{"kind", "series"}, {"coeffs", s.coeffs()}};
                                     if (std::isfinite(s.radius())) j["radius"] = s.radius();
                                     return j;
                                 },
                                 [](const NamedFunction& f) {
                                     json j{{"kind", "named"}, {"name", to_string(f.kind)}};
                                     if (f.kind == NamedKind::monomial) j["n"] = f.degree;
                                     if (f.scale != 1.0) j["scale"] = f.scale;
                                     return j;
                                 }},
                      F.repr());
}

Path path_from_json(const json& j) {
    const std::string kind = member(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
    return rethrow_as_parse_error([&] {
        if (kind == "line") {
            return Path::line(quaternion_from_json(member(j, "a")), quaternion_from_json(member(j, "b")));
        }
        if (kind == "polyline") {
            const json& pts = member(j, "points");
            if (!pts.is_array()) throw ParseError("'points' must be an array");
            std::vector<Quaternion> points;
            for (const auto& p : pts) points.push_back(quaternion_from_json(p));
            return Path::polyline(std::move(points));
        }
        if (kind == "circle") {
            const Quaternion u = quaternion_from_json(member(j, "u"));
            if (u.w != 0.0) throw ParseError("circle 'u' must be purely imaginary");
            const double turns = j.contains("turns") ? number(j.at("turns"), "turns") : 1.0;
            return Path::circle(number(member(j, "center"), "center"), number(member(j, "radius"), "radius"), u,
                                turns);
        }
        if (kind == "arc") {
            return Path::arc(quaternion_from_json(member(j, "a")), quaternion_from_json(member(j, "via")),
                             quaternion_from_json(member(j, "b")));
        }
        throw ParseError("path 'kind' must be one of line, polyline, circle, arc");
    });
}

json to_json(const Path& path) {
    return std::visit(overloaded{[](const Line& l) { return json{{"kind", "line"}, {"a", to_json(l.a)}, {"b", to_json(l.b)}}; },
                                 [](const PolyLine& p) {
                                     json pts = json::array();
                                     for (const auto& q : p.points) pts.push_back(to_json(q));
                                     return json{{"kind", "polyline"}, {"points", pts}};
                                 },
                                 [](const SliceCircle& c) {
                                     return json{{"kind", "circle"},
                                                 {"center", c.center},
                                                 {"radius", c.radius},
                                                 {"u", to_json(c.u.value())},
                                                 {"turns", c.turns}};
                                 },
                                 [](const Arc& a) {
                                     return json{{"kind", "arc"}, {"a", to_json(a.a)}, {"via", to_json(a.via)}, {"b", to_json(a.b)}};
                                 }},
                      path.shape());
}

json to_json(const IntegrationReport& report) {
    json j{{"steps", report.steps}, {"value", to_json(report.value)}, {"exact", report.exact}};
    j["reference"] = report.reference ? to_json(*report.reference) : json(nullptr);
    j["abs_error"] = report.abs_error ? json(*report.abs_error) : json(nullptr);
    j["est_order"] = report.est_order ? json(*report.est_order) : json(nullptr);
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"steps", r.steps},
                        {"value", to_json(r.value)},
                        {"abs_error", r.abs_error ? json(*r.abs_error) : json(nullptr)}});
    }
    j["rows"] = rows;
    return j;
}

AnalyticFunction parse_function_spec(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && text[first] == '{') return function_from_json(parse_text(text));

    static const std::regex power{R"(\s*x\s*(\^\s*(\d+))?\s*)"};
    std::smatch m;
    if (std::regex_match(text, m, power)) {
        return AnalyticFunction::monomial(m[2].matched ? static_cast<unsigned>(std::stoul(m[2].str())) : 1u);
    }
    const NamedKind k = named_kind_from_string(text);
    if (k == NamedKind::monomial) throw ParseError("use x^n for monomials");
    return AnalyticFunction::named(k);
}

Path parse_path_spec(const std::string& text) { return path_from_json(parse_text(text)); }

Quaternion parse_quaternion(const std::string& text) { return quaternion_from_json(parse_text(text)); }

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_quaternion(const Quaternion& q) {
    return "[" + format_double(q.w) + "," + format_double(q.x1) + "," + format_double(q.x2) + "," +
           format_double(q.x3) + "]";
}

} // namespace qint
