#include "qint/path.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qint {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double dot(const Quaternion& a, const Quaternion& b) { return a.w * b.w + a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3; }

double wrap_positive(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    angle = std::fmod(angle, two_pi);
    return angle < 0.0 ? angle + two_pi : angle;
}

void require_finite(const Quaternion& q, const char* what) {
    if (!q.is_finite()) throw std::invalid_argument(std::string(what) + " must be finite");
}

} // namespace

Path::Path(Shape shape) : shape_{std::move(shape)} {
    std::visit(overloaded{
                   [](const Line& l) {
                       require_finite(l.a, "line endpoint");
                       require_finite(l.b, "line endpoint");
                   },
                   [](const PolyLine& p) {
                       if (p.points.size() < 2) throw std::invalid_argument("polyline needs at least two points");
                       for (const auto& q : p.points) require_finite(q, "polyline point");
                   },
                   [](const SliceCircle& c) {
                       if (!(c.radius > 0.0) || !std::isfinite(c.radius)) {
                           throw std::invalid_argument("circle radius must be positive and finite");
                       }
                       if (!std::isfinite(c.center) || !std::isfinite(c.turns)) {
                           throw std::invalid_argument("circle center and turns must be finite");
                       }
                   },
                   [this](const Arc& a) {
                       require_finite(a.a, "arc point");
                       require_finite(a.via, "arc point");
                       require_finite(a.b, "arc point");
                       const Quaternion to_via = a.via - a.a;
                       const Quaternion to_end = a.b - a.a;
                       const double v = to_via.norm();
                       if (v == 0.0) throw std::invalid_argument("arc points must be distinct");
                       const Quaternion e1 = to_via / v;
                       const double bx = dot(to_end, e1);
                       const Quaternion w = to_end - bx * e1;
                       const double by = w.norm();
                       if (by <= 1e-12 * std::max(1.0, to_end.norm())) {
                           throw std::invalid_argument("arc points are collinear");
                       }
                       const Quaternion e2 = w / by;
                       const double cx = 0.5 * v;
                       const double cy = (bx * bx + by * by - 2.0 * cx * bx) / (2.0 * by);
                       const double theta_a = std::atan2(-cy, -cx);
                       const double d_via = wrap_positive(std::atan2(-cy, v - cx) - theta_a);
                       const double d_end = wrap_positive(std::atan2(by - cy, bx - cx) - theta_a);
                       const double sweep = d_via < d_end ? d_end : d_end - 2.0 * std::numbers::pi;
                       arc_ = ArcFrame{a.a + cx * e1 + cy * e2, e1, e2, std::hypot(cx, cy), theta_a, sweep};
                   }},
               shape_);
}

Quaternion Path::point(double s) const {
    return std::visit(
        overloaded{
            [s](const Line& l) {
                if (s == 1.0) return l.b;
                return l.a + s * (l.b - l.a);
            },
            [s](const PolyLine& p) {
                const std::size_t segments = p.points.size() - 1;
                if (s >= 1.0) return p.points.back();
                if (s <= 0.0) return p.points.front();
                const double t = s * static_cast<double>(segments);
                const auto k = std::min(static_cast<std::size_t>(t), segments - 1);
                const double local = t - static_cast<double>(k);
                return p.points[k] + local * (p.points[k + 1] - p.points[k]);
            },
            [s](const SliceCircle& c) {
                // Integer-turn loops close exactly.
                const double param = (s == 1.0 && c.turns == std::round(c.turns)) ? 0.0 : s;
                const double theta = 2.0 * std::numbers::pi * c.turns * param;
                return Quaternion{c.center + c.radius * std::cos(theta)} + (c.radius * std::sin(theta)) * c.u.value();
            },
            [s, this](const Arc& a) {
                if (s == 0.0) return a.a;
                if (s == 1.0) return a.b;
                const double theta = arc_.start_angle + s * arc_.sweep;
                return arc_.center + arc_.radius * (std::cos(theta) * arc_.e1 + std::sin(theta) * arc_.e2);
            }},
        shape_);
}

std::vector<double> Path::breakpoints() const {
    std::vector<double> out;
    if (const auto* p = std::get_if<PolyLine>(&shape_)) {
        const std::size_t segments = p->points.size() - 1;
        for (std::size_t k = 1; k < segments; ++k) {
            out.push_back(static_cast<double>(k) / static_cast<double>(segments));
        }
    }
    return out;
}

std::string Path::kind() const {
    return std::visit(overloaded{[](const Line&) { return std::string{"line"}; },
                                 [](const PolyLine&) { return std::string{"polyline"}; },
                                 [](const SliceCircle&) { return std::string{"circle"}; },
                                 [](const Arc&) { return std::string{"arc"}; }},
                      shape_);
}

} // namespace qint
