#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qint/quaternion.hpp"
#include "qint/slice.hpp"

namespace qint {

struct Line {
    Quaternion a;
    Quaternion b;
};

/// Waypoints joined by straight segments; each segment gets an equal share of
/// the parameter interval.
struct PolyLine {
    std::vector<Quaternion> points;
};

/// center + radius*(cos t + u sin t), t = 2*pi*turns*s. Stays in the slice of u.
struct SliceCircle {
    double center;
    double radius;
    UnitImaginary u;
    double turns;
};

/// Circular arc in R^4 from a through via to b.
struct Arc {
    Quaternion a;
    Quaternion via;
    Quaternion b;
};

/// Parameterized curve s in [0, 1] -> quaternion; continuous and piecewise
/// smooth. point(0) and point(1) return the endpoints exactly.
class Path {
public:
    using Shape = std::variant<Line, PolyLine, SliceCircle, Arc>;

    /// Validates the shape; throws std::invalid_argument on bad geometry
    /// (non-finite values, fewer than two waypoints, radius <= 0, collinear arc).
    explicit Path(Shape shape);

    static Path line(const Quaternion& a, const Quaternion& b) { return Path{Line{a, b}}; }
    static Path polyline(std::vector<Quaternion> points) { return Path{PolyLine{std::move(points)}}; }
    static Path circle(double center, double radius, const Quaternion& u, double turns) {
        return Path{SliceCircle{center, radius, UnitImaginary{u}, turns}};
    }
    static Path arc(const Quaternion& a, const Quaternion& via, const Quaternion& b) {
        return Path{Arc{a, via, b}};
    }

    [[nodiscard]] Quaternion point(double s) const;
    [[nodiscard]] Quaternion start() const { return point(0.0); }
    [[nodiscard]] Quaternion end() const { return point(1.0); }
    [[nodiscard]] bool is_closed() const { return start() == end(); }

    /// Parameter values in (0, 1) where the path has corners.
    [[nodiscard]] std::vector<double> breakpoints() const;

    [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
    [[nodiscard]] std::string kind() const;

private:
    struct ArcFrame {
        Quaternion center;
        Quaternion e1;
        Quaternion e2;
        double radius;
        double start_angle;
        double sweep;
    };

    Shape shape_;
    ArcFrame arc_{};
};

} // namespace qint
