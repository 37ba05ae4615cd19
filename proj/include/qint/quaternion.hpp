#pragma once

#include <algorithm>
#include <cmath>
#include <iosfwd>

namespace qint {

/// Real quaternion w + i*x1 + j*x2 + k*x3 in double precision.
///
/// Storage and serialization order is always (w, x1, x2, x3).
struct Quaternion {
    double w{0.0};
    double x1{0.0};
    double x2{0.0};
    double x3{0.0};

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x1_, double x2_, double x3_) : w{w_}, x1{x1_}, x2{x2_}, x3{x3_} {}
    // Implicit on purpose: reals embed into the quaternions.
    constexpr Quaternion(double real) : w{real} {}

    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }

    constexpr bool operator==(const Quaternion&) const = default;

    constexpr Quaternion operator-() const { return {-w, -x1, -x2, -x3}; }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w;
        x1 += o.x1;
        x2 += o.x2;
        x3 += o.x3;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w;
        x1 -= o.x1;
        x2 -= o.x2;
        x3 -= o.x3;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s;
        x1 *= s;
        x2 *= s;
        x3 *= s;
        return *this;
    }

    [[nodiscard]] constexpr Quaternion imag() const { return {0.0, x1, x2, x3}; }
    [[nodiscard]] constexpr double norm_sq() const { return w * w + x1 * x1 + x2 * x2 + x3 * x3; }
    [[nodiscard]] double norm() const { return std::hypot(std::hypot(w, x1), std::hypot(x2, x3)); }
    [[nodiscard]] double imag_norm() const { return std::hypot(x1, std::hypot(x2, x3)); }
    [[nodiscard]] constexpr double max_abs() const {
        return std::max({w < 0 ? -w : w, x1 < 0 ? -x1 : x1, x2 < 0 ? -x2 : x2, x3 < 0 ? -x3 : x3});
    }
    [[nodiscard]] bool is_finite() const {
        return std::isfinite(w) && std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3);
    }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

// Hamilton product
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {
        a.w * b.w - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
        a.w * b.x1 + a.x1 * b.w + a.x2 * b.x3 - a.x3 * b.x2,
        a.w * b.x2 - a.x1 * b.x3 + a.x2 * b.w + a.x3 * b.x1,
        a.w * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.w,
    };
}

constexpr Quaternion mul(const Quaternion& a, const Quaternion& b) { return a * b; }
constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x1, -q.x2, -q.x3}; }
inline double norm(const Quaternion& q) { return q.norm(); }

/// q^-1 = conj(q) / |q|^2. Throws ZeroDivisorError for q == 0.
Quaternion inverse(const Quaternion& q);

/// Integer power by repeated squaring; n >= 0.
Quaternion pow(const Quaternion& q, unsigned n);

/// True when max|a_i - b_i| <= max(tol, tol * max(|a|_max, |b|_max)).
bool approx_eq(const Quaternion& a, const Quaternion& b, double tol = 1e-10);

/// Max-norm distance max|a_i - b_i|.
inline double max_dist(const Quaternion& a, const Quaternion& b) { return (a - b).max_abs(); }

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// Neumaier-compensated running sum of quaternions, componentwise.
class QuaternionAccumulator {
public:
    void add(const Quaternion& q) {
        add_one(sum_.w, comp_.w, q.w);
        add_one(sum_.x1, comp_.x1, q.x1);
        add_one(sum_.x2, comp_.x2, q.x2);
        add_one(sum_.x3, comp_.x3, q.x3);
    }
    [[nodiscard]] Quaternion value() const { return sum_ + comp_; }

private:
    static void add_one(double& sum, double& comp, double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }

    Quaternion sum_{};
    Quaternion comp_{};
};

} // namespace qint
