#include "qint/quaternion.hpp"

#include <ostream>

#include "qint/errors.hpp"

namespace qint {

Quaternion inverse(const Quaternion& q) {
    const double n2 = q.norm_sq();
    if (n2 == 0.0) {
        throw ZeroDivisorError("inverse of the zero quaternion");
    }
    const Quaternion c = conj(q);
    return {c.w / n2, c.x1 / n2, c.x2 / n2, c.x3 / n2};
}

Quaternion pow(const Quaternion& q, unsigned n) {
    Quaternion result{1.0};
    Quaternion base = q;
    while (n != 0) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n != 0) base = base * base;
    }
    return result;
}

bool approx_eq(const Quaternion& a, const Quaternion& b, double tol) {
    const double scale = std::max(a.max_abs(), b.max_abs());
    return max_dist(a, b) <= std::max(tol, tol * scale);
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '[' << q.w << ", " << q.x1 << ", " << q.x2 << ", " << q.x3 << ']';
}

} // namespace qint
