#include "qint/differential.hpp"

#include <vector>

namespace qint {

Quaternion differential(const AnalyticFunction& F, const Quaternion& x, const Quaternion& delta) {
    const double r = x.imag_norm();
    if (r <= kAxisEpsilon) {
        return F.derivative(Complex{x.w, 0.0}).real() * delta;
    }
    const UnitImaginary u{x};
    const Complex z{x.w, r};
    const Quaternion udu = u.value() * delta * u.value();
    const Quaternion par = 0.5 * (delta - udu);
    const Quaternion perp = 0.5 * (delta + udu);
    const Quaternion fprime = u.lift(F.derivative(z));
    const double quotient = F.value(z).imag() / r;
    return fprime * par + quotient * perp;
}

Quaternion sym_product_sum(const Quaternion& x, const Quaternion& delta, unsigned n) {
    std::vector<Quaternion> powers(n + 1);
    powers[0] = Quaternion{1.0};
    for (unsigned k = 1; k <= n; ++k) powers[k] = powers[k - 1] * x;
    Quaternion sum{};
    for (unsigned k = 0; k <= n; ++k) sum += powers[k] * delta * powers[n - k];
    return sum;
}

} // namespace qint
