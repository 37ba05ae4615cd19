#pragma once

#include "qint/quaternion.hpp"
#include "qint/slice.hpp"

namespace qint {

/// First-order differential of F at x applied to the increment delta:
///
///     DF(x)[delta] = F'(x) delta_par + [F(x) - F(x*)](x - x*)^-1 delta_perp
///
/// Real-linear in delta, and delta need not be small. On the real axis
/// (r <= kAxisEpsilon) both coefficients collapse to f'(xi0), giving
/// f'(xi0) * delta.
Quaternion differential(const AnalyticFunction& F, const Quaternion& x, const Quaternion& delta);

/// sum_{k=0}^{n} x^k delta x^(n-k) by direct multiplication. Equals the
/// differential of x^(n+1).
Quaternion sym_product_sum(const Quaternion& x, const Quaternion& delta, unsigned n);

} // namespace qint
