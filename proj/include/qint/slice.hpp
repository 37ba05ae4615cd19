#pragma once

// Slice geometry of a quaternion and slice-wise evaluation of real-analytic
// functions.
//
// Every non-real quaternion x = xi0 + r*u lies in the commutative plane spanned
// by 1 and its unit imaginary u. A function with real Taylor coefficients acts
// on that plane exactly as it acts on the complex number xi0 + i*r, so
// evaluation goes through std::complex and is mapped back with i -> u.

#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qint/quaternion.hpp"

namespace qint {

/// Imaginary radius at or below which a point counts as real (u undefined).
inline constexpr double kAxisEpsilon = 1e-12;

using Complex = std::complex<double>;

/// Purely imaginary quaternion of unit norm.
class UnitImaginary {
public:
    /// Drops the scalar part and renormalizes. Throws DegenerateSlice when the
    /// imaginary part has norm <= kAxisEpsilon.
    explicit UnitImaginary(const Quaternion& q);

    [[nodiscard]] const Quaternion& value() const noexcept { return value_; }
    operator const Quaternion&() const noexcept { return value_; }

    /// a + b*u
    [[nodiscard]] Quaternion lift(Complex z) const { return Quaternion{z.real()} + z.imag() * value_; }

private:
    Quaternion value_;
};

struct SlicePoint {
    double xi0;
    double r;
    UnitImaginary u;

    [[nodiscard]] Quaternion reconstruct() const { return Quaternion{xi0} + r * u.value(); }
};

struct DeltaSplit {
    Quaternion parallel;
    Quaternion perp;
};

/// Local representation F(x) = A + B*x with real A, B.
struct SliceForm {
    double A;
    double B;

    [[nodiscard]] Quaternion apply(const Quaternion& x) const { return Quaternion{A} + B * x; }
};

/// Truncated real power series sum c_n z^n, valid for |z| < radius.
class PowerSeries {
public:
    explicit PowerSeries(std::vector<double> coeffs,
                         double radius = std::numeric_limits<double>::infinity());

    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] double radius() const noexcept { return radius_; }
    [[nodiscard]] Complex value(Complex z) const;
    [[nodiscard]] Complex derivative(Complex z) const;

private:
    void check_domain(Complex z) const;

    std::vector<double> coeffs_;
    std::vector<double> dcoeffs_;
    std::vector<double> tail_max_;
    std::vector<double> dtail_max_;
    double radius_;
};

enum class NamedKind { exp, sin, cos, ln, reciprocal, log1m, monomial };

/// scale * g(z) for an elementary g. `reciprocal` is 1/(1-z), `log1m` is
/// ln(1-z), `monomial` is z^degree.
struct NamedFunction {
    NamedKind kind;
    unsigned degree = 0;
    double scale = 1.0;
};

/// Real-analytic function with real coefficients, evaluable on any complex
/// slice. Immutable after construction.
class AnalyticFunction {
public:
    using Repr = std::variant<PowerSeries, NamedFunction>;

    explicit AnalyticFunction(PowerSeries s) : repr_{std::move(s)} {}
    explicit AnalyticFunction(NamedFunction f);

    static AnalyticFunction series(std::vector<double> coeffs,
                                   double radius = std::numeric_limits<double>::infinity()) {
        return AnalyticFunction{PowerSeries{std::move(coeffs), radius}};
    }
    static AnalyticFunction named(NamedKind kind, double scale = 1.0) {
        return AnalyticFunction{NamedFunction{kind, 0, scale}};
    }
    static AnalyticFunction monomial(unsigned n, double scale = 1.0) {
        return AnalyticFunction{NamedFunction{NamedKind::monomial, n, scale}};
    }

    /// f(z); throws DomainError outside the domain. ln and log1m use the
    /// principal branch and reject the cut.
    [[nodiscard]] Complex value(Complex z) const;
    /// f'(z), same domain as value().
    [[nodiscard]] Complex derivative(Complex z) const;

    /// Analytic on the whole plane: point evaluation on the real axis has a
    /// unique limit for the differential.
    [[nodiscard]] bool is_entire() const;
    /// Single-valued on its domain, so closed-loop integrals vanish.
    [[nodiscard]] bool is_single_valued() const;

    [[nodiscard]] const Repr& repr() const noexcept { return repr_; }
    [[nodiscard]] std::string describe() const;

private:
    Repr repr_;
};

std::string to_string(NamedKind kind);
/// Throws ParseError for unknown names.
NamedKind named_kind_from_string(const std::string& name);

/// (xi0, r, u) with x = xi0 + r*u. Throws DegenerateSlice when r <= kAxisEpsilon.
SlicePoint slice_point(const Quaternion& x);

/// delta_par = (delta - u delta u)/2, delta_perp = (delta + u delta u)/2.
DeltaSplit decompose_delta(const Quaternion& x, const Quaternion& delta);

/// F(x) via the complex slice; real at real x.
Quaternion eval_function(const AnalyticFunction& F, const Quaternion& x);
/// F'(x) via the complex slice.
Quaternion eval_derivative(const AnalyticFunction& F, const Quaternion& x);

/// The real scalar [F(x) - F(x*)](x - x*)^-1 = b/r where f(xi0 + i r) = a + i b.
/// On the real axis this is the limit f'(xi0).
double perp_quotient(const AnalyticFunction& F, const Quaternion& x);

/// Throws DegenerateSlice on the real axis where B is not unique.
SliceForm slice_form(const AnalyticFunction& F, const Quaternion& x);

/// h with h' = F. Throws Unsupported when no closed form is registered.
AnalyticFunction antiderivative(const AnalyticFunction& F);

/// Coefficientwise product truncated at max_degree. Monomials are converted
/// to series; other named kinds throw Unsupported.
AnalyticFunction series_product(const AnalyticFunction& F, const AnalyticFunction& G, unsigned max_degree = 12);

/// Series form of a polynomial-like function (PowerSeries or monomial).
PowerSeries to_series(const AnalyticFunction& F);

} // namespace qint
