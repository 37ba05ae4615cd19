#pragma once

// Numerical checks of the integral/differential identities. Every check
// returns a CheckReport with the measured residuals and the tolerance it was
// held to; none of them throws on a failed comparison.

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qint/integrate.hpp"
#include "qint/path.hpp"
#include "qint/slice.hpp"

namespace qint {

/// All verification thresholds in one place.
struct Tolerances {
    double ftc_forward = 1e-3;        ///< |value - ref| / max(1, |ref|) at the largest N
    double ftc_inverse = 1e-3;        ///< |G(x+d) - G(x) - DF(x)[d]|
    double inverse_slope = 0.3;       ///< allowed |slope - 2| of the inverse residual in |d|
    double by_parts = 2e-3;
    double antiderivative = 1e-3;     ///< relative, as ftc_forward
    double mutual_oracle = 2e-3;      ///< |staircase - slice quadrature|
    double closed_loop = 2e-3;
    double path_independence = 2e-3;
    double winding = 1e-2;            ///< scaled by max(1, |turns|)
    double identity = 1e-10;          ///< exact algebraic identities, relative
    double exact = 1e-12;             ///< "zero error" for F = x
    double min_order = 0.9;           ///< minimum fitted order of the left rule
    double order_gain = 0.5;          ///< midpoint order minus left order

    /// Overrides any subset of fields from a JSON object.
    static Tolerances from_json(const nlohmann::json& j);
    /// Every residual tolerance set to `tol` (order thresholds untouched).
    static Tolerances uniform(double tol);
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Reads QINT_TOL: either a JSON object of overrides or a single number
/// applied to every residual tolerance. Throws ParseError if malformed.
Tolerances tolerances_from_env();

struct CheckReport {
    std::string check;
    bool pass = false;
    std::vector<double> residuals;
    double tolerance = 0.0;
    nlohmann::json config = nlohmann::json::object();
};

nlohmann::json to_json(const CheckReport& report);

/// Convergence of the staircase to F(x_b) - F(x_a): passes when the error is
/// at rounding level throughout, or decays monotonically to <= tol at the last
/// N (and, if min_order > 0, fits an order >= min_order).
CheckReport verify_ftc_forward(const AnalyticFunction& F, const Path& path, const std::vector<std::size_t>& steps,
                               double tol, double exact_tol = 1e-12, double min_order = 0.0,
                               const IntegrateOptions& options = {});

/// Differential of the integral function G(y) = integral from base to y,
/// incremented first along delta_par and then along delta_perp, compared with
/// DF(x)[delta].
CheckReport verify_ftc_inverse(const AnalyticFunction& F, const Quaternion& x, const Quaternion& delta,
                               std::size_t steps, double tol, const Quaternion& base = Quaternion{1.0, 1.0, 0.0, 0.0});

/// The inverse residual over |delta| = magnitudes (same direction) must scale
/// as |delta|^2.
CheckReport verify_ftc_inverse_scaling(const AnalyticFunction& F, const Quaternion& x, const Quaternion& direction,
                                       const std::vector<double>& magnitudes, std::size_t steps, double slope_tol,
                                       const Quaternion& base = Quaternion{1.0, 1.0, 0.0, 0.0});

/// |sum F DG + sum (DF) G - [F G]_a^b| on one shared left-node partition.
CheckReport verify_integration_by_parts(const AnalyticFunction& F, const AnalyticFunction& G, const Path& path,
                                        std::size_t steps, double tol);

/// Integrating Dh for h = antiderivative(f) must give h(x_b) - h(x_a).
CheckReport verify_antiderivative_map(const AnalyticFunction& f, const Path& path, std::size_t steps, double tol);

CheckReport verify_closed_loop(const AnalyticFunction& F, const Path& loop, std::size_t steps, double tol);

/// Every pair of paths (common endpoints) agrees, and each matches the closed form.
CheckReport verify_path_independence(const AnalyticFunction& F, const std::vector<Path>& paths, std::size_t steps,
                                     double tol);

/// Staircase against the slice quadrature.
CheckReport verify_mutual_oracle(const AnalyticFunction& F, const Path& path, std::size_t steps, double tol);

/// ln around the unit circle of the slice of u, `turns` times: 2*pi*turns*u.
CheckReport verify_winding(const Quaternion& u, double turns, std::size_t steps, double tol);

/// Monomial/symmetric-sum identity (n <= 6), Leibniz rule for random
/// polynomials of degree <= 4, delta split invariants and the perpendicular
/// quotient against the full conjugate-difference expression.
CheckReport verify_algebraic_identities(unsigned long long seed, std::size_t samples, double tol);

/// Fitted order of the midpoint rule exceeds the left rule by at least gain.
CheckReport verify_order_upgrade(const AnalyticFunction& F, const Path& path, const std::vector<std::size_t>& steps,
                                 double gain);

enum class Suite { standard, all };

/// {x, x^2, x^3, exp, sin, cos}
std::vector<AnalyticFunction> default_functions();
/// Three lines, one polyline, one slice circle.
std::vector<Path> default_paths();

std::vector<CheckReport> run_suite(Suite suite, const Tolerances& tol, unsigned threads = 1);

} // namespace qint
