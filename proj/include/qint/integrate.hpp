#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qint/path.hpp"
#include "qint/quaternion.hpp"
#include "qint/slice.hpp"

namespace qint {

/// Where DF is evaluated on each chord: the left node x_{n-1}, or the chord
/// midpoint (second order).
enum class Rule { left, midpoint };

struct IntegrateOptions {
    Rule rule = Rule::left;
    /// Segment contributions are summed in this many contiguous chunks.
    unsigned threads = 1;
};

struct StudyRow {
    std::size_t steps;
    Quaternion value;
    std::optional<double> abs_error;
};

struct IntegrationReport {
    std::size_t steps = 0;
    Quaternion value{};
    /// F(x_b) - F(x_a) when a closed form is available.
    std::optional<Quaternion> reference;
    std::optional<double> abs_error;
    std::vector<StudyRow> rows;
    /// Negated least-squares slope of log(error) against log(N).
    std::optional<double> est_order;
    /// Every error in the study was at rounding level; no order is reported.
    bool exact = false;
};

/// F(end) - F(start) for single-valued F, otherwise nullopt.
std::optional<Quaternion> closed_form_reference(const AnalyticFunction& F, const Path& path);

/// Staircase integral: sum over N uniform-s chords of DF(x_eval)[x_n - x_{n-1}].
///
/// Throws DomainError if an evaluation point leaves the domain of F, and
/// DegenerateSlice if one sits on the real axis while F is not entire. The
/// error carries the offending path parameter.
IntegrationReport integrate(const AnalyticFunction& F, const Path& path, std::size_t steps,
                            const IntegrateOptions& options = {});

/// Independent cross-check: trapezoidal integral over s of dF(x(s))/ds, the
/// derivative taken by finite differences of eval_function. Uses only point
/// evaluation, never the differential. Piecewise over polyline corners.
IntegrationReport integrate_slice_quadrature(const AnalyticFunction& F, const Path& path, std::size_t steps,
                                             unsigned threads = 1);

/// Runs integrate at each N of an ascending list (length >= 3) and fits the
/// convergence order. Throws MissingReference for multivalued F.
IntegrationReport convergence_study(const AnalyticFunction& F, const Path& path, std::span<const std::size_t> steps,
                                    const IntegrateOptions& options = {});

/// Staircase integral of DF for F = scale*ln along a path confined to one
/// slice, with the logarithm's branch followed continuously. The reference is
/// the unwrapped difference ln z(1) - ln z(0), which picks up 2*pi*m*u on a
/// loop of winding number m. Sequential by construction.
///
/// Throws SliceEscape, DomainError (z = 0), StepTooCoarse (argument change per
/// step above pi/2) and Unsupported for F other than ln.
IntegrationReport integrate_with_branch_tracking(const AnalyticFunction& F, const Path& path, std::size_t steps);

/// Negated least-squares slope of log(errors) against log(steps).
double fit_order(std::span<const std::size_t> steps, std::span<const double> errors);

} // namespace qint
