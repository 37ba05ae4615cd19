#include "qint/integrate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "qint/differential.hpp"
#include "qint/errors.hpp"

namespace qint {

namespace {

// Runs fn and tags any library error with the path parameter s.
template <class Fn>
auto at_parameter(double s, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (Error& e) {
        e.set_path_parameter(s);
        throw;
    }
}

void require_off_axis_unless_entire(const AnalyticFunction& F, const Quaternion& x, double s) {
    if (x.imag_norm() <= kAxisEpsilon && !F.is_entire()) {
        std::ostringstream msg;
        msg << "path touches the real axis at s = " << s << " and " << F.describe() << " is not entire";
        DegenerateSlice e{msg.str()};
        e.set_path_parameter(s);
        throw e;
    }
}

void require_steps(std::size_t steps) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
}

double scaled_error(const Quaternion& value, const Quaternion& reference) {
    return (value - reference).norm();
}

void attach_reference(IntegrationReport& report, const AnalyticFunction& F, const Path& path) {
    // Both endpoints must lie in the domain even when a rule never evaluates
    // F there.
    at_parameter(0.0, [&] { return eval_function(F, path.start()); });
    at_parameter(1.0, [&] { return eval_function(F, path.end()); });
    report.reference = closed_form_reference(F, path);
    if (report.reference) report.abs_error = scaled_error(report.value, *report.reference);
}

} // namespace

std::optional<Quaternion> closed_form_reference(const AnalyticFunction& F, const Path& path) {
    if (!F.is_single_valued()) return std::nullopt;
    const Quaternion xa = path.start();
    const Quaternion xb = path.end();
    if (xa == xb) return Quaternion{};
    return eval_function(F, xb) - eval_function(F, xa);
}

IntegrationReport integrate(const AnalyticFunction& F, const Path& path, std::size_t steps,
                            const IntegrateOptions& options) {
    require_steps(steps);
    const auto N = static_cast<double>(steps);

    const auto term = [&](std::size_t n) {
        const double s_prev = static_cast<double>(n) / N;
        const double s_next = static_cast<double>(n + 1) / N;
        const Quaternion x_prev = path.point(s_prev);
        const Quaternion x_next = path.point(s_next);
        const Quaternion delta = x_next - x_prev;
        const bool left = options.rule == Rule::left;
        const double s_eval = left ? s_prev : 0.5 * (s_prev + s_next);
        const Quaternion x_eval = left ? x_prev : 0.5 * (x_prev + x_next);
        require_off_axis_unless_entire(F, x_eval, s_eval);
        return at_parameter(s_eval, [&] { return differential(F, x_eval, delta); });
    };

    IntegrationReport report;
    report.steps = steps;
    report.value = detail::chunked_sum(0, steps, options.threads, term);
    attach_reference(report, F, path);
    return report;
}

IntegrationReport integrate_slice_quadrature(const AnalyticFunction& F, const Path& path, std::size_t steps,
                                             unsigned threads) {
    require_steps(steps);

    std::vector<double> edges{0.0};
    for (double b : path.breakpoints()) edges.push_back(b);
    edges.push_back(1.0);

    const auto value_at = [&](double s) {
        const Quaternion x = path.point(s);
        require_off_axis_unless_entire(F, x, s);
        return at_parameter(s, [&] { return eval_function(F, x); });
    };

    QuaternionAccumulator total;
    for (std::size_t piece = 0; piece + 1 < edges.size(); ++piece) {
        const double lo = edges[piece];
        const double hi = edges[piece + 1];
        const auto intervals =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(steps) * (hi - lo))));
        const double ds = (hi - lo) / static_cast<double>(intervals);
        // Difference step: well below the grid spacing, above the point where
        // cancellation dominates.
        const double h = std::min(1e-5, 0.25 * (hi - lo));

        const auto slope = [&](double s) {
            if (s - h >= lo && s + h <= hi) {
                return (value_at(s + h) - value_at(s - h)) / (2.0 * h);
            }
            if (s - h < lo) {
                return (-3.0 * value_at(s) + 4.0 * value_at(s + h) - value_at(s + 2.0 * h)) / (2.0 * h);
            }
            return (3.0 * value_at(s) - 4.0 * value_at(s - h) + value_at(s - 2.0 * h)) / (2.0 * h);
        };
        const auto term = [&](std::size_t j) {
            const double s = j == intervals ? hi : lo + static_cast<double>(j) * ds;
            const double weight = (j == 0 || j == intervals) ? 0.5 * ds : ds;
            return weight * slope(s);
        };
        total.add(detail::chunked_sum(0, intervals + 1, threads, term));
    }

    IntegrationReport report;
    report.steps = steps;
    report.value = total.value();
    attach_reference(report, F, path);
    return report;
}

double fit_order(std::span<const std::size_t> steps, std::span<const double> errors) {
    if (steps.size() != errors.size() || steps.size() < 2) {
        throw std::invalid_argument("fit_order needs matching lists of at least two points");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const double x = std::log(static_cast<double>(steps[i]));
        const double y = std::log(std::max(errors[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return -slope;
}

IntegrationReport convergence_study(const AnalyticFunction& F, const Path& path, std::span<const std::size_t> steps,
                                    const IntegrateOptions& options) {
    if (steps.size() < 3) throw std::invalid_argument("convergence study needs at least three step counts");
    for (std::size_t i = 1; i < steps.size(); ++i) {
        if (steps[i] <= steps[i - 1]) throw std::invalid_argument("step counts must be strictly ascending");
    }
    if (!F.is_single_valued()) {
        throw MissingReference("no single-valued closed form for " + F.describe() + "; use branch tracking");
    }

    IntegrationReport report;
    std::vector<double> errors;
    for (std::size_t N : steps) {
        IntegrationReport run = integrate(F, path, N, options);
        if (!run.abs_error) throw MissingReference("no closed-form reference for " + F.describe());
        report.rows.push_back({N, run.value, run.abs_error});
        errors.push_back(*run.abs_error);
        report.steps = N;
        report.value = run.value;
        report.reference = run.reference;
        report.abs_error = run.abs_error;
    }

    const double scale = std::max(1.0, report.reference->norm());
    report.exact = std::all_of(errors.begin(), errors.end(), [scale](double e) { return e <= 1e-12 * scale; });
    if (!report.exact) report.est_order = fit_order(steps, errors);
    return report;
}

IntegrationReport integrate_with_branch_tracking(const AnalyticFunction& F, const Path& path, std::size_t steps) {
    require_steps(steps);
    const auto* named = std::get_if<NamedFunction>(&F.repr());
    if (named == nullptr || named->kind != NamedKind::ln) {
        throw Unsupported("branch tracking is implemented for ln only, got " + F.describe());
    }
    const double scale = named->scale;
    const auto N = static_cast<double>(steps);

    std::vector<Quaternion> nodes(steps + 1);
    for (std::size_t n = 0; n <= steps; ++n) nodes[n] = path.point(static_cast<double>(n) / N);

    // The slice of the path: the first node clearly off the real axis fixes u.
    Quaternion u = Quaternion::i();
    for (const auto& x : nodes) {
        if (x.imag_norm() > 1e-9 * std::max(1.0, x.norm())) {
            u = UnitImaginary{x}.value();
            break;
        }
    }
    const UnitImaginary slice_u{u};

    const auto to_plane = [&](std::size_t n) {
        const Quaternion& x = nodes[n];
        const double s = static_cast<double>(n) / N;
        const Quaternion v = x.imag();
        const double r_signed = v.x1 * u.x1 + v.x2 * u.x2 + v.x3 * u.x3;
        if ((v - r_signed * u).norm() > 1e-9 * std::max(1.0, x.norm())) {
            SliceEscape e{"path leaves the slice of its starting point"};
            e.set_path_parameter(s);
            throw e;
        }
        const Complex z{x.w, r_signed};
        if (z == Complex{0.0, 0.0}) {
            DomainError e{"ln is undefined at 0"};
            e.set_path_parameter(s);
            throw e;
        }
        return z;
    };

    QuaternionAccumulator staircase;
    double unwrapped = 0.0;
    Complex z_prev = to_plane(0);
    const Complex z_start = z_prev;
    for (std::size_t n = 1; n <= steps; ++n) {
        const Complex z = to_plane(n);
        const double step_arg = std::arg(z / z_prev);
        if (std::abs(step_arg) > 0.5 * std::numbers::pi) {
            StepTooCoarse e{"argument changes by more than pi/2 in one step; increase steps"};
            e.set_path_parameter(static_cast<double>(n) / N);
            throw e;
        }
        unwrapped += step_arg;
        // ln'(x) = 1/x, and the chord lies in the slice.
        staircase.add(slice_u.lift(scale * (z - z_prev) / z_prev));
        z_prev = z;
    }

    IntegrationReport report;
    report.steps = steps;
    report.value = staircase.value();
    const Complex tracked{std::log(std::abs(z_prev)) - std::log(std::abs(z_start)), unwrapped};
    report.reference = slice_u.lift(scale * tracked);
    report.abs_error = (report.value - *report.reference).norm();
    return report;
}

} // namespace qint
