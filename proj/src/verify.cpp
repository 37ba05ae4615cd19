#include "qint/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qint/differential.hpp"
#include "qint/errors.hpp"
#include "qint/json_io.hpp"

namespace qint {

namespace {

constexpr std::size_t kSuiteSteps = 10'000;

double relative(double err, const Quaternion& reference) { return err / std::max(1.0, reference.norm()); }

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::max(y[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

Quaternion integral_function(const AnalyticFunction& F, const Quaternion& base, const Quaternion& y,
                             std::size_t steps) {
    return integrate(F, Path::line(base, y), steps).value;
}

// Components uniform in [-scale, scale].
Quaternion random_quaternion(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> d{-scale, scale};
    return {d(rng), d(rng), d(rng), d(rng)};
}

Quaternion random_off_axis(std::mt19937_64& rng, double scale, double min_r) {
    for (;;) {
        const Quaternion q = random_quaternion(rng, scale);
        if (q.imag_norm() > min_r) return q;
    }
}

double rel_dist(const Quaternion& a, const Quaternion& b) {
    return max_dist(a, b) / std::max({1.0, a.max_abs(), b.max_abs()});
}

} // namespace

// ---------------------------------------------------------------------------

Tolerances Tolerances::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("tolerance overrides must be a JSON object");
    Tolerances t;
    const std::pair<const char*, double*> fields[] = {
        {"ftc_forward", &t.ftc_forward},
        {"ftc_inverse", &t.ftc_inverse},
        {"inverse_slope", &t.inverse_slope},
        {"by_parts", &t.by_parts},
        {"antiderivative", &t.antiderivative},
        {"mutual_oracle", &t.mutual_oracle},
        {"closed_loop", &t.closed_loop},
        {"path_independence", &t.path_independence},
        {"winding", &t.winding},
        {"identity", &t.identity},
        {"exact", &t.exact},
        {"min_order", &t.min_order},
        {"order_gain", &t.order_gain},
    };
    for (const auto& [key, value] : j.items()) {
        auto it = std::find_if(std::begin(fields), std::end(fields), [&](const auto& f) { return key == f.first; });
        if (it == std::end(fields)) throw ParseError("unknown tolerance '" + key + "'");
        if (!value.is_number()) throw ParseError("tolerance '" + key + "' must be a number");
        *it->second = value.get<double>();
    }
    return t;
}

Tolerances Tolerances::uniform(double tol) {
    Tolerances t;
    t.ftc_forward = t.ftc_inverse = t.inverse_slope = t.by_parts = t.antiderivative = t.mutual_oracle = tol;
    t.closed_loop = t.path_independence = t.winding = t.identity = t.exact = tol;
    return t;
}

nlohmann::json Tolerances::to_json() const {
    return {{"ftc_forward", ftc_forward},
            {"ftc_inverse", ftc_inverse},
            {"inverse_slope", inverse_slope},
            {"by_parts", by_parts},
            {"antiderivative", antiderivative},
            {"mutual_oracle", mutual_oracle},
            {"closed_loop", closed_loop},
            {"path_independence", path_independence},
            {"winding", winding},
            {"identity", identity},
            {"exact", exact},
            {"min_order", min_order},
            {"order_gain", order_gain}};
}

Tolerances tolerances_from_env() {
    const char* env = std::getenv("QINT_TOL");
    if (env == nullptr || *env == '\0') return {};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(env);
    } catch (const nlohmann::json::parse_error&) {
        throw ParseError(std::string("QINT_TOL is not valid JSON: ") + env);
    }
    if (j.is_number()) return Tolerances::uniform(j.get<double>());
    return Tolerances::from_json(j);
}

nlohmann::json to_json(const CheckReport& report) {
    return {{"check", report.check},
            {"pass", report.pass},
            {"residuals", report.residuals},
            {"tolerance", report.tolerance},
            {"config", report.config}};
}

// ---------------------------------------------------------------------------

CheckReport verify_ftc_forward(const AnalyticFunction& F, const Path& path, const std::vector<std::size_t>& steps,
                               double tol, double exact_tol, double min_order, const IntegrateOptions& options) {
    const IntegrationReport study = convergence_study(F, path, steps, options);
    CheckReport r{"ftc_forward", false, {}, tol};
    for (const auto& row : study.rows) r.residuals.push_back(relative(*row.abs_error, *study.reference));

    bool monotone = true;
    for (std::size_t i = 1; i < r.residuals.size(); ++i) monotone = monotone && r.residuals[i] <= r.residuals[i - 1];
    const bool exact = std::all_of(r.residuals.begin(), r.residuals.end(), [&](double e) { return e <= exact_tol; });
    const bool order_ok = min_order <= 0.0 || exact || (study.est_order && *study.est_order >= min_order);
    r.pass = exact || (monotone && r.residuals.back() <= tol && order_ok);

    r.config = {{"function", to_json(F)},
                {"path", to_json(path)},
                {"steps", steps},
                {"rule", options.rule == Rule::left ? "left" : "midpoint"},
                {"exact", exact},
                {"monotone", monotone},
                {"est_order", study.est_order ? nlohmann::json(*study.est_order) : nlohmann::json(nullptr)},
                {"min_order", min_order}};
    return r;
}

CheckReport verify_ftc_inverse(const AnalyticFunction& F, const Quaternion& x, const Quaternion& delta,
                               std::size_t steps, double tol, const Quaternion& base) {
    DeltaSplit split{delta, Quaternion{}};
    if (x.imag_norm() > kAxisEpsilon) split = decompose_delta(x, delta);

    const Quaternion g_x = integral_function(F, base, x, steps);
    const Quaternion g_par = integral_function(F, base, x + split.parallel, steps);
    const Quaternion g_full = integral_function(F, base, x + delta, steps);
    const Quaternion leg_par = g_par - g_x;
    const Quaternion leg_perp = g_full - g_par;

    const Quaternion expected = differential(F, x, delta);
    CheckReport r{"ftc_inverse", false, {}, tol};
    r.residuals = {(leg_par + leg_perp - expected).norm(), (leg_par - differential(F, x, split.parallel)).norm(),
                   (leg_perp - differential(F, x, split.perp)).norm()};
    r.pass = r.residuals.front() <= tol;
    r.config = {{"function", to_json(F)}, {"x", to_json(x)}, {"delta", to_json(delta)},
                {"base", to_json(base)},  {"steps", steps},   {"residual_labels", {"total", "parallel_leg", "perp_leg"}}};
    return r;
}

CheckReport verify_ftc_inverse_scaling(const AnalyticFunction& F, const Quaternion& x, const Quaternion& direction,
                                       const std::vector<double>& magnitudes, std::size_t steps, double slope_tol,
                                       const Quaternion& base) {
    if (magnitudes.size() < 2) throw std::invalid_argument("need at least two increment sizes");
    const Quaternion unit = direction / direction.norm();
    CheckReport r{"ftc_inverse_scaling", false, {}, slope_tol};
    for (double m : magnitudes) {
        r.residuals.push_back(verify_ftc_inverse(F, x, m * unit, steps, 0.0, base).residuals.front());
    }
    const double slope = loglog_slope(magnitudes, r.residuals);
    r.pass = std::abs(slope - 2.0) <= slope_tol;
    r.config = {{"function", to_json(F)}, {"x", to_json(x)},   {"direction", to_json(unit)},
                {"magnitudes", magnitudes}, {"steps", steps}, {"slope", slope}};
    return r;
}

CheckReport verify_integration_by_parts(const AnalyticFunction& F, const AnalyticFunction& G, const Path& path,
                                        std::size_t steps, double tol) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    const auto N = static_cast<double>(steps);
    QuaternionAccumulator f_dg;
    QuaternionAccumulator df_g;
    Quaternion x_prev = path.point(0.0);
    for (std::size_t n = 1; n <= steps; ++n) {
        const double s = static_cast<double>(n - 1) / N;
        const Quaternion x_next = path.point(static_cast<double>(n) / N);
        const Quaternion delta = x_next - x_prev;
        if (x_prev.imag_norm() <= kAxisEpsilon && !(F.is_entire() && G.is_entire())) {
            DegenerateSlice e{"by-parts partition touches the real axis"};
            e.set_path_parameter(s);
            throw e;
        }
        f_dg.add(eval_function(F, x_prev) * differential(G, x_prev, delta));
        df_g.add(differential(F, x_prev, delta) * eval_function(G, x_prev));
        x_prev = x_next;
    }
    const Quaternion xa = path.start();
    const Quaternion xb = path.end();
    const Quaternion boundary = eval_function(F, xb) * eval_function(G, xb) - eval_function(F, xa) * eval_function(G, xa);

    CheckReport r{"integration_by_parts", false, {}, tol};
    r.residuals = {(f_dg.value() + df_g.value() - boundary).norm()};
    r.pass = r.residuals.front() <= tol;
    r.config = {{"F", to_json(F)},
                {"G", to_json(G)},
                {"path", to_json(path)},
                {"steps", steps},
                {"boundary", to_json(boundary)}};
    return r;
}

CheckReport verify_antiderivative_map(const AnalyticFunction& f, const Path& path, std::size_t steps, double tol) {
    const AnalyticFunction h = antiderivative(f);
    const IntegrationReport run = integrate(h, path, steps);
    const Quaternion reference = eval_function(h, path.end()) - eval_function(h, path.start());
    CheckReport r{"antiderivative_map", false, {}, tol};
    r.residuals = {relative((run.value - reference).norm(), reference)};
    r.pass = r.residuals.front() <= tol;
    r.config = {{"f", to_json(f)},          {"h", to_json(h)},
                {"path", to_json(path)},    {"steps", steps},
                {"value", to_json(run.value)}, {"reference", to_json(reference)}};
    return r;
}

CheckReport verify_closed_loop(const AnalyticFunction& F, const Path& loop, std::size_t steps, double tol) {
    if (!loop.is_closed()) throw std::invalid_argument("closed-loop check needs a closed path");
    if (!F.is_single_valued()) throw MissingReference(F.describe() + " is not single-valued");
    const IntegrationReport run = integrate(F, loop, steps);
    CheckReport r{"closed_loop", false, {}, tol};
    r.residuals = {run.value.norm()};
    r.pass = r.residuals.front() <= tol;
    r.config = {{"function", to_json(F)}, {"path", to_json(loop)}, {"steps", steps}, {"value", to_json(run.value)}};
    return r;
}

CheckReport verify_path_independence(const AnalyticFunction& F, const std::vector<Path>& paths, std::size_t steps,
                                     double tol) {
    if (paths.size() < 2) throw std::invalid_argument("path independence needs at least two paths");
    for (const auto& p : paths) {
        if (!approx_eq(p.start(), paths.front().start(), 1e-14) || !approx_eq(p.end(), paths.front().end(), 1e-14)) {
            throw std::invalid_argument("paths must share endpoints");
        }
    }
    if (!F.is_single_valued()) throw MissingReference(F.describe() + " is not single-valued");
    const Quaternion reference = eval_function(F, paths.front().end()) - eval_function(F, paths.front().start());

    std::vector<Quaternion> values;
    nlohmann::json kinds = nlohmann::json::array();
    for (const auto& p : paths) {
        values.push_back(integrate(F, p, steps).value);
        kinds.push_back(to_json(p));
    }
    CheckReport r{"path_independence", false, {}, tol};
    for (std::size_t a = 0; a < values.size(); ++a) {
        for (std::size_t b = a + 1; b < values.size(); ++b) r.residuals.push_back((values[a] - values[b]).norm());
    }
    for (const auto& v : values) r.residuals.push_back((v - reference).norm());
    r.pass = std::all_of(r.residuals.begin(), r.residuals.end(), [tol](double e) { return e <= tol; });
    r.config = {{"function", to_json(F)}, {"paths", kinds}, {"steps", steps}, {"reference", to_json(reference)}};
    return r;
}

CheckReport verify_mutual_oracle(const AnalyticFunction& F, const Path& path, std::size_t steps, double tol) {
    const Quaternion staircase = integrate(F, path, steps).value;
    const Quaternion quadrature = integrate_slice_quadrature(F, path, steps).value;
    CheckReport r{"mutual_oracle", false, {}, tol};
    r.residuals = {(staircase - quadrature).norm()};
    r.pass = r.residuals.front() <= tol;
    r.config = {{"function", to_json(F)},
                {"path", to_json(path)},
                {"steps", steps},
                {"staircase", to_json(staircase)},
                {"quadrature", to_json(quadrature)}};
    return r;
}

CheckReport verify_winding(const Quaternion& u, double turns, std::size_t steps, double tol) {
    const Path loop = Path::circle(0.0, 1.0, u, turns);
    const IntegrationReport run = integrate_with_branch_tracking(AnalyticFunction::named(NamedKind::ln), loop, steps);
    const UnitImaginary unit{u};
    const Quaternion expected = (2.0 * std::numbers::pi * turns) * unit.value();
    const double scaled_tol = tol * std::max(1.0, std::abs(turns));
    CheckReport r{"winding", false, {}, scaled_tol};
    r.residuals = {(run.value - expected).norm(), (*run.reference - expected).norm()};
    r.pass = r.residuals.front() <= scaled_tol;
    r.config = {{"u", to_json(unit.value())},
                {"turns", turns},
                {"steps", steps},
                {"value", to_json(run.value)},
                {"tracked", to_json(*run.reference)},
                {"residual_labels", {"staircase", "tracked_branch"}}};
    return r;
}

CheckReport verify_algebraic_identities(unsigned long long seed, std::size_t samples, double tol) {
    std::mt19937_64 rng{seed};
    double monomial = 0.0;
    double leibniz = 0.0;
    double split = 0.0;
    double quotient = 0.0;

    for (std::size_t i = 0; i < samples; ++i) {
        const Quaternion x = random_off_axis(rng, 1.5, 1e-3);
        const Quaternion delta = random_quaternion(rng, 1.0);
        for (unsigned n = 0; n <= 6; ++n) {
            monomial = std::max(monomial, rel_dist(differential(AnalyticFunction::monomial(n + 1), x, delta),
                                                   sym_product_sum(x, delta, n)));
        }

        std::uniform_int_distribution<unsigned> degree{0, 4};
        std::uniform_real_distribution<double> coeff{-1.0, 1.0};
        std::vector<double> a(degree(rng) + 1);
        std::vector<double> b(degree(rng) + 1);
        for (auto& c : a) c = coeff(rng);
        for (auto& c : b) c = coeff(rng);
        const auto F = AnalyticFunction::series(a);
        const auto G = AnalyticFunction::series(b);
        const auto FG = series_product(F, G);
        const Quaternion lhs = differential(FG, x, delta);
        const Quaternion rhs =
            differential(F, x, delta) * eval_function(G, x) + eval_function(F, x) * differential(G, x, delta);
        leibniz = std::max(leibniz, rel_dist(lhs, rhs));

        const DeltaSplit parts = decompose_delta(x, delta);
        const Quaternion u = slice_point(x).u.value();
        split = std::max({split, rel_dist(parts.parallel + parts.perp, delta),
                          rel_dist(u * parts.parallel, parts.parallel * u), rel_dist(u * parts.perp, -(parts.perp * u))});

        // Small imaginary radii exercise the b/r cancellation.
        std::uniform_real_distribution<double> log_r{std::log(1e-6), std::log(10.0)};
        const Quaternion y = Quaternion{coeff(rng)} + std::exp(log_r(rng)) * UnitImaginary{random_off_axis(rng, 1.0, 0.1)}.value();
        for (const auto& H : {AnalyticFunction::named(NamedKind::exp), AnalyticFunction::named(NamedKind::sin), F}) {
            const Quaternion full = (eval_function(H, y) - eval_function(H, conj(y))) * inverse(y - conj(y));
            quotient = std::max(quotient, rel_dist(full, Quaternion{perp_quotient(H, y)}));
        }
    }

    CheckReport r{"algebraic_identities", false, {monomial, leibniz, split, quotient}, tol};
    r.pass = std::all_of(r.residuals.begin(), r.residuals.end(), [tol](double e) { return e <= tol; });
    r.config = {{"seed", seed},
                {"samples", samples},
                {"residual_labels", {"monomial_sym_sum", "leibniz", "delta_split", "perp_quotient"}}};
    return r;
}

CheckReport verify_order_upgrade(const AnalyticFunction& F, const Path& path, const std::vector<std::size_t>& steps,
                                 double gain) {
    const IntegrationReport left = convergence_study(F, path, steps, {Rule::left, 1});
    const IntegrationReport mid = convergence_study(F, path, steps, {Rule::midpoint, 1});
    CheckReport r{"order_upgrade", false, {}, gain};
    const double left_order = left.est_order.value_or(0.0);
    const double mid_order = mid.est_order.value_or(0.0);
    r.residuals = {left_order, mid_order};
    r.pass = left.est_order && mid.est_order && mid_order - left_order >= gain;
    r.config = {{"function", to_json(F)},
                {"path", to_json(path)},
                {"steps", steps},
                {"residual_labels", {"left_order", "midpoint_order"}}};
    return r;
}

// ---------------------------------------------------------------------------

std::vector<AnalyticFunction> default_functions() {
    return {AnalyticFunction::monomial(1),           AnalyticFunction::monomial(2),
            AnalyticFunction::monomial(3),           AnalyticFunction::named(NamedKind::exp),
            AnalyticFunction::named(NamedKind::sin), AnalyticFunction::named(NamedKind::cos)};
}

std::vector<Path> default_paths() {
    const Quaternion i = Quaternion::i();
    const Quaternion j = Quaternion::j();
    return {
        Path::line(Quaternion{}, j),
        Path::line(1.0 + i, 1.0 + i + j),
        Path::line(i, j),
        Path::polyline({1.0 + i, 1.0 + i + j, 0.5 + i + j, 0.5 + j}),
        Path::circle(2.0, 1.0, i, 1.0),
    };
}

std::vector<CheckReport> run_suite(Suite suite, const Tolerances& tol, unsigned threads) {
    const Quaternion i = Quaternion::i();
    const Quaternion j = Quaternion::j();
    const Quaternion k = Quaternion::k();
    const auto x = AnalyticFunction::monomial(1);
    const auto x2 = AnalyticFunction::monomial(2);
    const auto x3 = AnalyticFunction::monomial(3);
    const IntegrateOptions options{Rule::left, threads};

    std::vector<CheckReport> out;
    for (const auto& F : default_functions()) {
        for (const auto& P : default_paths()) {
            out.push_back(verify_ftc_forward(F, P, {100, 1000, kSuiteSteps}, tol.ftc_forward, tol.exact, 0.0, options));
            out.push_back(verify_mutual_oracle(F, P, kSuiteSteps, tol.mutual_oracle));
        }
    }
    out.push_back(verify_integration_by_parts(x, x, Path::line(Quaternion{}, 1.0 + i + j), kSuiteSteps, tol.by_parts));
    out.push_back(verify_integration_by_parts(x2, x, Path::line(Quaternion{}, 1.0 + i + j), kSuiteSteps, tol.by_parts));
    out.push_back(verify_integration_by_parts(x2, x3, Path::circle(2.0, 1.0, j, 1.0), kSuiteSteps, tol.by_parts));
    out.push_back(verify_ftc_inverse(x3, 1.0 + i, 0.01 * j, kSuiteSteps, tol.ftc_inverse));
    out.push_back(verify_antiderivative_map(x2, Path::line(i, j), kSuiteSteps, tol.antiderivative));
    out.push_back(verify_antiderivative_map(AnalyticFunction::named(NamedKind::cos), Path::line(i, j), kSuiteSteps,
                                            tol.antiderivative));
    out.push_back(verify_closed_loop(x3, Path::circle(2.0, 1.0, i, 1.0), kSuiteSteps, tol.closed_loop));

    if (suite == Suite::all) {
        const Path vertical = Path::line(1.0 + i, 1.0 + i + j);
        for (const auto& F : {x, x2, x3}) {
            out.push_back(verify_ftc_forward(F, vertical, {100, 1000, 10'000, 100'000}, tol.ftc_forward, tol.exact,
                                             tol.min_order, options));
        }
        const Quaternion a = 1.0 + i;
        const Quaternion b = 0.5 + j;
        out.push_back(verify_path_independence(
            AnalyticFunction::named(NamedKind::exp),
            {Path::line(a, b), Path::polyline({a, 1.0 + i + j, 0.5 + i + j, b}), Path::arc(a, 1.0 + 0.8 * (i + j), b)},
            kSuiteSteps, tol.path_independence));
        for (const Quaternion& u : {i, j, (i + j + k) / std::sqrt(3.0)}) {
            for (double m : {-1.0, 1.0, 2.0}) out.push_back(verify_winding(u, m, kSuiteSteps, tol.winding));
        }
        out.push_back(verify_algebraic_identities(20081818, 100, tol.identity));
        out.push_back(verify_order_upgrade(AnalyticFunction::named(NamedKind::exp), Path::line(1.0 + i, 2.0 + j),
                                           {100, 200, 400, 800}, tol.order_gain));
        out.push_back(verify_ftc_inverse_scaling(x3, 1.0 + i, 0.3 + 0.5 * i + 0.6 * j + 0.4 * k,
                                                 {1e-2, 5e-3, 2.5e-3, 1.25e-3}, kSuiteSteps, tol.inverse_slope));
    }
    return out;
}

} // namespace qint
