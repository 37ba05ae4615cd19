// qint: command-line front end for the quaternionic differential/integral
// library.
//
// Exit codes: 0 success, 1 usage or parse error, 2 domain error, 3 a
// verification check failed.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qint/differential.hpp"
#include "qint/errors.hpp"
#include "qint/integrate.hpp"
#include "qint/json_io.hpp"
#include "qint/verify.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitVerify = 3;

std::vector<std::size_t> parse_steps_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v < 1) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw qint::ParseError("bad step count '" + item + "' in --study");
        }
    }
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw qint::ParseError("cannot open '" + path + "' for writing");
    out << content;
}

std::string report_csv(const qint::IntegrationReport& report) {
    using qint::format_double;
    std::ostringstream os;
    os << "N,value_w,value_x1,value_x2,value_x3,abs_error,est_order\n";
    const std::string order = report.est_order ? format_double(*report.est_order) : "";
    for (const auto& row : report.rows) {
        os << row.steps << ',' << format_double(row.value.w) << ',' << format_double(row.value.x1) << ','
           << format_double(row.value.x2) << ',' << format_double(row.value.x3) << ','
           << (row.abs_error ? format_double(*row.abs_error) : "") << ',' << order << '\n';
    }
    return os.str();
}

struct IntegrateArgs {
    std::string fn;
    std::string path;
    std::size_t steps = 1000;
    std::string rule = "left";
    std::string study;
    std::string out;
    bool branch_track = false;
    bool quadrature = false;
    unsigned threads = 1;
};

int run_integrate(const IntegrateArgs& args) {
    const qint::AnalyticFunction F = qint::parse_function_spec(args.fn);
    const qint::Path path = qint::parse_path_spec(args.path);
    const qint::IntegrateOptions options{args.rule == "midpoint" ? qint::Rule::midpoint : qint::Rule::left,
                                         args.threads};

    const auto single = [&](std::size_t N) {
        if (args.branch_track) return qint::integrate_with_branch_tracking(F, path, N);
        if (args.quadrature) return qint::integrate_slice_quadrature(F, path, N, args.threads);
        return qint::integrate(F, path, N, options);
    };

    qint::IntegrationReport report;
    if (args.study.empty()) {
        report = single(args.steps);
        report.rows.push_back({report.steps, report.value, report.abs_error});
    } else {
        const std::vector<std::size_t> steps = parse_steps_list(args.study);
        if (!args.branch_track && !args.quadrature) {
            report = qint::convergence_study(F, path, steps, options);
        } else {
            std::vector<double> errors;
            std::vector<qint::StudyRow> rows;
            for (std::size_t N : steps) {
                report = single(N);
                rows.push_back({N, report.value, report.abs_error});
                if (report.abs_error) errors.push_back(*report.abs_error);
            }
            report.rows = std::move(rows);
            if (errors.size() == steps.size() && steps.size() >= 2) report.est_order = qint::fit_order(steps, errors);
        }
    }

    if (!args.out.empty()) {
        write_file(args.out, ends_with(args.out, ".json") ? qint::to_json(report).dump(2) + "\n" : report_csv(report));
    }
    if (!args.study.empty() && args.out.empty()) {
        std::cout << report_csv(report);
    } else {
        std::cout << qint::format_quaternion(report.value) << '\n';
    }
    return 0;
}

int run_verify(const std::string& suite_name, const std::string& out, const std::string& tol_override,
               unsigned threads) {
    qint::Tolerances tol = qint::tolerances_from_env();
    if (!tol_override.empty()) {
        const auto j = qint::json::parse(tol_override, nullptr, false);
        if (j.is_discarded()) throw qint::ParseError("--tol is not valid JSON");
        tol = j.is_number() ? qint::Tolerances::uniform(j.get<double>()) : qint::Tolerances::from_json(j);
    }
    const qint::Suite suite = suite_name == "all" ? qint::Suite::all : qint::Suite::standard;
    const auto checks = qint::run_suite(suite, tol, threads);

    bool all_pass = true;
    qint::json reports = qint::json::array();
    for (const auto& c : checks) {
        all_pass = all_pass && c.pass;
        reports.push_back(qint::to_json(c));
        double worst = 0.0;
        for (double r : c.residuals) worst = std::max(worst, r);
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.check << "  max_residual=" << qint::format_double(worst)
                  << "  tol=" << qint::format_double(c.tolerance) << '\n';
    }
    std::cout << (all_pass ? "all " : "some ") << "checks " << (all_pass ? "passed" : "FAILED") << " ("
              << checks.size() << ")\n";
    if (!out.empty()) {
        const qint::json doc{{"suite", suite_name}, {"pass", all_pass}, {"tolerances", tol.to_json()}, {"checks", reports}};
        write_file(out, doc.dump(2) + "\n");
    }
    return all_pass ? 0 : kExitVerify;
}

void report_error(const qint::Error& e) {
    std::cerr << "error: " << e.what();
    if (e.path_parameter()) std::cerr << " (at s = " << qint::format_double(*e.path_parameter()) << ")";
    std::cerr << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Differential and path integral of real-analytic functions of a quaternionic variable"};
    app.require_subcommand(1);

    std::string fn;
    std::string at;
    std::string delta;
    bool derivative = false;

    auto* eval = app.add_subcommand("eval", "Evaluate F (or F') at a quaternion");
    eval->add_option("--fn", fn, "Function: JSON spec, a name (exp, sin, cos, ln, reciprocal), x or x^n")->required();
    eval->add_option("--at", at, "Point as [w,x1,x2,x3]")->required();
    eval->add_flag("--derivative", derivative, "Evaluate F' instead of F");

    auto* diff = app.add_subcommand("diff", "Differential DF(x)[delta]");
    diff->add_option("--fn", fn, "Function spec")->required();
    diff->add_option("--at", at, "Point x as [w,x1,x2,x3]")->required();
    diff->add_option("--delta", delta, "Increment as [w,x1,x2,x3]")->required();

    IntegrateArgs iargs;
    auto* integ = app.add_subcommand("integrate", "Path integral of DF");
    integ->add_option("--fn", iargs.fn, "Function spec")->required();
    integ->add_option("--path", iargs.path, "Path JSON spec")->required();
    integ->add_option("--steps", iargs.steps, "Number of chords")->check(CLI::PositiveNumber);
    integ->add_option("--rule", iargs.rule, "Evaluation point per chord")->check(CLI::IsMember({"left", "midpoint"}));
    integ->add_option("--study", iargs.study, "Comma-separated ascending step counts for a convergence study");
    integ->add_option("--out", iargs.out, "Write the report (.json for JSON, otherwise CSV)");
    integ->add_flag("--branch-track", iargs.branch_track, "Follow the branch of ln along a single-slice path");
    integ->add_flag("--quadrature", iargs.quadrature, "Use the slice quadrature instead of the staircase");
    integ->add_option("--threads", iargs.threads, "Parallel chunks")->check(CLI::PositiveNumber);

    std::string suite = "default";
    std::string out;
    std::string tol_override;
    unsigned threads = 1;
    auto* verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_option("--suite", suite, "default or all")->check(CLI::IsMember({"default", "all"}));
    verify->add_option("--out", out, "Write the JSON report here");
    verify->add_option("--tol", tol_override, "Tolerance override: a number or a JSON object (beats QINT_TOL)");
    verify->add_option("--threads", threads, "Parallel chunks per integral")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*eval) {
            const auto F = qint::parse_function_spec(fn);
            const auto x = qint::parse_quaternion(at);
            std::cout << qint::format_quaternion(derivative ? qint::eval_derivative(F, x) : qint::eval_function(F, x))
                      << '\n';
        } else if (*diff) {
            const auto F = qint::parse_function_spec(fn);
            std::cout << qint::format_quaternion(
                             qint::differential(F, qint::parse_quaternion(at), qint::parse_quaternion(delta)))
                      << '\n';
        } else if (*integ) {
            return run_integrate(iargs);
        } else if (*verify) {
            return run_verify(suite, out, tol_override, threads);
        }
    } catch (const qint::ParseError& e) {
        report_error(e);
        return kExitUsage;
    } catch (const qint::Error& e) {
        report_error(e);
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
