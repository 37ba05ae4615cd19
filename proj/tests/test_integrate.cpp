#include <numbers>
#include <stdexcept>

#include "qint/errors.hpp"
#include "qint/integrate.hpp"
#include "test_support.hpp"

using qint::AnalyticFunction;
using qint::NamedKind;
using qint::Path;
using qint::Quaternion;
using qint::Rule;
using namespace qint_test;

namespace {
const Quaternion I = Quaternion::i();
const Quaternion J = Quaternion::j();
const Quaternion K = Quaternion::k();
const double pi = std::numbers::pi;
const auto Exp = AnalyticFunction::named(NamedKind::exp);
const auto Sin = AnalyticFunction::named(NamedKind::sin);
const auto Cos = AnalyticFunction::named(NamedKind::cos);
const auto Ln = AnalyticFunction::named(NamedKind::ln);
const auto X1 = AnalyticFunction::monomial(1);
const auto X2 = AnalyticFunction::monomial(2);
const auto X3 = AnalyticFunction::monomial(3);
} // namespace

TEST_SUITE("integrate") {

TEST_CASE("identity function telescopes on any path") {
    const std::vector<Path> paths{Path::line(Quaternion{}, J), Path::line(0.3 - I, 2.0 + K),
                                  Path::polyline({I, 1.0 + J, -K, 2.0 + I}), Path::circle(1.0, 2.0, J, 0.3),
                                  Path::arc(1.0 + I, 1.0 + 0.8 * (I + J), 0.5 + J)};
    for (const auto& p : paths) {
        for (std::size_t N : {1u, 7u, 1000u}) {
            const auto r = qint::integrate(X1, p, N);
            CHECK(qint::max_dist(r.value, p.end() - p.start()) <= 1e-12);
            REQUIRE(r.abs_error);
            CHECK(*r.abs_error <= 1e-12);
        }
    }
}

TEST_CASE("x^2 from 0 to j") {
    const auto r = qint::integrate(X2, Path::line(Quaternion{}, J), 10'000);
    CHECK_QUAT_NEAR(r.value, Quaternion{-1.0}, 1e-3);
    REQUIRE(r.reference);
    CHECK(*r.reference == Quaternion{-1.0});
}

TEST_CASE("x^3 along the line from 1 + i to 1 + i + j converges by doubling") {
    const Path line = Path::line(1.0 + I, 1.0 + I + J);
    const Quaternion reference{-3.0, -1.0, 1.0, 0.0}; // (1+i+j)^3 - (1+i)^3 by direct cubing
    double previous = 1e9;
    for (std::size_t N = 100; N <= 100'000; N *= 2) {
        const auto r = qint::integrate(X3, line, N);
        const double err = (r.value - reference).norm();
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous <= 1e-4);
}

TEST_CASE("error times N stays bounded") {
    const Path p = Path::line(0.2 + 0.1 * I, -0.1 + 0.4 * J + 0.2 * K);
    const auto geometric = AnalyticFunction::series(std::vector<double>(200, 1.0), 1.0);
    const auto geometric_oracle = [](const Quaternion& q) { return oracle_series(q, [](unsigned) { return 1.0; }, 200); };
    struct Case {
        AnalyticFunction F;
        Quaternion ref;
    };
    const std::vector<Case> cases{
        {X2, oracle_pow(p.end(), 2) - oracle_pow(p.start(), 2)},
        {X3, oracle_pow(p.end(), 3) - oracle_pow(p.start(), 3)},
        {Exp, oracle_exp(p.end()) - oracle_exp(p.start())},
        {geometric, geometric_oracle(p.end()) - geometric_oracle(p.start())},
    };
    for (const auto& c : cases) {
        INFO(c.F.describe());
        double c_first = 0.0;
        for (std::size_t N : {100u, 1000u, 10000u, 100000u}) {
            const double scaled = (qint::integrate(c.F, p, N).value - c.ref).norm() * static_cast<double>(N);
            if (N == 100) c_first = scaled;
            CHECK(scaled <= 1.1 * c_first + 1e-9);
            CHECK(scaled > 0.0);
        }
    }
}

TEST_CASE("left rule error is first order, midpoint second order") {
    const Path line = Path::line(1.0 + I, 2.0 + J);
    const Quaternion reference = oracle_pow(2.0 + J, 2) - oracle_pow(1.0 + I, 2); // 3 - 2i + 4j
    CHECK_QUAT_NEAR(reference, Quaternion(3.0, -2.0, 4.0, 0.0), 1e-15);
    const std::vector<std::size_t> steps{100, 200, 400, 800};
    const auto left = qint::convergence_study(X2, line, steps);
    REQUIRE(left.est_order);
    CHECK(*left.est_order >= 0.9);
    CHECK(*left.est_order == doctest::Approx(1.0).epsilon(0.05));
    CHECK_QUAT_NEAR(*left.reference, reference, 1e-14);
    CHECK(left.rows.size() == 4);

    const auto mid = qint::convergence_study(Exp, line, steps, {Rule::midpoint, 1});
    REQUIRE(mid.est_order);
    CHECK(*mid.est_order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("convergence study edge cases") {
    const Path line = Path::line(I, 2.0 + J);
    const auto exact = qint::convergence_study(X1, line, std::vector<std::size_t>{10, 100, 1000});
    CHECK(exact.exact);
    CHECK_FALSE(exact.est_order);
    for (const auto& row : exact.rows) CHECK(*row.abs_error <= 1e-12);

    CHECK_THROWS_AS(qint::convergence_study(X2, line, std::vector<std::size_t>{10, 100}), std::invalid_argument);
    CHECK_THROWS_AS(qint::convergence_study(X2, line, std::vector<std::size_t>{100, 10, 1000}), std::invalid_argument);
    CHECK_THROWS_AS(qint::convergence_study(Ln, line, std::vector<std::size_t>{10, 100, 1000}), qint::MissingReference);
}

TEST_CASE("closed loops with single-valued functions vanish") {
    const Path loop = Path::circle(0.5, 1.0, (I + K) / std::sqrt(2.0), 1.0);
    for (std::size_t N : {1000u, 4000u}) {
        for (const auto& F : {Exp, Sin, X3}) {
            const auto r = qint::integrate(F, loop, N);
            CHECK(*r.reference == Quaternion{});
            CHECK(r.value.norm() <= 50.0 / static_cast<double>(N));
        }
    }
    const auto study = qint::convergence_study(Exp, loop, std::vector<std::size_t>{100, 1000, 10000});
    CHECK(study.rows.back().abs_error.value() <= 2e-3);
}

TEST_CASE("slice quadrature examples") {
    auto r = qint::integrate_slice_quadrature(X1, Path::line(Quaternion{}, J), 1000);
    CHECK_QUAT_NEAR(r.value, J, 1e-10);

    r = qint::integrate_slice_quadrature(Exp, Path::line(Quaternion{}, pi * I), 10'000);
    CHECK_QUAT_NEAR(r.value, Quaternion{-2.0}, 1e-6);

    // corners of a polyline are integrated piecewise
    r = qint::integrate_slice_quadrature(Exp, Path::polyline({1.0 + I, 1.0 + I + J, 0.5 + I + J, 0.5 + J}), 999);
    CHECK(r.abs_error.value() <= 1e-5);
}

TEST_CASE("staircase and slice quadrature converge together") {
    std::mt19937_64 rng{71};
    std::uniform_real_distribution<double> coeff{-1, 1};
    for (int n = 0; n < 10; ++n) {
        const auto F = AnalyticFunction::series({coeff(rng), coeff(rng), coeff(rng), coeff(rng)});
        const Path p = Path::line(random_off_axis(rng, 1.0, 0.2), random_off_axis(rng, 1.0, 0.2));
        double previous = 1e9;
        for (std::size_t N : {100u, 1000u, 10000u}) {
            const double gap =
                (qint::integrate(F, p, N).value - qint::integrate_slice_quadrature(F, p, N).value).norm();
            CHECK(gap <= previous * 1.01 + 1e-12);
            previous = gap;
        }
        CHECK(previous <= 2e-3);
    }
}

TEST_CASE("threads agree with the sequential sum") {
    const Path p = Path::polyline({1.0 + I, 1.0 + I + J, 0.5 + I + J, 0.5 + J});
    const auto one = qint::integrate(Exp, p, 10'000, {Rule::left, 1});
    const auto again = qint::integrate(Exp, p, 10'000, {Rule::left, 1});
    CHECK(one.value == again.value);
    for (unsigned t : {2u, 3u, 8u}) {
        CHECK(qint::max_dist(qint::integrate(Exp, p, 10'000, {Rule::left, t}).value, one.value) <= 1e-12);
        CHECK(qint::max_dist(qint::integrate_slice_quadrature(Exp, p, 10'000, t).value,
                             qint::integrate_slice_quadrature(Exp, p, 10'000, 1).value) <= 1e-12);
    }
    // more threads than steps
    CHECK(qint::max_dist(qint::integrate(X2, Path::line(I, J), 3, {Rule::left, 16}).value,
                         qint::integrate(X2, Path::line(I, J), 3).value) <= 1e-15);
}

TEST_CASE("entire functions pass through the real axis, others are rejected with s") {
    const Path through_axis = Path::line(-1.0 - I, 1.0 + I); // crosses 0 at s = 1/2
    CHECK_NOTHROW(qint::integrate(Exp, through_axis, 100));
    try {
        qint::integrate(Ln, Path::line(2.0 - I, 2.0 + I), 100);
        FAIL("expected DegenerateSlice");
    } catch (const qint::DegenerateSlice& e) {
        REQUIRE(e.path_parameter());
        CHECK(*e.path_parameter() == doctest::Approx(0.5));
    }
    const auto geometric = AnalyticFunction::series(std::vector<double>(300, 1.0), 1.0);
    CHECK_THROWS_AS(qint::integrate(geometric, Path::line(0.1 + 0.2 * I, 0.1 - 0.2 * I), 100),
                    qint::DegenerateSlice);
    CHECK_NOTHROW(qint::integrate(geometric, Path::line(0.1 + 0.2 * I, 0.1 + 0.5 * J), 100));
}

TEST_CASE("leaving the disk of convergence is a domain error carrying s") {
    const auto geometric = AnalyticFunction::series(std::vector<double>(300, 1.0), 1.0);
    try {
        qint::integrate(geometric, Path::line(0.5 * I, 1.5 * J), 1000);
        FAIL("expected DomainError");
    } catch (const qint::DomainError& e) {
        REQUIRE(e.path_parameter());
        CHECK(*e.path_parameter() > 0.0);
        CHECK(*e.path_parameter() < 1.0);
    }
    CHECK_THROWS_AS(qint::integrate_slice_quadrature(geometric, Path::line(0.5 * I, 1.5 * J), 1000), qint::DomainError);
    CHECK_THROWS_AS(qint::integrate(X2, Path::line(I, J), 0), std::invalid_argument);
}

TEST_CASE("ln off the real axis has a reference only via branch tracking") {
    const auto r = qint::integrate(Ln, Path::line(1.0 + I, -1.0 + J), 1000);
    CHECK_FALSE(r.reference);
    const Quaternion principal = qint::eval_function(Ln, -1.0 + J) - qint::eval_function(Ln, 1.0 + I);
    CHECK(qint::max_dist(r.value, principal) <= 5e-3);
}

TEST_CASE("branch tracking around the origin") {
    const auto r = qint::integrate_with_branch_tracking(Ln, Path::circle(0.0, 1.0, I, 1.0), 10'000);
    CHECK_QUAT_NEAR(r.value, 2.0 * pi * I, 1e-2);
    CHECK_QUAT_NEAR(*r.reference, 2.0 * pi * I, 1e-12);

    const auto zero = qint::integrate_with_branch_tracking(Ln, Path::circle(0.0, 1.0, I, 0.0), 10'000);
    CHECK_QUAT_NEAR(zero.value, Quaternion{}, 1e-2);

    const Quaternion u = (J + K) / std::sqrt(2.0);
    const auto two = qint::integrate_with_branch_tracking(Ln, Path::circle(0.0, 1.0, u, 2.0), 10'000);
    CHECK_QUAT_NEAR(two.value, 4.0 * pi * u, 2e-2);
    CHECK_QUAT_NEAR(*two.reference, Quaternion(0.0, 0.0, 8.88576588, 8.88576588), 1e-8);

    // there and back along the same arc: net winding 0
    const auto back =
        qint::integrate_with_branch_tracking(Ln, Path::polyline({Quaternion{1.0}, J, Quaternion{-1.0}, J, Quaternion{1.0}}), 4000);
    CHECK_QUAT_NEAR(back.value, Quaternion{}, 1e-2);
}

TEST_CASE("winding additivity") {
    const auto unit = qint::integrate_with_branch_tracking(Ln, Path::circle(0.0, 1.0, K, 1.0), 10'000).value;
    for (double m : {-2.0, -1.0, 1.0, 2.0}) {
        const auto v = qint::integrate_with_branch_tracking(Ln, Path::circle(0.0, 1.0, K, m), 10'000).value;
        CHECK((v - m * unit).norm() <= 1e-2 * std::abs(m));
    }
}

TEST_CASE("branch tracking errors") {
    CHECK_THROWS_AS(qint::integrate_with_branch_tracking(Ln, Path::line(1.0 + I, 1.0 + J), 100), qint::SliceEscape);
    CHECK_THROWS_AS(qint::integrate_with_branch_tracking(Ln, Path::line(-1.0 - I, 1.0 + I), 100), qint::DomainError);
    CHECK_THROWS_AS(qint::integrate_with_branch_tracking(Ln, Path::circle(0.0, 1.0, I, 1.0), 3), qint::StepTooCoarse);
    CHECK_THROWS_AS(qint::integrate_with_branch_tracking(Exp, Path::circle(0.0, 1.0, I, 1.0), 100), qint::Unsupported);
    try {
        qint::integrate_with_branch_tracking(Ln, Path::polyline({1.0 + I, 2.0 + I, 2.0 + J}), 100);
        FAIL("expected SliceEscape");
    } catch (const qint::SliceEscape& e) {
        REQUIRE(e.path_parameter());
        CHECK(*e.path_parameter() > 0.5);
    }
}

TEST_CASE("fit_order") {
    const std::vector<std::size_t> n{10, 100, 1000};
    CHECK(qint::fit_order(n, std::vector<double>{1e-1, 1e-2, 1e-3}) == doctest::Approx(1.0));
    CHECK(qint::fit_order(n, std::vector<double>{1e-2, 1e-4, 1e-6}) == doctest::Approx(2.0));
}

}
