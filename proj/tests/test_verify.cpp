#include <cstdlib>
#include <numbers>

#include "qint/errors.hpp"
#include "qint/verify.hpp"
#include "test_support.hpp"

using qint::AnalyticFunction;
using qint::NamedKind;
using qint::Path;
using qint::Quaternion;

namespace {
const Quaternion I = Quaternion::i();
const Quaternion J = Quaternion::j();
const Quaternion K = Quaternion::k();
const auto Exp = AnalyticFunction::named(NamedKind::exp);
const auto Cos = AnalyticFunction::named(NamedKind::cos);
const auto X1 = AnalyticFunction::monomial(1);
const auto X2 = AnalyticFunction::monomial(2);
const auto X3 = AnalyticFunction::monomial(3);

struct EnvGuard {
    explicit EnvGuard(const char* value) { ::setenv("QINT_TOL", value, 1); }
    ~EnvGuard() { ::unsetenv("QINT_TOL"); }
};
} // namespace

TEST_SUITE("verify") {

TEST_CASE("forward FTC") {
    const std::vector<std::size_t> steps{100, 1000, 10000};
    // x^3 along a + b s with a = 2 + i, b = j
    const auto r = qint::verify_ftc_forward(X3, Path::line(2.0 + I, 2.0 + I + J), steps, 1e-3);
    CHECK(r.pass);
    REQUIRE(r.residuals.size() == 3);
    CHECK(r.residuals[0] > r.residuals[1]);
    CHECK(r.residuals[1] > r.residuals[2]);

    const auto x = qint::verify_ftc_forward(X1, Path::line(I, J), steps, 1e-3);
    CHECK(x.pass);
    for (double e : x.residuals) CHECK(e <= 1e-12);

    // too strict a tolerance fails but does not throw
    CHECK_FALSE(qint::verify_ftc_forward(X3, Path::line(2.0 + I, 2.0 + I + J), steps, 1e-9).pass);
    // a slow method cannot meet an order requirement it does not have
    CHECK_FALSE(qint::verify_ftc_forward(X2, Path::line(I, 2.0 + J), steps, 1.0, 1e-12, 1.5).pass);
}

TEST_CASE("forward FTC rejects bad step lists") {
    CHECK_THROWS_AS(qint::verify_ftc_forward(X2, Path::line(I, J), {100, 10, 1000}, 1e-3), std::invalid_argument);
}

TEST_CASE("inverse FTC") {
    const auto r = qint::verify_ftc_inverse(X3, 1.0 + I, 0.01 * J, 10'000, 1e-3);
    CHECK(r.pass);
    REQUIRE(r.residuals.size() == 3);

    const auto exact = qint::verify_ftc_inverse(X1, 1.0 + I, 0.3 * J + 0.2 * K, 100, 1e-12);
    CHECK(exact.pass);
    CHECK(exact.residuals[0] <= 1e-12);

    const auto zero = qint::verify_ftc_inverse(X3, 1.0 + I, Quaternion{}, 1000, 1e-15);
    CHECK(zero.pass);
    CHECK(zero.residuals[0] == 0.0);
}

TEST_CASE("inverse FTC residual shrinks quadratically") {
    const auto r = qint::verify_ftc_inverse_scaling(X3, 1.0 + I, 0.3 + 0.5 * I + 0.6 * J + 0.4 * K,
                                                    {1e-2, 5e-3, 2.5e-3, 1.25e-3}, 10'000, 0.3);
    CHECK(r.pass);
}

TEST_CASE("integration by parts") {
    const Path p = Path::line(Quaternion{}, 1.0 + I + J);
    CHECK(qint::verify_integration_by_parts(X1, X1, p, 10'000, 2e-3).pass);
    CHECK(qint::verify_integration_by_parts(X2, X1, p, 10'000, 2e-3).pass);
    CHECK(qint::verify_integration_by_parts(X2, X3, Path::circle(2.0, 1.0, J, 1.0), 10'000, 2e-3).pass);
    const auto one = qint::verify_integration_by_parts(AnalyticFunction::monomial(0), X1, p, 1000, 1e-12);
    CHECK(one.pass);
}

TEST_CASE("antiderivative map") {
    const Path p = Path::line(I, J);
    CHECK(qint::verify_antiderivative_map(X2, p, 10'000, 1e-3).pass);
    CHECK(qint::verify_antiderivative_map(Cos, p, 10'000, 1e-3).pass);
    const auto zero = qint::verify_antiderivative_map(AnalyticFunction::series({0.0}), p, 100, 1e-15);
    CHECK(zero.pass);
    CHECK_THROWS_AS(qint::verify_antiderivative_map(AnalyticFunction::named(NamedKind::ln), p, 100, 1e-3),
                    qint::Unsupported);
}

TEST_CASE("closed loops, path independence, mutual oracle") {
    CHECK(qint::verify_closed_loop(X3, Path::circle(2.0, 1.0, I, 1.0), 10'000, 2e-3).pass);
    const std::vector<Path> paths{Path::line(1.0 + I, 0.5 + J),
                                  Path::polyline({1.0 + I, 1.0 + I + J, 0.5 + I + J, 0.5 + J}),
                                  Path::arc(1.0 + I, 1.0 + 0.8 * (I + J), 0.5 + J)};
    CHECK(qint::verify_path_independence(Exp, paths, 10'000, 2e-3).pass);
    CHECK_THROWS_AS(qint::verify_path_independence(Exp, {paths[0], Path::line(I, J)}, 100, 2e-3),
                    std::invalid_argument);
    CHECK(qint::verify_mutual_oracle(Exp, paths[1], 10'000, 2e-3).pass);
}

TEST_CASE("winding") {
    for (double m : {-1.0, 1.0, 2.0}) {
        INFO(m);
        CHECK(qint::verify_winding((I + J + K) / std::sqrt(3.0), m, 10'000, 1e-2).pass);
    }
    CHECK_FALSE(qint::verify_winding(I, 1.0, 10'000, 1e-8).pass);
}

TEST_CASE("identities and order upgrade") {
    const auto r = qint::verify_algebraic_identities(20081818, 100, 1e-10);
    CHECK(r.pass);
    CHECK(r.residuals.size() == 4);
    CHECK(qint::verify_order_upgrade(Exp, Path::line(1.0 + I, 2.0 + J), {100, 200, 400, 800}, 0.5).pass);
}

TEST_CASE("tolerances") {
    const auto t = qint::Tolerances::from_json(nlohmann::json::parse(R"({"winding": 0.5})"));
    CHECK(t.winding == 0.5);
    CHECK(t.ftc_forward == qint::Tolerances{}.ftc_forward);
    CHECK_THROWS_AS(qint::Tolerances::from_json(nlohmann::json::parse(R"({"nope": 1})")), qint::ParseError);
    CHECK(qint::Tolerances::from_json(t.to_json()).winding == 0.5);

    const auto u = qint::Tolerances::uniform(1e-30);
    CHECK(u.by_parts == 1e-30);
    CHECK(u.min_order == qint::Tolerances{}.min_order);

    {
        EnvGuard env("1e-5");
        CHECK(qint::tolerances_from_env().closed_loop == 1e-5);
    }
    {
        EnvGuard env(R"({"closed_loop": 0.25})");
        CHECK(qint::tolerances_from_env().closed_loop == 0.25);
    }
    {
        EnvGuard env("garbage");
        CHECK_THROWS_AS(qint::tolerances_from_env(), qint::ParseError);
    }
    CHECK(qint::tolerances_from_env().closed_loop == qint::Tolerances{}.closed_loop);
}

TEST_CASE("standard suite passes with default tolerances and fails with absurd ones") {
    const auto reports = qint::run_suite(qint::Suite::standard, qint::Tolerances{}, 2);
    CHECK(reports.size() > 10);
    for (const auto& r : reports) {
        INFO(r.check << " " << r.config.dump());
        CHECK(r.pass);
        const auto j = qint::to_json(r);
        CHECK(j.contains("residuals"));
        CHECK(j.at("check") == r.check);
    }
    const auto strict = qint::run_suite(qint::Suite::standard, qint::Tolerances::uniform(1e-30), 2);
    bool any_fail = false;
    for (const auto& r : strict) any_fail = any_fail || !r.pass;
    CHECK(any_fail);
}

}
