#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "test_support.hpp"

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" QINT_CLI_PATH "\" " + args + " 2>&1";
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<double> parse_vec(const std::string& text) {
    const auto start = text.find('[');
    const auto stop = text.find(']', start);
    REQUIRE(start != std::string::npos);
    return nlohmann::json::parse(text.substr(start, stop - start + 1)).get<std::vector<double>>();
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("qint_test_" + std::to_string(::getpid()) + "_" + name);
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("eval") {
    auto r = run("eval --fn exp --at '[0,3.141592653589793,0,0]'");
    CHECK(r.code == 0);
    auto v = parse_vec(r.out);
    CHECK(v[0] == doctest::Approx(-1.0));
    CHECK(std::abs(v[1]) <= 1e-15);

    r = run(R"(eval --fn '{"kind":"series","coeffs":[0,0,1]}' --at '[1,1,0,0]')");
    CHECK(r.code == 0);
    v = parse_vec(r.out);
    CHECK(v == std::vector<double>{0, 2, 0, 0});
}

TEST_CASE("malformed input exits 1") {
    CHECK(run(R"(eval --fn '{"kind":"series"' --at '[1,1,0,0]')").code == 1);
    CHECK(run("eval --fn exp --at '[1,1]'").code == 1);
    CHECK(run("integrate --fn x --path '{\"kind\":\"line\"}'").code == 1);
    CHECK(run("nonsense").code == 1);
    CHECK(run("--help").code == 0);
}

TEST_CASE("domain errors exit 2 and name s") {
    const auto r = run(R"(integrate --fn ln --path '{"kind":"line","a":[2,-1,0,0],"b":[2,1,0,0]}' --steps 100)");
    CHECK(r.code == 2);
    CHECK(r.out.find("s = ") != std::string::npos);
}

TEST_CASE("diff") {
    const auto r = run("diff --fn x^2 --at '[1,1,0,0]' --delta '[0,0,1,0]'");
    CHECK(r.code == 0);
    const auto v = parse_vec(r.out);
    CHECK(std::abs(v[0]) <= 1e-15);
    CHECK(v[2] == doctest::Approx(2.0));
}

TEST_CASE("integrate") {
    auto r = run(R"(integrate --fn x^2 --path '{"kind":"line","a":[0,0,0,0],"b":[0,0,1,0]}' --steps 10000)");
    CHECK(r.code == 0);
    auto v = parse_vec(r.out);
    CHECK(std::abs(v[0] + 1.0) <= 1e-3);

    r = run(R"(integrate --fn x --path '{"kind":"line","a":[0,0,0,0],"b":[0,0,1,0]}' --steps 1000 --quadrature)");
    CHECK(r.code == 0);
    v = parse_vec(r.out);
    CHECK(std::abs(v[2] - 1.0) <= 1e-10);

    r = run(R"(integrate --fn ln --path '{"kind":"circle","center":0,"radius":1,"u":[0,0,1,0]}' --steps 10000 --branch-track)");
    CHECK(r.code == 0);
    v = parse_vec(r.out);
    CHECK(std::abs(v[2] - 2 * std::numbers::pi) <= 1e-2);
}

TEST_CASE("convergence study as CSV and JSON") {
    const auto csv = temp_file("study.csv");
    auto r = run(R"(integrate --fn x^2 --path '{"kind":"line","a":[1,1,0,0],"b":[2,0,1,0]}' --study 100,1000,10000 --out ")" +
                 csv.string() + "\"");
    CHECK(r.code == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "N,value_w,value_x1,value_x2,value_x3,abs_error,est_order");
    std::vector<double> errors;
    for (std::string line; std::getline(in, line);) {
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() >= 6);
        errors.push_back(std::stod(cells[5]));
    }
    REQUIRE(errors.size() == 3);
    CHECK(errors[0] > errors[1]);
    CHECK(errors[1] > errors[2]);
    std::filesystem::remove(csv);

    const auto js = temp_file("study.json");
    r = run(R"(integrate --fn x^2 --path '{"kind":"line","a":[1,1,0,0],"b":[2,0,1,0]}' --study 100,200,400 --out ")" +
            js.string() + "\"");
    CHECK(r.code == 0);
    std::ifstream jin(js);
    const auto doc = nlohmann::json::parse(jin);
    CHECK(doc.at("rows").size() == 3);
    CHECK(doc.at("est_order").get<double>() >= 0.9);
    std::filesystem::remove(js);
}

TEST_CASE("verify") {
    const auto out = temp_file("verify.json");
    auto r = run("verify --threads 2 --out \"" + out.string() + "\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    std::ifstream in(out);
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc.at("pass") == true);
    CHECK(doc.at("checks").size() > 10);
    for (const auto& c : doc.at("checks")) {
        CHECK(c.contains("check"));
        CHECK(c.contains("residuals"));
        CHECK(c.contains("tolerance"));
    }
    std::filesystem::remove(out);

    r = run("verify --threads 2", "QINT_TOL=1e-30");
    CHECK(r.code == 3);
    CHECK(r.out.find("FAIL") != std::string::npos);
    CHECK(run("verify", "QINT_TOL=oops").code == 1);
}

}
