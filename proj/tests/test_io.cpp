#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "tce/io.hpp"

using tce::GoldenRational;

namespace {
constexpr double kPi = std::numbers::pi;

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("pinned double formatting round trips") {
    for (const double x : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.61803398874989484}) {
        CHECK(std::stod(tce::format_double(x)) == x);
    }
    CHECK(tce::format_double(0.5) == "0.5");
}

TEST_CASE("parameter text: exact translation lengths survive the round trip") {
    const std::string text =
        "# figure parameters\n"
        "d = 2\n"
        "alpha = 0.5 0.6415926535897931\n"
        "tau = 2 1\n"
        "lambda = 0/1 + 1/1*phi\n"
        "eta = 1/1 - 1/1*phi\n"
        "seed = 99\n";
    const tce::ParamFile pf = tce::parse_params_text(text);
    CHECK(pf.params.d == 2);
    CHECK(pf.seed == 99);
    REQUIRE(pf.params.lambda_exact.has_value());
    CHECK(*pf.params.lambda_exact == GoldenRational::phi());
    REQUIRE(pf.params.golden_k.has_value());
    CHECK(*pf.params.golden_k == 1);
    CHECK(pf.params.tau == std::vector<int>{1, 0});

    const std::string path = temp_path("tce_params_roundtrip.txt");
    tce::write_params(path, pf.params, pf.seed);
    const tce::ParamFile back = tce::load_params(path);
    CHECK(*back.params.lambda_exact == *pf.params.lambda_exact);
    CHECK(*back.params.eta_exact == *pf.params.eta_exact);
    CHECK(back.seed == 99);
    CHECK(back.params.alpha == pf.params.alpha);
    std::remove(path.c_str());
}

TEST_CASE("parameter text: decimal translation lengths are accepted") {
    const tce::ParamFile pf = tce::parse_params_text(
        "alpha = 0.5 2.0\ntau = 2 1\nlambda = 0.61\neta = 0.3\n");
    CHECK_FALSE(pf.params.lambda_exact.has_value());
    CHECK_FALSE(pf.params.golden_k.has_value());
    CHECK(pf.params.lambda == 0.61);
}

TEST_CASE("parameter text: malformed inputs are rejected with context") {
    CHECK_THROWS_AS(tce::parse_params_text("alpha = 0.5 2.0\ntau = 2 1\nlambda = 0.61\n"),
                    std::domain_error);  // missing eta
    CHECK_THROWS_AS(tce::parse_params_text(
                        "d = 3\nalpha = 0.5 2.0\ntau = 2 1\nlambda = 0.61\neta = 0.3\n"),
                    std::domain_error);  // d disagrees
    CHECK_THROWS_AS(tce::parse_params_text(
                        "alpha = 0.5 2.0\ntau = 2 1\nlambda = what\neta = 0.3\n"),
                    std::domain_error);
    CHECK_THROWS_AS(tce::parse_params_text(
                        "alpha = 1.6 1.6\ntau = 2 1\nlambda = 0.61\neta = 0.3\n"),
                    std::domain_error);  // |alpha| >= pi
}

TEST_CASE("CSV output is deterministic") {
    auto make = [] {
        tce::CsvWriter csv({"a", "b"});
        csv.add_row({tce::format_double(1.0 / 3), tce::format_double(kPi)});
        csv.add_row({"x", "y"});
        return csv.str();
    };
    CHECK(make() == make());
    CHECK(make().substr(0, 4) == "a,b\n");
    tce::CsvWriter csv({"a"});
    CHECK_THROWS_AS(csv.add_row({"1", "2"}), std::domain_error);
}

TEST_CASE("SVG scatter writes a standalone document") {
    tce::SvgScatter plot;
    plot.title = "probe";
    plot.points.push_back({0.0, 0.0, 1, 1.0});
    plot.points.push_back({1.0, 0.5, 2, 1.0});
    plot.segments.push_back({0.0, 0.0, 1.0, 0.5});
    const std::string path = temp_path("tce_probe.svg");
    plot.write(path);
    std::ifstream f(path);
    std::string first;
    std::getline(f, first);
    CHECK(first.substr(0, 5) == "<?xml");
    std::string all((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(all.find("</svg>") != std::string::npos);
    CHECK(all.find("circle") != std::string::npos);
    std::remove(path.c_str());
}
