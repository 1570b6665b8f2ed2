#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dotprod/experiments.hpp"
#include "dotprod/json_io.hpp"
#include "oracle.hpp"

using namespace dotprod;

namespace {

json stripped(const ExperimentReport& report) {
    json j = experiment_json(report);
    for (auto& row : j["rows"]) row["elapsed_ms"] = 0;
    return j;
}

}  // namespace

TEST_CASE("fit_exponent recovers exact power laws") {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> squares, cubes, flat;
    for (std::uint64_t n : {10ull, 20ull, 40ull, 80ull}) {
        squares.emplace_back(n, n * n);
        cubes.emplace_back(n, 5 * n * n * n);
        flat.emplace_back(n, 7);
    }
    CHECK(std::abs(fit_exponent(squares).slope - 2.0) < 1e-9);
    CHECK(fit_exponent(squares).residual < 1e-9);
    CHECK(std::abs(fit_exponent(cubes).slope - 3.0) < 1e-9);
    CHECK(std::abs(fit_exponent(flat).slope) < 1e-9);

    CHECK_THROWS_WITH(fit_exponent({{4, 16}, {8, 64}}), "insufficient data");
    CHECK_THROWS_WITH(fit_exponent({{4, 0}, {8, 0}, {16, 0}, {32, 1}, {64, 2}}),
                      "insufficient data");
}

TEST_CASE("scaling run over the sharp family") {
    ConstructionSpec family;
    family.kind = ConstructionKind::sharp;
    family.alpha = 1;
    family.beta = Rational(3, 2);
    const auto report = run_scaling(family, {401, 101, 201}, {1, Rational(3, 2)});

    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].n == 101);  // sorted ascending regardless of input order
    CHECK(report.rows[2].n == 401);
    for (const auto& row : report.rows) {
        const std::uint64_t k = (row.n - 1) / 2;
        CHECK(row.triples >= k * k);
    }
    REQUIRE(report.fitted_exponent.has_value());
    CHECK(*report.fitted_exponent >= 1.9);

    bool brute101 = false, general = false;
    for (const auto& check : report.bound_checks) {
        CHECK(check.pass);
        if (check.name == "brute-agreement(n=101)") brute101 = true;
        if (check.name.rfind("general-bound", 0) == 0) general = true;
    }
    CHECK(brute101);
    CHECK(general);
    CHECK(report.asserted_checks_pass());
}

TEST_CASE("scaling run over the zero family skips the quadratic cap") {
    ConstructionSpec family;
    family.kind = ConstructionKind::zero;
    const auto report = run_scaling(family, {8, 16, 32}, {0, 0});
    REQUIRE(report.fitted_exponent.has_value());
    CHECK(*report.fitted_exponent >= 2.9);
    for (const auto& row : report.rows) CHECK(row.triples == 2 * (row.n / 2) * (row.n / 2) * (row.n / 2));
    for (const auto& check : report.bound_checks) {
        CHECK(check.name.rfind("general-bound", 0) != 0);
        CHECK(check.pass);  // brute agreement
    }
    REQUIRE(report.warnings.size() == 1);
    CHECK(report.warnings[0].find("zero dot-product target") != std::string::npos);
}

TEST_CASE("scaling run reports the separated-family constant") {
    ConstructionSpec family;
    family.kind = ConstructionKind::grid;
    const auto report = run_scaling(family, {16, 64, 256}, {1, 1});
    bool constant_seen = false;
    for (const auto& check : report.bound_checks)
        if (check.name.rfind("separated-constant", 0) == 0) {
            constant_seen = true;
            CHECK_FALSE(check.asserted);
        }
    CHECK(constant_seen);
    for (const auto& row : report.rows) {
        REQUIRE(row.epsilon.has_value());
        CHECK(*row.epsilon == std::pow(static_cast<double>(row.n), -0.5));
    }
}

TEST_CASE("empty fibers leave the exponent unfitted") {
    ConstructionSpec family;
    family.kind = ConstructionKind::grid;
    const auto report = run_scaling(family, {16, 64, 256}, {3, 3});
    CHECK_FALSE(report.fitted_exponent.has_value());
    bool warned = false;
    for (const auto& w : report.warnings)
        if (w.find("insufficient data") != std::string::npos) warned = true;
    CHECK(warned);
}

TEST_CASE("separation experiment asserts its exact checks") {
    const auto report = run_separation_experiment({64, 256, 1024}, 2, {1, 1}, 7);
    CHECK(report.asserted_checks_pass());
    int separations = 0;
    for (const auto& check : report.bound_checks) {
        if (check.name.rfind("separation", 0) == 0) {
            ++separations;
            CHECK(check.pass);
            CHECK(check.asserted);
        }
        if (check.name == "constant-trend") CHECK(check.asserted);
    }
    CHECK(separations == 3);
    CHECK(report.warnings.empty());

    const auto flagged =
        run_separation_experiment({64, 256, 1024}, Rational(5, 4), {1, 1}, 7);
    REQUIRE_FALSE(flagged.warnings.empty());
    CHECK(flagged.warnings[0].find("recommended range") != std::string::npos);
}

TEST_CASE("experiment reports are deterministic") {
    const auto a = run_separation_experiment({256, 1024}, 2, {1, 1}, 99, 1);
    const auto b = run_separation_experiment({256, 1024}, 2, {1, 1}, 99, 4);
    CHECK(stripped(a).dump() == stripped(b).dump());

    ConstructionSpec family;
    family.kind = ConstructionKind::random;
    family.seed = 5;
    const auto c = run_scaling(family, {20, 40, 80}, {1, 1}, 1);
    const auto d2 = run_scaling(family, {20, 40, 80}, {1, 1}, 3);
    CHECK(stripped(c).dump() == stripped(d2).dump());
}
