#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dotprod/incidence.hpp"
#include "oracle.hpp"

using namespace dotprod;
using Catch::Matchers::ContainsSubstring;

namespace {

IncidenceProfile profile_from_counts(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts) {
    IncidenceProfile profile;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        profile.per_point.push_back({i, counts[i].first, counts[i].second});
        profile.total_incidences += counts[i].first + counts[i].second;
        profile.total_triples += counts[i].first * counts[i].second;
    }
    return profile;
}

}  // namespace

TEST_CASE("dyadic buckets partition the set") {
    const auto zeros = dyadic_decompose(profile_from_counts({{0, 0}, {0, 0}, {0, 0}}));
    REQUIRE(zeros.buckets.size() == 1);
    CHECK(zeros.buckets.at({-1, -1}) == 3);
    CHECK(zeros.j_max == -1);
    CHECK(zeros.k_max == -1);

    const auto one = dyadic_decompose(profile_from_counts({{5, 1}}));
    CHECK(one.buckets.at({2, 0}) == 1);  // 4 <= 5 < 8

    // apex of the sharp construction: both counts are 50, bucket (5, 5)
    const auto set = sharp_set(101, 1, Rational(3, 2));
    const auto profile = incidence_profile(set, {1, Rational(3, 2)});
    const auto stats = dyadic_decompose(profile);
    CHECK(stats.buckets.at({5, 5}) == 1);
    CHECK(stats.j_max == 5);
    CHECK(stats.k_max == 5);

    oracle::Gen gen(41);
    for (int trial = 0; trial < 10; ++trial) {
        const auto random = gen.positive_set(30);
        const Rational alpha = dot(random[0], random[1]);
        const auto p = incidence_profile(random, {alpha, 1});
        const auto s = dyadic_decompose(p);
        std::uint64_t total = 0;
        for (const auto& [jk, count] : s.buckets) total += count;
        CHECK(total == random.size());
    }
}

TEST_CASE("dyadic bracket identities") {
    const auto empty = check_dyadic_identities(dyadic_decompose(profile_from_counts({{0, 0}})),
                                               profile_from_counts({{0, 0}}));
    CHECK(empty.i_lower == 0);
    CHECK(empty.i_total == 0);
    CHECK(empty.i_upper == 0);
    CHECK(empty.pi_lower == 0);
    CHECK(empty.pi_total == 0);
    CHECK(empty.pi_upper == 0);
    CHECK(empty.pass);

    const auto profile = profile_from_counts({{5, 1}});
    const auto single = check_dyadic_identities(dyadic_decompose(profile), profile);
    CHECK(single.i_lower == 5);  // 4 + 1
    CHECK(single.i_total == 6);
    CHECK(single.i_upper == 8);  // 7 + 1
    CHECK(single.pi_lower == 4);
    CHECK(single.pi_total == 5);
    CHECK(single.pi_upper == 7);
    CHECK(single.pass);

    const auto sharp = sharp_set(101, 1, Rational(3, 2));
    const auto sp = incidence_profile(sharp, {1, Rational(3, 2)});
    CHECK(check_dyadic_identities(dyadic_decompose(sp), sp).pass);

    oracle::Gen gen(42);
    for (int trial = 0; trial < 15; ++trial) {
        const auto set = gen.positive_set(25);
        const Rational alpha = dot(set[0], set[1]);
        const Rational beta = dot(set[2], set[3]);
        const auto p = incidence_profile(set, {alpha, beta});
        CHECK(check_dyadic_identities(dyadic_decompose(p), p).pass);
    }
}

TEST_CASE("line capacity on the unit-square grid") {
    const auto report = check_line_capacity(grid_set(64), {1, 1}, Rational(1, 64));
    CHECK(report.capacity == 12);  // floor(8 sqrt(2)) + 1
    CHECK(report.max_alpha <= 12);
    CHECK(report.max_beta <= 12);
    CHECK(report.pass);

    PointSet two;
    two.add({0, 0});
    two.add({1, 1});
    const auto tiny = check_line_capacity(two, {1, 1}, 1);
    CHECK(tiny.capacity == 2);  // floor(sqrt(2)) + 1
    CHECK(tiny.pass);
}

TEST_CASE("line capacity is attained by maximally packed collinear points") {
    // ten points along x + y = 1 at spacing sqrt(2)/9, plus the generator
    // point (1,1) whose alpha-line at alpha=1 is that diagonal
    PointSet set;
    for (int k = 0; k <= 9; ++k) set.add({Rational(k, 9), 1 - Rational(k, 9)});
    set.add({1, 1});
    const Rational eps_sq(2, 81);
    const auto report = check_line_capacity(set, {1, 1}, eps_sq);
    CHECK(report.capacity == 10);  // (c-1)^2 * 2/81 <= 2 tops out at c = 10
    CHECK(report.max_alpha == 10);
    CHECK(report.pass);
}

TEST_CASE("line capacity enforces its preconditions") {
    PointSet close;
    close.add({0, 0});
    close.add({Rational(1, 10), 0});
    close.add({1, 1});
    CHECK_THROWS_WITH(check_line_capacity(close, {1, 1}, Rational(1, 4)),
                      ContainsSubstring("separation precondition") &&
                          ContainsSubstring("(1/10,0)"));

    PointSet outside;
    outside.add({2, 0});
    outside.add({0, 1});
    CHECK_THROWS_WITH(check_line_capacity(outside, {1, 1}, Rational(1, 4)),
                      ContainsSubstring("unit square"));

    PointSet ok;
    ok.add({0, 0});
    ok.add({1, 1});
    CHECK_THROWS_AS(check_line_capacity(ok, {1, 1}, 0), std::invalid_argument);
}

TEST_CASE("incidence exponent fits") {
    ConstructionSpec sharp_family;
    sharp_family.kind = ConstructionKind::sharp;
    sharp_family.alpha = 1;
    sharp_family.beta = Rational(3, 2);
    const auto report =
        incidence_exponent_check(sharp_family, {101, 201, 401}, {1, Rational(3, 2)});
    REQUIRE(report.fitted);
    // one heavy apex plus n-1 light points: I = 2(n-1), slope 1
    CHECK(report.rows == std::vector<std::pair<std::uint64_t, std::uint64_t>>{
                             {101, 200}, {201, 400}, {401, 800}});
    CHECK(std::abs(report.slope - 1.0) < 0.02);
    CHECK(report.residual < 0.01);

    ConstructionSpec grid_family;
    grid_family.kind = ConstructionKind::grid;
    const auto none = incidence_exponent_check(grid_family, {16, 64, 256}, {3, 3});
    CHECK(none.no_incidences);  // dot products in (0,1]^2 never reach 3

    CHECK_THROWS_AS(incidence_exponent_check(grid_family, {16, 64}, {1, 1}),
                    std::invalid_argument);
}
