#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "dotprod/io.hpp"
#include "oracle.hpp"

using namespace dotprod;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("CSV loads integers, fractions, decimals and comments") {
    std::istringstream in(
        "# a comment\n"
        "1,2\n"
        "3/2, -5/3\n"
        "0.25,0.1\n"
        "\n"
        "-4,.5\n");
    const PointSet set = load_pointset(in, "points.csv");
    REQUIRE(set.size() == 4);
    CHECK(set[0] == Point{1, 2});
    CHECK(set[1] == Point{Rational(3, 2), Rational(-5, 3)});
    CHECK(set[2] == Point{Rational(1, 4), Rational(1, 10)});
    CHECK(set[3] == Point{-4, Rational(1, 2)});
}

TEST_CASE("CSV errors carry the line number") {
    std::istringstream three("1,2\n3,4,5\n");
    CHECK_THROWS_WITH(load_pointset(three, "p.csv"),
                      ContainsSubstring("p.csv:2") && ContainsSubstring("got 3"));

    std::istringstream dup("1,2\n# fine\n1,2\n");
    CHECK_THROWS_WITH(load_pointset(dup, "p.csv"),
                      ContainsSubstring("p.csv:3") && ContainsSubstring("duplicate"));

    std::istringstream bad("1,x\n");
    CHECK_THROWS_WITH(load_pointset(bad, "p.csv"),
                      ContainsSubstring("p.csv:1") && ContainsSubstring("malformed"));

    std::istringstream one("17\n");
    CHECK_THROWS_WITH(load_pointset(one, "p.csv"), ContainsSubstring("expected 2 fields"));
}

TEST_CASE("save/load round trip is the identity") {
    oracle::Gen gen(404);
    for (int trial = 0; trial < 30; ++trial) {
        const PointSet set = gen.mixed_set(static_cast<std::size_t>(gen.int_in(1, 40)));
        std::ostringstream out;
        save_pointset(out, set);
        std::istringstream in(out.str());
        CHECK(load_pointset(in) == set);
    }
}

TEST_CASE("decimal fields parse exactly, not through doubles") {
    std::istringstream in("0.1,0.3\n");
    const PointSet set = load_pointset(in);
    CHECK(set[0].x == Rational(1, 10));
    CHECK(set[0].y == Rational(3, 10));
    CHECK(set[0].x * 10 == 1);
}
