#include <catch2/catch_amalgamated.hpp>

#include "dotprod/geometry.hpp"
#include "oracle.hpp"

using namespace dotprod;

namespace {

// Independent fraction arithmetic over machine ints for cross-checking dot.
struct SmallFrac {
    long long num, den;
    SmallFrac reduce() const {
        long long g = std::gcd(std::abs(num), den);
        return {num / g, den / g};
    }
};

SmallFrac mul(SmallFrac a, SmallFrac b) { return SmallFrac{a.num * b.num, a.den * b.den}.reduce(); }
SmallFrac add(SmallFrac a, SmallFrac b) {
    return SmallFrac{a.num * b.den + b.num * a.den, a.den * b.den}.reduce();
}

}  // namespace

TEST_CASE("dot products are exact") {
    CHECK(dot({1, 1}, {1, 1}) == 2);
    CHECK(dot({1, 0}, {0, 1}) == 0);
    const Rational got = dot({Rational(1, 2), Rational(1, 3)}, {3, 6});
    CHECK(got == Rational(7, 2));
    // independent small-fraction evaluation of the same product
    const SmallFrac expect = add(mul({1, 2}, {3, 1}), mul({1, 3}, {6, 1}));
    CHECK(got == Rational(expect.num, expect.den));
}

TEST_CASE("squared distance") {
    CHECK(squared_distance({0, 0}, {1, 0}) == 1);
    CHECK(squared_distance({0, 0}, {1, 1}) == 2);
    CHECK(squared_distance({Rational(1, 2), 0}, {0, Rational(1, 2)}) == Rational(1, 2));
}

TEST_CASE("alpha_line canonical forms") {
    const auto l1 = alpha_line({1, 0}, 1);
    REQUIRE(l1.has_value());
    CHECK(l1->a == 1);
    CHECK(l1->b == 0);
    CHECK(l1->c == 1);

    // different point and target, same locus: canonical forms must collide
    const auto l2 = alpha_line({2, 0}, 2);
    REQUIRE(l2.has_value());
    CHECK(*l1 == *l2);

    CHECK_FALSE(alpha_line({0, 0}, 1).has_value());
    CHECK_FALSE(alpha_line({0, 0}, 0).has_value());
}

TEST_CASE("alpha_line canonicalization invariants hold on random input") {
    oracle::Gen gen(11);
    for (int i = 0; i < 2000; ++i) {
        Point p = gen.point();
        if (p.is_origin()) continue;
        const Rational alpha = gen.rational();
        const auto line = alpha_line(p, alpha);
        REQUIRE(line.has_value());
        CHECK(!(line->a == 0 && line->b == 0));
        using boost::multiprecision::abs;
        const Integer g = int_gcd(int_gcd(abs(line->a), abs(line->b)), abs(line->c));
        CHECK(g == 1);
        CHECK((line->a > 0 || (line->a == 0 && line->b > 0)));
    }
}

TEST_CASE("points on the alpha-line satisfy the canonical equation and conversely") {
    oracle::Gen gen(12);
    for (int i = 0; i < 2000; ++i) {
        Point p = gen.point();
        if (p.is_origin()) continue;
        const Rational alpha = gen.rational();
        const auto line = alpha_line(p, alpha);
        REQUIRE(line.has_value());
        // sample a point z with dot(p, z) = alpha by solving for the free coordinate
        Point z;
        if (p.y != 0) {
            z.x = gen.rational();
            z.y = (alpha - p.x * z.x) / p.y;
        } else {
            z.x = alpha / p.x;
            z.y = gen.rational();
        }
        CHECK(dot(p, z) == alpha);
        CHECK(Rational(line->a) * z.x + Rational(line->b) * z.y == Rational(line->c));
        // conversely, any solution of the canonical equation has dot alpha
        Point w;
        if (line->b != 0) {
            w.x = gen.rational();
            w.y = (Rational(line->c) - Rational(line->a) * w.x) / Rational(line->b);
        } else {
            w.x = Rational(line->c) / Rational(line->a);
            w.y = gen.rational();
        }
        CHECK(dot(p, w) == alpha);
    }
}

TEST_CASE("radial directions reduce and normalize sign") {
    CHECK(radial_direction({2, 4}) == RadialDirection{1, 2});
    CHECK(radial_direction({-1, -2}) == RadialDirection{1, 2});
    CHECK(radial_direction({3, 0}) == RadialDirection{1, 0});
    CHECK(radial_direction({0, -5}) == RadialDirection{0, 1});
    CHECK_THROWS_WITH(radial_direction({0, 0}), "no radial line for the origin");
}

TEST_CASE("radial direction is invariant under nonzero scaling") {
    oracle::Gen gen(13);
    for (int i = 0; i < 1000; ++i) {
        Point p = gen.point();
        if (p.is_origin()) continue;
        Rational t = gen.rational();
        if (t == 0) continue;
        const Point scaled{p.x * t, p.y * t};
        CHECK(radial_direction(p) == radial_direction(scaled));
    }
}

TEST_CASE("lines_coincide matches the worked cases") {
    CHECK(lines_coincide({1, 0}, 1, {2, 0}, 2));
    CHECK_FALSE(lines_coincide({1, 0}, 1, {0, 1}, 1));
    CHECK(lines_coincide({1, 2}, 1, {2, 4}, 2));  // r = (beta/alpha) q
    CHECK_THROWS_WITH(lines_coincide({1, 0}, 0, {2, 0}, 2),
                      "coincidence predicate requires nonzero targets and non-origin points");
    CHECK_THROWS_AS(lines_coincide({0, 0}, 1, {2, 0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(lines_coincide({1, 0}, 1, {2, 0}, 0), std::invalid_argument);
}

TEST_CASE("lines_coincide is equivalent to canonical-line equality") {
    oracle::Gen gen(14);
    int coincident_seen = 0;
    for (int i = 0; i < 4000; ++i) {
        Point q = gen.positive_point();
        const Rational alpha = gen.positive_rational();
        const Rational beta = gen.positive_rational();
        Point r;
        if (i % 2 == 0) {
            r = gen.positive_point();
        } else {
            const Rational lam = beta / alpha;  // engineered coincidence
            r = {q.x * lam, q.y * lam};
        }
        const bool coincide = lines_coincide(q, alpha, r, beta);
        CHECK(coincide == (*alpha_line(q, alpha) == *alpha_line(r, beta)));
        if (coincide) {
            ++coincident_seen;
            CHECK(radial_direction(q) == radial_direction(r));
            CHECK(q.x * beta == r.x * alpha);
            CHECK(q.y * beta == r.y * alpha);
            // positive targets put q and r on the same side of the origin
            CHECK(q.x * r.x + q.y * r.y > 0);
        }
    }
    CHECK(coincident_seen >= 2000);
}

TEST_CASE("operations are pure") {
    const Point p{Rational(3, 7), Rational(-2, 5)};
    const Point q{Rational(1, 3), Rational(4, 9)};
    CHECK(dot(p, q) == dot(p, q));
    CHECK(*alpha_line(p, Rational(5, 3)) == *alpha_line(p, Rational(5, 3)));
    CHECK(radial_direction(p) == radial_direction(p));
}

TEST_CASE("point sets reject duplicates and keep insertion order") {
    PointSet set;
    set.add({1, 2});
    set.add({Rational(1, 2), 2});
    CHECK_THROWS_AS(set.add({1, 2}), std::invalid_argument);
    CHECK(set.size() == 2);
    CHECK(set[0] == Point{1, 2});
    CHECK(set[1] == Point{Rational(1, 2), 2});
    CHECK(set.contains({1, 2}));
    CHECK_FALSE(set.contains({2, 1}));
    // equal values in different written forms are the same point
    CHECK_THROWS_AS(set.add({Rational(2, 4), 2}), std::invalid_argument);
}
