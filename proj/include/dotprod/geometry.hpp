#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dotprod/rational.hpp"

namespace dotprod {

struct Point {
    Rational x;
    Rational y;

    bool is_origin() const { return x == 0 && y == 0; }

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

/// Duplicate-free, insertion-ordered collection of exact points. Iteration
/// order is deterministic so every count derived from it is reproducible.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::string provenance) : provenance_(std::move(provenance)) {}

    void add(Point p) {
        if (!index_.emplace(p.x, p.y).second)
            throw std::invalid_argument("duplicate point (" + to_fraction_string(p.x) + "," +
                                        to_fraction_string(p.y) + ")");
        points_.push_back(std::move(p));
    }

    bool contains(const Point& p) const { return index_.count({p.x, p.y}) != 0; }

    std::size_t size() const { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }

    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

private:
    std::vector<Point> points_;
    std::set<std::pair<Rational, Rational>> index_;
    std::string provenance_;
};

/// Line a*x + b*y = c over the integers with gcd(|a|,|b|,|c|) = 1 and the
/// first nonzero of (a, b) positive. Two values are field-wise equal exactly
/// when they describe the same point locus, so the triple doubles as a key.
struct CanonicalLine {
    Integer a;
    Integer b;
    Integer c;

    friend bool operator==(const CanonicalLine& l, const CanonicalLine& r) {
        return l.a == r.a && l.b == r.b && l.c == r.c;
    }
    friend bool operator!=(const CanonicalLine& l, const CanonicalLine& r) { return !(l == r); }
    friend bool operator<(const CanonicalLine& l, const CanonicalLine& r) {
        if (l.a != r.a) return l.a < r.a;
        if (l.b != r.b) return l.b < r.b;
        return l.c < r.c;
    }
};

/// Reduced, sign-normalized direction of a line through the origin.
/// Antipodal points share a key by construction.
struct RadialDirection {
    Integer dx;
    Integer dy;

    friend bool operator==(const RadialDirection& l, const RadialDirection& r) {
        return l.dx == r.dx && l.dy == r.dy;
    }
    friend bool operator!=(const RadialDirection& l, const RadialDirection& r) { return !(l == r); }
    friend bool operator<(const RadialDirection& l, const RadialDirection& r) {
        if (l.dx != r.dx) return l.dx < r.dx;
        return l.dy < r.dy;
    }
};

inline Rational dot(const Point& p, const Point& q) { return p.x * q.x + p.y * q.y; }

inline Rational squared_distance(const Point& p, const Point& q) {
    const Rational dx = p.x - q.x;
    const Rational dy = p.y - q.y;
    return dx * dx + dy * dy;
}

namespace detail {

// Clears denominators of (u, v, w) and reduces to the canonical integer triple.
inline void canonicalize_triple(const Rational& u, const Rational& v, const Rational& w,
                                Integer& a, Integer& b, Integer& c) {
    using boost::multiprecision::abs;
    const Integer l = int_lcm(int_lcm(denominator(u), denominator(v)), denominator(w));
    a = numerator(u) * (l / denominator(u));
    b = numerator(v) * (l / denominator(v));
    c = numerator(w) * (l / denominator(w));
    Integer g = int_gcd(int_gcd(abs(a), abs(b)), abs(c));
    if (g > 1) {
        a /= g;
        b /= g;
        c /= g;
    }
    if (a < 0 || (a == 0 && b < 0)) {
        a = -a;
        b = -b;
        c = -c;
    }
}

}  // namespace detail

/// Canonical form of { z : p . z = alpha }. Absent for the origin: the locus
/// is empty for alpha != 0 and the whole plane for alpha = 0, neither a line.
inline std::optional<CanonicalLine> alpha_line(const Point& p, const Rational& alpha) {
    if (p.is_origin()) return std::nullopt;
    CanonicalLine line;
    detail::canonicalize_triple(p.x, p.y, alpha, line.a, line.b, line.c);
    return line;
}

inline RadialDirection radial_direction(const Point& p) {
    if (p.is_origin()) throw std::invalid_argument("no radial line for the origin");
    RadialDirection d;
    Integer unused;
    detail::canonicalize_triple(p.x, p.y, Rational(0), d.dx, d.dy, unused);
    return d;
}

/// True iff the alpha-line of q and the beta-line of r are the same line,
/// decided as exact proportionality of (q.x, q.y, alpha) and (r.x, r.y, beta).
inline bool lines_coincide(const Point& q, const Rational& alpha, const Point& r,
                           const Rational& beta) {
    if (alpha == 0 || beta == 0 || q.is_origin() || r.is_origin())
        throw std::invalid_argument(
            "coincidence predicate requires nonzero targets and non-origin points");
    return q.x * beta == r.x * alpha && q.y * beta == r.y * alpha;
}

}  // namespace dotprod

template <>
struct std::hash<dotprod::CanonicalLine> {
    std::size_t operator()(const dotprod::CanonicalLine& l) const {
        std::size_t h = std::hash<dotprod::Integer>{}(l.a);
        h ^= std::hash<dotprod::Integer>{}(l.b) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= std::hash<dotprod::Integer>{}(l.c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};
