#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dotprod/geometry.hpp"
#include "dotprod/rational.hpp"

namespace dotprod::detail {

using int128 = __int128;

/// Caller guarantees |v| < 2^126.
inline int128 to_i128(const Integer& v) {
    using boost::multiprecision::abs;
    const Integer a = abs(v);
    const auto lo = static_cast<std::uint64_t>(a & 0xffffffffffffffffull);
    const auto hi = static_cast<std::uint64_t>(a >> 64);
    int128 r = (static_cast<int128>(hi) << 64) | static_cast<int128>(lo);
    return v < 0 ? -r : r;
}

inline Integer from_i128(int128 v) {
    const bool neg = v < 0;
    unsigned __int128 a = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    Integer r = static_cast<std::uint64_t>(a >> 64);
    r <<= 64;
    r |= static_cast<std::uint64_t>(a & 0xffffffffffffffffull);
    return neg ? -r : r;
}

/// Conservative: true iff |a*b| certainly stays within ~2^124, leaving
/// headroom for one addition inside an __int128 accumulator.
inline bool mul_fits_i128(const Integer& a, const Integer& b) {
    using boost::multiprecision::abs;
    using boost::multiprecision::msb;
    if (a == 0 || b == 0) return true;
    return msb(abs(a)) + msb(abs(b)) + 2 <= 124;
}

/// Point set over a common denominator: point i is (xs[i]/denom, ys[i]/denom).
/// When every coordinate fits comfortably in int64 the narrow lanes are
/// populated and quadratic kernels run on machine integers.
struct ScaledPoints {
    Integer denom = 1;
    std::vector<Integer> xs, ys;
    Integer max_abs = 0;
    bool narrow = false;
    std::vector<std::int64_t> x64, y64;

    std::size_t size() const { return xs.size(); }
};

inline ScaledPoints scale_points(const PointSet& points) {
    using boost::multiprecision::abs;
    ScaledPoints s;
    s.denom = 1;
    for (const Point& p : points) {
        s.denom = int_lcm(s.denom, denominator(p.x));
        s.denom = int_lcm(s.denom, denominator(p.y));
    }
    s.xs.reserve(points.size());
    s.ys.reserve(points.size());
    for (const Point& p : points) {
        Integer sx = numerator(p.x) * (s.denom / denominator(p.x));
        Integer sy = numerator(p.y) * (s.denom / denominator(p.y));
        if (abs(sx) > s.max_abs) s.max_abs = abs(sx);
        if (abs(sy) > s.max_abs) s.max_abs = abs(sy);
        s.xs.push_back(std::move(sx));
        s.ys.push_back(std::move(sy));
    }
    s.narrow = s.max_abs <= Integer(1) << 62;
    if (s.narrow) {
        s.x64.reserve(s.size());
        s.y64.reserve(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            s.x64.push_back(s.xs[i].convert_to<std::int64_t>());
            s.y64.push_back(s.ys[i].convert_to<std::int64_t>());
        }
    }
    return s;
}

/// t * denom^2 when that is an integer; otherwise no scaled dot product
/// (always an integer) can equal t, and the fiber is empty.
inline std::optional<Integer> integer_target(const Rational& t, const Integer& denom) {
    const Integer n = numerator(t) * denom * denom;
    const Integer& d = denominator(t);
    if (n % d != 0) return std::nullopt;
    return n / d;
}

}  // namespace dotprod::detail
