#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dotprod/detail/rng.hpp"
#include "dotprod/geometry.hpp"
#include "dotprod/rational.hpp"

namespace dotprod {

enum class ConstructionKind { sharp, zero, grid, random, perturbed_grid };

inline const char* to_string(ConstructionKind k) {
    switch (k) {
        case ConstructionKind::sharp: return "sharp";
        case ConstructionKind::zero: return "zero";
        case ConstructionKind::grid: return "grid";
        case ConstructionKind::random: return "random";
        case ConstructionKind::perturbed_grid: return "perturbed-grid";
    }
    return "?";
}

inline ConstructionKind construction_kind_from_string(const std::string& s) {
    if (s == "sharp") return ConstructionKind::sharp;
    if (s == "zero") return ConstructionKind::zero;
    if (s == "grid") return ConstructionKind::grid;
    if (s == "random") return ConstructionKind::random;
    if (s == "perturbed-grid") return ConstructionKind::perturbed_grid;
    throw std::invalid_argument("unknown construction kind: '" + s + "'");
}

struct ConstructionSpec {
    ConstructionKind kind = ConstructionKind::grid;
    std::uint64_t n = 0;
    Rational alpha = 1;  // sharp only
    Rational beta = 1;   // sharp only
    Rational s = 2;      // perturbed-grid only
    std::uint64_t seed = 0;
};

namespace detail {

inline void place_on_line(PointSet& set, const Rational& target, std::uint64_t count) {
    // y = target - x clipped to the unit square; equally spaced abscissae
    // strictly inside the clipped segment, so segment endpoints (shared with
    // nothing but the square's boundary) are never emitted.
    const Rational lo = target > 1 ? target - 1 : Rational(0);
    const Rational hi = target < 1 ? target : Rational(1);
    const Rational step = (hi - lo) / Rational(count + 1);
    for (std::uint64_t i = 1; i <= count; ++i) {
        const Rational x = lo + step * Rational(i);
        set.add({x, target - x});
    }
}

inline std::uint64_t exact_sqrt(std::uint64_t n, const char* what) {
    const Integer m = iroot(Integer(n), 2);
    if (m * m != n) throw std::invalid_argument(std::string(what) + " requires a perfect-square n");
    return m.convert_to<std::uint64_t>();
}

}  // namespace detail

/// Apex point (1,1) plus floor((n-1)/2) points on y = alpha - x and the
/// remaining ceil((n-1)/2) on y = beta - x (one line when alpha = beta).
/// Every pair (q, r) across the two groups hands the apex one triple.
inline PointSet sharp_set(std::uint64_t n, const Rational& alpha, const Rational& beta) {
    if (n < 3) throw std::invalid_argument("sharp construction needs n >= 3");
    if (!(alpha > 0 && alpha < 2 && beta > 0 && beta < 2))
        throw std::invalid_argument("sharp construction needs targets strictly between 0 and 2");
    PointSet set("sharp(n=" + std::to_string(n) + ", alpha=" + to_fraction_string(alpha) +
                 ", beta=" + to_fraction_string(beta) + ")");
    set.add({1, 1});
    const std::uint64_t first = (n - 1) / 2;
    if (alpha == beta) {
        detail::place_on_line(set, alpha, n - 1);
    } else {
        detail::place_on_line(set, alpha, first);
        detail::place_on_line(set, beta, n - 1 - first);
    }
    return set;
}

/// n/2 points on each positive coordinate axis; every cross-axis dot product
/// vanishes, so zero-target triples grow cubically. The origin is excluded.
inline PointSet zero_set(std::uint64_t n) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("zero construction needs even n >= 4");
    PointSet set("zero(n=" + std::to_string(n) + ")");
    const std::uint64_t half = n / 2;
    for (std::uint64_t k = 1; k <= half; ++k) set.add({Rational(k, half), 0});
    for (std::uint64_t k = 1; k <= half; ++k) set.add({0, Rational(k, half)});
    return set;
}

/// sqrt(n) x sqrt(n) lattice in (0,1]^2 with separation exactly n^(-1/2).
inline PointSet grid_set(std::uint64_t n) {
    const std::uint64_t m = detail::exact_sqrt(n, "grid construction");
    PointSet set("grid(n=" + std::to_string(n) + ")");
    for (std::uint64_t i = 1; i <= m; ++i)
        for (std::uint64_t j = 1; j <= m; ++j) set.add({Rational(i, m), Rational(j, m)});
    return set;
}

/// n distinct points with coordinates k/2^32, k drawn from [1, 2^32] by
/// SplitMix64; whole-point redraw on collision keeps the draw stream
/// independent of collision history length only, preserving determinism.
inline PointSet random_set(std::uint64_t n, std::uint64_t seed) {
    PointSet set("random(n=" + std::to_string(n) + ", seed=" + std::to_string(seed) + ")");
    detail::SplitMix64 rng(seed);
    const Integer two32 = Integer(1) << 32;
    while (set.size() < n) {
        const Rational x(Integer(rng.next_coordinate_numerator()), two32);
        const Rational y(Integer(rng.next_coordinate_numerator()), two32);
        if (!set.contains({x, y})) set.add({x, y});
    }
    return set;
}

/// Grid jittered per coordinate by v/2^32 with |v| <= V, where V is capped
/// twice: V/2^32 <= eps/4 (jitter magnitude) and V/2^31 <= 1/m - eps (two
/// opposing worst-case moves still leave adjacent columns eps apart), for
/// eps = n^(-1/s). At s = 2 the caps force V = 0 and the grid itself is the
/// unique answer, separation meeting the target with equality.
inline PointSet perturbed_grid(std::uint64_t n, const Rational& s, std::uint64_t seed) {
    const std::uint64_t m = detail::exact_sqrt(n, "perturbed-grid construction");
    if (n < 4) throw std::invalid_argument("perturbed-grid construction needs n >= 4");
    if (s <= 0) throw std::invalid_argument("perturbed-grid construction needs s > 0");
    if (s > 2)
        throw std::invalid_argument(
            "separation target n^(-1/s) with s > 2 exceeds the lattice spacing n^(-1/2); no "
            "n-point subset of the unit square can achieve it here");

    // s = p/q in lowest terms; eps = n^(-q/p). iroot gives one-sided integer
    // approximations of 2^t * eps, keeping both caps conservative.
    const auto p = numerator(s).convert_to<unsigned>();
    const auto q = denominator(s).convert_to<unsigned>();
    using boost::multiprecision::pow;
    const Integer nq = pow(Integer(n), q);
    const Integer eps_lo_30 = iroot((Integer(1) << (30 * p)) / nq, p);       // <= 2^30 * eps
    const Integer eps_hi_31 = iroot((Integer(1) << (31 * p)) / nq, p) + 1;   // >= 2^31 * eps
    Integer v_cap = (Integer(1) << 31) / m - eps_hi_31;
    if (v_cap > eps_lo_30) v_cap = eps_lo_30;
    if (v_cap < 0) v_cap = 0;
    const auto v = v_cap.convert_to<std::uint64_t>();

    PointSet set("perturbed-grid(n=" + std::to_string(n) + ", s=" + to_fraction_string(s) +
                 ", seed=" + std::to_string(seed) + ")");
    detail::SplitMix64 rng(seed);
    const Integer two32 = Integer(1) << 32;
    const auto jitter = [&](std::uint64_t idx) -> Rational {
        if (v == 0) return 0;
        std::int64_t draw;
        if (idx == m)  // coordinate 1: stay inside the square, jitter downward only
            draw = -static_cast<std::int64_t>(rng.next_below(v));
        else
            draw = static_cast<std::int64_t>(rng.next_below(2 * v)) - static_cast<std::int64_t>(v);
        return Rational(Integer(draw), two32);
    };
    for (std::uint64_t i = 1; i <= m; ++i)
        for (std::uint64_t j = 1; j <= m; ++j)
            set.add({Rational(i, m) + jitter(i), Rational(j, m) + jitter(j)});
    return set;
}

inline PointSet generate(const ConstructionSpec& spec) {
    switch (spec.kind) {
        case ConstructionKind::sharp: return sharp_set(spec.n, spec.alpha, spec.beta);
        case ConstructionKind::zero: return zero_set(spec.n);
        case ConstructionKind::grid: return grid_set(spec.n);
        case ConstructionKind::random: return random_set(spec.n, spec.seed);
        case ConstructionKind::perturbed_grid: return perturbed_grid(spec.n, spec.s, spec.seed);
    }
    throw std::invalid_argument("unknown construction kind");
}

}  // namespace dotprod
