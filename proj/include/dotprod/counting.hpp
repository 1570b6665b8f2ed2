#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dotprod/detail/parallel.hpp"
#include "dotprod/detail/scaled.hpp"
#include "dotprod/geometry.hpp"

namespace dotprod {

struct DotPair {
    Rational alpha;
    Rational beta;
};

/// Thrown when a bound the pair-decomposition argument guarantees fails to
/// hold; this can only mean an implementation defect, never bad input.
class bound_violation : public std::logic_error {
    using std::logic_error::logic_error;
};

struct PointIncidence {
    std::size_t index;
    std::uint64_t count_alpha;  // |L_alpha(p)|: points of P on p's alpha-line
    std::uint64_t count_beta;
};

/// Per-point line counts plus the two aggregates they determine:
/// I = sum(count_alpha + count_beta) and Pi = sum(count_alpha * count_beta).
struct IncidenceProfile {
    std::vector<PointIncidence> per_point;
    std::uint64_t total_incidences = 0;
    std::uint64_t total_triples = 0;
};

struct PairClassification {
    std::uint64_t a_pairs = 0;
    std::uint64_t b_pairs = 0;
    std::uint64_t triples_from_a = 0;
    std::uint64_t triples_from_b = 0;
    std::map<RadialDirection, std::uint64_t> per_radial_b;
};

namespace detail {

// Widens an exact integer target onto the kernel's arithmetic type. A target
// too large for the narrow kernel cannot equal any scaled dot product there,
// so dropping it is exact, not an approximation.
inline std::optional<int128> narrow_target(const std::optional<Integer>& t) {
    if (!t) return std::nullopt;
    using boost::multiprecision::abs;
    if (abs(*t) > Integer(1) << 125) return std::nullopt;
    return to_i128(*t);
}

template <typename Coord, typename Wide>
void profile_kernel(const std::vector<Coord>& xs, const std::vector<Coord>& ys,
                    const std::optional<Wide>& ta, const std::optional<Wide>& tb,
                    unsigned threads, std::vector<std::uint64_t>& ca,
                    std::vector<std::uint64_t>& cb) {
    const std::size_t n = xs.size();
    if (!ta && !tb) return;
    parallel_for(n, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Coord& xi = xs[i];
            const Coord& yi = ys[i];
            std::uint64_t a = 0, b = 0;
            for (std::size_t j = 0; j < n; ++j) {
                const Wide s = Wide(xi) * xs[j] + Wide(yi) * ys[j];
                if (ta && s == *ta) ++a;
                if (tb && s == *tb) ++b;
            }
            ca[i] = a;
            cb[i] = b;
        }
    });
}

template <typename Coord, typename Wide>
std::uint64_t brute_kernel(const std::vector<Coord>& xs, const std::vector<Coord>& ys,
                           const Wide& ta, const Wide& tb, unsigned threads) {
    const std::size_t n = xs.size();
    std::vector<std::uint64_t> per_point(n, 0);
    parallel_for(n, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            std::uint64_t count = 0;
            for (std::size_t j = 0; j < n; ++j) {
                const Wide s1 = Wide(xs[i]) * xs[j] + Wide(ys[i]) * ys[j];
                if (s1 != ta) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    const Wide s2 = Wide(xs[i]) * xs[k] + Wide(ys[i]) * ys[k];
                    if (s2 == tb) ++count;
                }
            }
            per_point[i] = count;
        }
    });
    std::uint64_t total = 0;
    for (const auto c : per_point) total += c;
    return total;
}

}  // namespace detail

/// Quadratic pathway: one pass over all n^2 exact dot products fills the
/// per-point alpha/beta counts; I and Pi follow by summation.
inline IncidenceProfile incidence_profile(const PointSet& points, const DotPair& d,
                                          unsigned threads = 0) {
    const auto scaled = detail::scale_points(points);
    const auto ta = detail::integer_target(d.alpha, scaled.denom);
    const auto tb = detail::integer_target(d.beta, scaled.denom);
    const std::size_t n = points.size();
    std::vector<std::uint64_t> ca(n, 0), cb(n, 0);

    if (scaled.narrow && detail::mul_fits_i128(scaled.max_abs, scaled.max_abs)) {
        detail::profile_kernel<std::int64_t, detail::int128>(
            scaled.x64, scaled.y64, detail::narrow_target(ta), detail::narrow_target(tb),
            threads, ca, cb);
    } else {
        detail::profile_kernel<Integer, Integer>(scaled.xs, scaled.ys, ta, tb, threads, ca, cb);
    }

    IncidenceProfile profile;
    profile.per_point.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        profile.per_point.push_back({i, ca[i], cb[i]});
        profile.total_incidences += ca[i] + cb[i];
        profile.total_triples += ca[i] * cb[i];
    }
    return profile;
}

/// Cubic oracle pathway: enumerates ordered triples (p,q,r) directly against
/// the defining pair of equations. Points need not be distinct within a
/// triple, matching the set definition being counted.
inline std::uint64_t count_bruteforce(const PointSet& points, const DotPair& d,
                                      unsigned threads = 0) {
    const auto scaled = detail::scale_points(points);
    const auto ta = detail::integer_target(d.alpha, scaled.denom);
    const auto tb = detail::integer_target(d.beta, scaled.denom);
    if (!ta || !tb) return 0;  // a non-integral scaled target has an empty fiber
    if (scaled.narrow && detail::mul_fits_i128(scaled.max_abs, scaled.max_abs)) {
        const auto nta = detail::narrow_target(ta);
        const auto ntb = detail::narrow_target(tb);
        if (!nta || !ntb) return 0;
        return detail::brute_kernel<std::int64_t, detail::int128>(scaled.x64, scaled.y64, *nta,
                                                                  *ntb, threads);
    }
    return detail::brute_kernel<Integer, Integer>(scaled.xs, scaled.ys, *ta, *tb, threads);
}

namespace detail {

struct PairKey64Hash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& p) const {
        auto mix = [](std::uint64_t z) {
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            return z ^ (z >> 31);
        };
        return mix(static_cast<std::uint64_t>(p.first) * 0x9e3779b97f4a7c15ull ^
                   mix(static_cast<std::uint64_t>(p.second)));
    }
};

struct PairKeyWideHash {
    std::size_t operator()(const std::pair<Integer, Integer>& p) const {
        const std::size_t h = std::hash<Integer>{}(p.first);
        return h ^ (std::hash<Integer>{}(p.second) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
    }
};

struct AbTotals {
    std::uint64_t a_pairs = 0;
    std::uint64_t b_pairs = 0;
    std::uint64_t triples_from_a = 0;
    std::uint64_t triples_from_b = 0;
    std::vector<std::uint64_t> per_radial;
};

// Ordered-pair classification. For an A pair the contributing points solve a
// 2x2 integer system with at most one lattice solution; for a B pair with the
// alpha-line of q equal to the beta-line of r, every point on that shared
// line contributes. A cross-only coincidence (beta-line of q = alpha-line of
// r) forces q and r onto one radial line, so the two counting lines are
// parallel and distinct: zero contribution.
template <typename Coord, typename Wide, typename Map>
AbTotals ab_kernel(const std::vector<Coord>& xs, const std::vector<Coord>& ys,
                   const std::optional<Wide>& ta, const std::optional<Wide>& tb, const Wide& a1,
                   const Wide& a2, const Map& point_index,
                   const std::vector<std::uint64_t>& count_alpha,
                   const std::vector<std::uint32_t>& radial_id, std::size_t radial_count,
                   unsigned threads) {
    const std::size_t n = xs.size();
    std::vector<AbTotals> partials(effective_threads(threads) + 1);
    std::atomic<std::size_t> slot{0};
    parallel_for(n, threads, [&](std::size_t lo, std::size_t hi) {
        AbTotals local;
        local.per_radial.assign(radial_count, 0);
        for (std::size_t i = lo; i < hi; ++i) {
            const Wide a1xi = a1 * xs[i], a1yi = a1 * ys[i];
            const Wide a2xi = a2 * xs[i], a2yi = a2 * ys[i];
            for (std::size_t j = 0; j < n; ++j) {
                const bool coincide_ab = a1xi == a2 * xs[j] && a1yi == a2 * ys[j];
                const bool coincide_ba = a2xi == a1 * xs[j] && a2yi == a1 * ys[j];
                if (coincide_ab || coincide_ba) {
                    const std::uint64_t c = coincide_ab ? count_alpha[i] : 0;
                    ++local.b_pairs;
                    local.triples_from_b += c;
                    local.per_radial[radial_id[i]] += c;
                    continue;
                }
                // class A: the two counting lines are distinct, so they meet
                // in at most one point — comfortably under the four-per-pair
                // cap the classification promises
                ++local.a_pairs;
                if (!ta || !tb) continue;
                const Wide det = Wide(xs[i]) * ys[j] - Wide(ys[i]) * xs[j];
                if (det == 0) continue;  // parallel and, in class A, distinct
                const Wide znx = *ta * ys[j] - *tb * Wide(ys[i]);
                const Wide zny = Wide(xs[i]) * *tb - Wide(xs[j]) * *ta;
                if (znx % det != 0 || zny % det != 0) continue;
                if (point_index.find({Coord(znx / det), Coord(zny / det)}) != point_index.end())
                    ++local.triples_from_a;
            }
        }
        partials[slot.fetch_add(1)] = std::move(local);
    });
    AbTotals totals;
    totals.per_radial.assign(radial_count, 0);
    for (const auto& part : partials) {
        totals.a_pairs += part.a_pairs;
        totals.b_pairs += part.b_pairs;
        totals.triples_from_a += part.triples_from_a;
        totals.triples_from_b += part.triples_from_b;
        for (std::size_t k = 0; k < part.per_radial.size(); ++k)
            totals.per_radial[k] += part.per_radial[k];
    }
    return totals;
}

}  // namespace detail

/// Pair-decomposition pathway: classifies every ordered pair (q, r) by
/// whether its cross alpha-/beta-lines are all distinct (class A) or some
/// coincide (class B), counts contributing points per pair, and checks the
/// per-class caps the decomposition guarantees.
inline PairClassification count_via_ab(const PointSet& points, const DotPair& d,
                                       unsigned threads = 0) {
    if (d.alpha == 0 || d.beta == 0)
        throw std::invalid_argument(
            "pair-class decomposition requires nonzero dot-product targets");
    for (const Point& p : points)
        if (p.is_origin())
            throw std::invalid_argument(
                "pair-class decomposition requires an origin-free point set");

    const std::size_t n = points.size();
    const auto profile = incidence_profile(points, d, threads);
    std::vector<std::uint64_t> count_alpha(n);
    for (std::size_t i = 0; i < n; ++i) count_alpha[i] = profile.per_point[i].count_alpha;

    // Dense ids for the distinct radial directions present in P.
    std::map<RadialDirection, std::uint32_t> radial_ids;
    std::vector<std::uint32_t> radial_id(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto key = radial_direction(points[i]);
        const auto [it, inserted] =
            radial_ids.emplace(key, static_cast<std::uint32_t>(radial_ids.size()));
        radial_id[i] = it->second;
    }

    const auto scaled = detail::scale_points(points);
    const auto ta = detail::integer_target(d.alpha, scaled.denom);
    const auto tb = detail::integer_target(d.beta, scaled.denom);
    const Integer a1 = numerator(d.beta) * denominator(d.alpha);
    const Integer a2 = numerator(d.alpha) * denominator(d.beta);

    const bool narrow =
        scaled.narrow && detail::mul_fits_i128(scaled.max_abs, scaled.max_abs) &&
        detail::mul_fits_i128(a1, scaled.max_abs) && detail::mul_fits_i128(a2, scaled.max_abs) &&
        (!ta || detail::mul_fits_i128(*ta, scaled.max_abs)) &&
        (!tb || detail::mul_fits_i128(*tb, scaled.max_abs));

    detail::AbTotals totals;
    if (narrow) {
        std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::size_t,
                           detail::PairKey64Hash>
            index(2 * n + 1);
        for (std::size_t i = 0; i < n; ++i) index.emplace(std::pair{scaled.x64[i], scaled.y64[i]}, i);
        totals = detail::ab_kernel<std::int64_t, detail::int128>(
            scaled.x64, scaled.y64, detail::narrow_target(ta), detail::narrow_target(tb),
            detail::to_i128(a1), detail::to_i128(a2), index, count_alpha, radial_id,
            radial_ids.size(), threads);
    } else {
        std::unordered_map<std::pair<Integer, Integer>, std::size_t, detail::PairKeyWideHash>
            index(2 * n + 1);
        for (std::size_t i = 0; i < n; ++i) index.emplace(std::pair{scaled.xs[i], scaled.ys[i]}, i);
        totals = detail::ab_kernel<Integer, Integer>(scaled.xs, scaled.ys, ta, tb, a1, a2, index,
                                                     count_alpha, radial_id, radial_ids.size(),
                                                     threads);
    }

    PairClassification result;
    result.a_pairs = totals.a_pairs;
    result.b_pairs = totals.b_pairs;
    result.triples_from_a = totals.triples_from_a;
    result.triples_from_b = totals.triples_from_b;
    for (const auto& [key, id] : radial_ids)
        if (totals.per_radial[id] != 0) result.per_radial_b.emplace(key, totals.per_radial[id]);

    if (result.a_pairs + result.b_pairs != static_cast<std::uint64_t>(n) * n)
        throw bound_violation("pair classes do not partition P x P");
    if (result.triples_from_a + result.triples_from_b != profile.total_triples)
        throw bound_violation("pair classes disagree with the incidence profile");
    if (result.triples_from_a > 4 * result.a_pairs)
        throw bound_violation("A-class triples exceed four per pair");
    for (const auto& [key, c] : result.per_radial_b)
        if (c > n)
            throw bound_violation("radial line contributed more than n B-class triples");
    return result;
}

struct GeneralBoundReport {
    std::uint64_t n = 0;
    std::uint64_t triples = 0;
    std::uint64_t bound = 0;  // 5 n^2
    double ratio = 0.0;       // triples / n^2
    bool pass = false;
    PairClassification classification;
};

/// Checks the quadratic cap: class A contributes at most 4 n^2 triples,
/// class B at most n per radial line, hence at most n^2, so the total is at
/// most 5 n^2. The per-class caps are asserted inside count_via_ab; this
/// wraps them with the headline comparison.
inline GeneralBoundReport verify_general_bound(const PointSet& points, const DotPair& d,
                                               unsigned threads = 0) {
    GeneralBoundReport report;
    report.n = points.size();
    report.classification = count_via_ab(points, d, threads);
    report.triples = report.classification.triples_from_a + report.classification.triples_from_b;
    report.bound = 5 * report.n * report.n;
    report.pass = report.triples <= report.bound;
    report.ratio = report.n == 0
                       ? 0.0
                       : static_cast<double>(report.triples) / (static_cast<double>(report.n) * static_cast<double>(report.n));
    return report;
}

}  // namespace dotprod
