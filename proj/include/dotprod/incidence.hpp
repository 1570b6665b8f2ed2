#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dotprod/adaptability.hpp"
#include "dotprod/constructions.hpp"
#include "dotprod/counting.hpp"
#include "dotprod/detail/leastsq.hpp"
#include "dotprod/detail/rng.hpp"
#include "dotprod/geometry.hpp"

namespace dotprod {

/// Dyadic histogram of the per-point line counts: bucket (j, k) holds the
/// points with 2^j <= |L_alpha(p)| < 2^(j+1) and 2^k <= |L_beta(p)| < 2^(k+1).
/// Index -1 holds zero counts, making the buckets a true partition of P.
struct DyadicStats {
    std::map<std::pair<int, int>, std::uint64_t> buckets;
    int j_max = -1;
    int k_max = -1;
    std::optional<Rational> epsilon_sq;  // set when the set's separation is known
};

namespace detail {

inline int dyadic_index(std::uint64_t count) {
    return count == 0 ? -1 : static_cast<int>(std::bit_width(count)) - 1;
}

}  // namespace detail

inline DyadicStats dyadic_decompose(const IncidenceProfile& profile,
                                    std::optional<Rational> epsilon_sq = std::nullopt) {
    DyadicStats stats;
    stats.epsilon_sq = std::move(epsilon_sq);
    for (const auto& pc : profile.per_point) {
        const int j = detail::dyadic_index(pc.count_alpha);
        const int k = detail::dyadic_index(pc.count_beta);
        ++stats.buckets[{j, k}];
        if (j > stats.j_max) stats.j_max = j;
        if (k > stats.k_max) stats.k_max = k;
    }
    return stats;
}

struct DyadicIdentityReport {
    std::uint64_t i_lower = 0, i_total = 0, i_upper = 0;
    std::uint64_t pi_lower = 0, pi_total = 0, pi_upper = 0;
    bool pass = false;
};

/// Arithmetic brackets the dyadic partition forces: with g = 2^j (0 for the
/// -1 bucket) each side satisfies g <= count <= 2g - 1, so
///   sum |P_{j,k}| (g_j + g_k)       <= I  <= sum |P_{j,k}| (u_j + u_k)
///   sum |P_{j,k}|  g_j * g_k        <= Pi <= sum |P_{j,k}| u_j * u_k
/// with u = 2g - 1. These are identities of the definitions, not estimates;
/// any failure is an implementation defect.
inline DyadicIdentityReport check_dyadic_identities(const DyadicStats& stats,
                                                    const IncidenceProfile& profile) {
    DyadicIdentityReport report;
    report.i_total = profile.total_incidences;
    report.pi_total = profile.total_triples;
    for (const auto& [jk, count] : stats.buckets) {
        const auto [j, k] = jk;
        const std::uint64_t gj = j < 0 ? 0 : std::uint64_t{1} << j;
        const std::uint64_t gk = k < 0 ? 0 : std::uint64_t{1} << k;
        const std::uint64_t uj = j < 0 ? 0 : 2 * gj - 1;
        const std::uint64_t uk = k < 0 ? 0 : 2 * gk - 1;
        report.i_lower += count * (gj + gk);
        report.i_upper += count * (uj + uk);
        report.pi_lower += count * gj * gk;
        report.pi_upper += count * uj * uk;
    }
    report.pass = report.i_lower <= report.i_total && report.i_total <= report.i_upper &&
                  report.pi_lower <= report.pi_total && report.pi_total <= report.pi_upper;
    return report;
}

struct LineCapacityReport {
    Rational epsilon_sq;
    std::uint64_t capacity = 0;  // floor(sqrt(2)/eps) + 1
    std::uint64_t max_alpha = 0;
    std::uint64_t max_beta = 0;
    bool pass = false;
};

/// Packing cap for eps-separated subsets of the unit square: a line meets
/// [0,1]^2 in a segment of length at most sqrt(2), and points on it sit at
/// least eps apart, so no alpha- or beta-line can carry more than
/// floor(sqrt(2)/eps) + 1 points (the +1 admits both segment endpoints).
/// Everything is compared in squared form to stay rational.
inline LineCapacityReport check_line_capacity(const PointSet& points, const DotPair& d,
                                              const Rational& epsilon_sq, unsigned threads = 0) {
    if (epsilon_sq <= 0) throw std::invalid_argument("capacity check needs epsilon > 0");
    for (const Point& p : points)
        if (p.x < 0 || p.x > 1 || p.y < 0 || p.y > 1)
            throw std::invalid_argument("capacity check requires points inside the unit square");
    const auto sep = detail::min_separation_sq_indexed(points, threads);
    if (sep.value < epsilon_sq) {
        const Point& a = points[sep.first];
        const Point& b = points[sep.second];
        throw std::invalid_argument("separation precondition violated by points (" +
                                    to_fraction_string(a.x) + "," + to_fraction_string(a.y) +
                                    ") and (" + to_fraction_string(b.x) + "," +
                                    to_fraction_string(b.y) + ")");
    }

    LineCapacityReport report;
    report.epsilon_sq = epsilon_sq;
    // largest t with t^2 * eps_sq <= 2, i.e. t = floor(sqrt(2)/eps)
    Integer t = iroot(2 * denominator(epsilon_sq) / numerator(epsilon_sq), 2);
    while (t * t * numerator(epsilon_sq) > 2 * denominator(epsilon_sq)) --t;
    while ((t + 1) * (t + 1) * numerator(epsilon_sq) <= 2 * denominator(epsilon_sq)) ++t;
    report.capacity = (t + 1).convert_to<std::uint64_t>();

    const auto profile = incidence_profile(points, d, threads);
    for (const auto& pc : profile.per_point) {
        if (pc.count_alpha > report.max_alpha) report.max_alpha = pc.count_alpha;
        if (pc.count_beta > report.max_beta) report.max_beta = pc.count_beta;
    }
    report.pass = report.max_alpha <= report.capacity && report.max_beta <= report.capacity;
    return report;
}

struct IncidenceExponentReport {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;  // (n, I)
    double slope = 0.0;
    double residual = 0.0;
    bool no_incidences = false;
    bool fitted = false;
};

/// Fits ln I against ln n across a construction family. The asymptotic
/// constant behind the n^(4/3) incidence ceiling is unknowable, so this
/// reports the slope; callers assert against it with their own margin.
inline IncidenceExponentReport incidence_exponent_check(const ConstructionSpec& family,
                                                        const std::vector<std::uint64_t>& n_list,
                                                        const DotPair& d, unsigned threads = 0) {
    if (n_list.size() < 3)
        throw std::invalid_argument("exponent check needs at least three sizes");
    IncidenceExponentReport report;
    std::vector<std::pair<double, double>> logs;
    for (const std::uint64_t n : n_list) {
        ConstructionSpec spec = family;
        spec.n = n;
        spec.seed = detail::derive_seed(family.seed, n);
        const PointSet set = generate(spec);
        const auto profile = incidence_profile(set, d, threads);
        report.rows.emplace_back(n, profile.total_incidences);
        if (profile.total_incidences > 0)
            logs.emplace_back(std::log(static_cast<double>(n)),
                              std::log(static_cast<double>(profile.total_incidences)));
    }
    if (logs.empty()) {
        report.no_incidences = true;
        return report;
    }
    if (logs.size() >= 3) {
        const auto fit = detail::fit_line(logs);
        report.slope = fit.slope;
        report.residual = fit.residual_rms;
        report.fitted = true;
    }
    return report;
}

}  // namespace dotprod
