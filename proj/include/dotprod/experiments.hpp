#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dotprod/adaptability.hpp"
#include "dotprod/constructions.hpp"
#include "dotprod/counting.hpp"
#include "dotprod/detail/leastsq.hpp"
#include "dotprod/detail/rng.hpp"

namespace dotprod {

struct FitResult {
    double slope = 0.0;
    double residual = 0.0;
};

/// Least-squares slope of ln(count) against ln(n) over the rows with a
/// positive count; the slope is the empirical growth exponent.
inline FitResult fit_exponent(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& rows) {
    std::vector<std::pair<double, double>> logs;
    for (const auto& [n, count] : rows)
        if (count >= 1)
            logs.emplace_back(std::log(static_cast<double>(n)),
                              std::log(static_cast<double>(count)));
    if (logs.size() < 3) throw std::invalid_argument("insufficient data");
    const auto fit = detail::fit_line(logs);
    return {fit.slope, fit.residual_rms};
}

struct ExperimentRow {
    std::uint64_t n = 0;
    std::optional<double> epsilon;
    std::uint64_t triples = 0;
    std::uint64_t incidences = 0;
    std::uint64_t elapsed_ms = 0;
};

struct BoundCheck {
    std::string name;
    bool pass = true;
    bool asserted = false;  // checks with pinned constants fail the run; others report
    std::string detail;
};

struct ExperimentReport {
    ConstructionSpec family;
    std::vector<ExperimentRow> rows;
    std::optional<double> fitted_exponent;
    std::optional<double> fit_residual;
    std::vector<BoundCheck> bound_checks;
    std::vector<std::string> warnings;

    bool asserted_checks_pass() const {
        for (const auto& check : bound_checks)
            if (check.asserted && !check.pass) return false;
        return true;
    }
};

namespace detail {

inline std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline void fit_report_rows(ExperimentReport& report) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;
    for (const auto& row : report.rows) counts.emplace_back(row.n, row.triples);
    try {
        const auto fit = fit_exponent(counts);
        report.fitted_exponent = fit.slope;
        report.fit_residual = fit.residual;
    } catch (const std::invalid_argument&) {
        report.warnings.emplace_back("insufficient data for an exponent fit");
    }
}

// Separated-set budget n^(4/3) * eps^-1 * log2(eps^-1). Only the shape of
// the bound is known, not its constant, so the measured multiplier C(n) is
// reported, never asserted.
inline std::optional<double> separated_constant(std::uint64_t n, double epsilon,
                                                std::uint64_t triples) {
    const double inv = 1.0 / epsilon;
    const double budget = std::pow(static_cast<double>(n), 4.0 / 3.0) * inv * std::log2(inv);
    if (!(budget > 0)) return std::nullopt;
    return static_cast<double>(triples) / budget;
}

class StopwatchMs {
public:
    StopwatchMs() : start_(std::chrono::steady_clock::now()) {}
    std::uint64_t elapsed() const {
        return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - start_)
                                              .count());
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// Generates the family at each n, counts by the quadratic pathway, fits the
/// growth exponent, and evaluates the bound checks: the 5n^2 cap is asserted
/// (when its hypotheses hold), brute force must agree at small n, and for
/// separated families the unknown-constant budget is reported.
inline ExperimentReport run_scaling(const ConstructionSpec& family,
                                    std::vector<std::uint64_t> n_list, const DotPair& d,
                                    unsigned threads = 0) {
    std::sort(n_list.begin(), n_list.end());
    ExperimentReport report;
    report.family = family;
    const bool zero_target = d.alpha == 0 || d.beta == 0;
    if (zero_target)
        report.warnings.emplace_back(
            "zero dot-product target: the quadratic cap does not apply and is not checked");

    for (const std::uint64_t n : n_list) {
        ConstructionSpec spec = family;
        spec.n = n;
        spec.seed = detail::derive_seed(family.seed, n);
        const PointSet set = generate(spec);

        detail::StopwatchMs clock;
        const auto profile = incidence_profile(set, d, threads);
        ExperimentRow row;
        row.n = n;
        row.triples = profile.total_triples;
        row.incidences = profile.total_incidences;
        row.elapsed_ms = clock.elapsed();

        if (n <= 200) {
            const std::uint64_t brute = count_bruteforce(set, d);
            report.bound_checks.push_back({"brute-agreement(n=" + std::to_string(n) + ")",
                                           brute == profile.total_triples, true,
                                           "brute=" + std::to_string(brute) +
                                               " quadratic=" + std::to_string(profile.total_triples)});
        }
        if (!zero_target) {
            const std::uint64_t cap = 5 * n * n;
            report.bound_checks.push_back({"general-bound(n=" + std::to_string(n) + ")",
                                           profile.total_triples <= cap, true,
                                           std::to_string(profile.total_triples) +
                                               " <= " + std::to_string(cap)});
        }
        if (family.kind == ConstructionKind::grid ||
            family.kind == ConstructionKind::perturbed_grid) {
            const double s_d =
                family.kind == ConstructionKind::grid ? 2.0 : to_double(family.s);
            const double epsilon = std::pow(static_cast<double>(n), -1.0 / s_d);
            row.epsilon = epsilon;
            if (const auto c = detail::separated_constant(n, epsilon, row.triples))
                report.bound_checks.push_back({"separated-constant(n=" + std::to_string(n) + ")",
                                               true, false, "C=" + detail::fmt3(*c)});
        }
        report.rows.push_back(row);
    }
    detail::fit_report_rows(report);
    return report;
}

/// Separated-family run: perturbed grid at eps = n^(-1/s) per n, exact
/// separation verification, and the measured budget constants C(n) with
/// their log-log trend slope (asserted non-increasing up to 0.1).
inline ExperimentReport run_separation_experiment(std::vector<std::uint64_t> n_list,
                                                  const Rational& s, const DotPair& d,
                                                  std::uint64_t seed, unsigned threads = 0) {
    std::sort(n_list.begin(), n_list.end());
    ExperimentReport report;
    report.family = {ConstructionKind::perturbed_grid, 0, 1, 1, s, seed};
    if (!(s > Rational(3, 2) && s <= 2))
        report.warnings.emplace_back("s outside the recommended range (3/2, 2]");

    const double s_d = to_double(s);
    std::vector<std::pair<double, double>> constant_logs;
    std::vector<std::pair<double, double>> incidence_logs;
    for (const std::uint64_t n : n_list) {
        const std::uint64_t sub_seed = detail::derive_seed(seed, n);
        const PointSet set = perturbed_grid(n, s, sub_seed);

        const Rational min_sq = min_separation_sq(set, threads);
        const bool sep_ok = separation_condition_holds(min_sq, n, s);
        report.bound_checks.push_back({"separation(n=" + std::to_string(n) + ")", sep_ok, true,
                                       "min|p-q|^2 = " + to_fraction_string(min_sq)});

        detail::StopwatchMs clock;
        const auto profile = incidence_profile(set, d, threads);
        ExperimentRow row;
        row.n = n;
        row.epsilon = std::pow(static_cast<double>(n), -1.0 / s_d);
        row.triples = profile.total_triples;
        row.incidences = profile.total_incidences;
        row.elapsed_ms = clock.elapsed();
        report.rows.push_back(row);

        if (const auto c = detail::separated_constant(n, *row.epsilon, row.triples)) {
            report.bound_checks.push_back(
                {"constant(n=" + std::to_string(n) + ")", true, false, "C=" + detail::fmt3(*c)});
            if (row.triples > 0)
                constant_logs.emplace_back(std::log(static_cast<double>(n)), std::log(*c));
        }
        if (row.incidences > 0)
            incidence_logs.emplace_back(std::log(static_cast<double>(n)),
                                        std::log(static_cast<double>(row.incidences)));
    }

    if (constant_logs.size() >= 2) {
        const double slope = detail::fit_line(constant_logs).slope;
        report.bound_checks.push_back(
            {"constant-trend", slope <= 0.1, true, "slope=" + detail::fmt3(slope)});
    } else {
        report.warnings.emplace_back("too few nonzero counts for a constant trend");
    }
    if (incidence_logs.size() >= 3) {
        const double slope = detail::fit_line(incidence_logs).slope;
        report.bound_checks.push_back(
            {"incidence-exponent", true, false, "slope=" + detail::fmt3(slope)});
    }
    detail::fit_report_rows(report);
    return report;
}

}  // namespace dotprod
