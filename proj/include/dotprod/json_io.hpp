#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "dotprod/adaptability.hpp"
#include "dotprod/constructions.hpp"
#include "dotprod/counting.hpp"
#include "dotprod/experiments.hpp"
#include "dotprod/incidence.hpp"

namespace dotprod {

// ordered_json keeps insertion order, so identical inputs serialize to
// identical bytes; exact quantities travel as fraction strings, floats only
// where the engine itself is floating (energy, exponents, residuals).
using json = nlohmann::ordered_json;

inline json construction_spec_json(const ConstructionSpec& spec) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = to_string(spec.kind);
    j["n"] = spec.n;
    if (spec.kind == ConstructionKind::sharp) {
        j["alpha"] = to_fraction_string(spec.alpha);
        j["beta"] = to_fraction_string(spec.beta);
    } else {
        j["alpha"] = nullptr;
        j["beta"] = nullptr;
    }
    if (spec.kind == ConstructionKind::perturbed_grid)
        j["s"] = to_fraction_string(spec.s);
    else
        j["s"] = nullptr;
    j["seed"] = spec.seed;
    return j;
}

inline json count_report_json(std::uint64_t n, const DotPair& d, const std::string& method,
                              std::uint64_t triples, std::optional<std::uint64_t> incidences,
                              std::uint64_t elapsed_ms,
                              const PairClassification* classes = nullptr) {
    json j;
    j["schema_version"] = 1;
    j["n"] = n;
    j["alpha"] = to_fraction_string(d.alpha);
    j["beta"] = to_fraction_string(d.beta);
    j["method"] = method;
    j["triples"] = triples;
    if (incidences)
        j["incidences"] = *incidences;
    else
        j["incidences"] = nullptr;
    j["elapsed_ms"] = elapsed_ms;
    if (classes != nullptr) {
        j["a_pairs"] = classes->a_pairs;
        j["b_pairs"] = classes->b_pairs;
        j["triples_from_a"] = classes->triples_from_a;
        j["triples_from_b"] = classes->triples_from_b;
    }
    return j;
}

inline json adaptability_json(const AdaptabilityReport& r) {
    json j;
    j["schema_version"] = 1;
    j["n"] = r.n;
    j["s"] = to_fraction_string(r.s);
    j["min_sq_separation"] = to_fraction_string(r.min_sq_separation);
    j["separation_pass"] = r.separation_pass;
    j["energy"] = r.energy;
    j["threshold_used"] = r.threshold_used;
    j["energy_pass"] = r.energy_pass;
    j["adaptable"] = r.adaptable;
    j["s_in_recommended_range"] = r.s_in_recommended_range;
    return j;
}

inline json dyadic_json(const DyadicStats& stats, const DyadicIdentityReport& identities) {
    json j;
    j["j_max"] = stats.j_max;
    j["k_max"] = stats.k_max;
    if (stats.epsilon_sq)
        j["epsilon_sq"] = to_fraction_string(*stats.epsilon_sq);
    else
        j["epsilon_sq"] = nullptr;  // index range derived from the data instead
    json buckets = json::array();
    for (const auto& [jk, count] : stats.buckets)
        buckets.push_back({{"j", jk.first}, {"k", jk.second}, {"count", count}});
    j["buckets"] = buckets;
    j["identities"] = {{"i_lower", identities.i_lower},   {"i_total", identities.i_total},
                       {"i_upper", identities.i_upper},   {"pi_lower", identities.pi_lower},
                       {"pi_total", identities.pi_total}, {"pi_upper", identities.pi_upper},
                       {"pass", identities.pass}};
    return j;
}

inline json capacity_json(const LineCapacityReport& r) {
    json j;
    j["epsilon_sq"] = to_fraction_string(r.epsilon_sq);
    j["capacity"] = r.capacity;
    j["max_alpha"] = r.max_alpha;
    j["max_beta"] = r.max_beta;
    j["pass"] = r.pass;
    return j;
}

inline json experiment_json(const ExperimentReport& r) {
    json j;
    j["schema_version"] = 1;
    j["family"] = construction_spec_json(r.family);
    json rows = json::array();
    for (const auto& row : r.rows) {
        json jr;
        jr["n"] = row.n;
        if (row.epsilon)
            jr["epsilon"] = *row.epsilon;
        else
            jr["epsilon"] = nullptr;
        jr["triples"] = row.triples;
        jr["incidences"] = row.incidences;
        jr["elapsed_ms"] = row.elapsed_ms;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    if (r.fitted_exponent)
        j["fitted_exponent"] = *r.fitted_exponent;
    else
        j["fitted_exponent"] = nullptr;
    if (r.fit_residual)
        j["fit_residual"] = *r.fit_residual;
    else
        j["fit_residual"] = nullptr;
    json checks = json::array();
    for (const auto& check : r.bound_checks)
        checks.push_back({{"name", check.name},
                          {"pass", check.pass},
                          {"asserted", check.asserted},
                          {"detail", check.detail}});
    j["bound_checks"] = checks;
    j["warnings"] = r.warnings;
    return j;
}

}  // namespace dotprod
