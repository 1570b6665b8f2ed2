// Command-line surface for the counting engine. Reports go to standard
// output as JSON (or CSV where noted); files only via --out. Exit codes:
// 0 success, 1 a guaranteed bound failed (engine defect), 2 bad input or
// parameters.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dotprod/dotprod.hpp"
#include "dotprod/json_io.hpp"

namespace {

using dotprod::Rational;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

void emit_json(const dotprod::json& j, const std::string& out_path) {
    emit(j.dump(2) + "\n", out_path);
}

std::vector<std::uint64_t> parse_n_list(const std::string& text) {
    std::vector<std::uint64_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed n-list entry: '" + item + "'");
        }
    }
    if (values.empty()) throw std::invalid_argument("empty n-list");
    return values;
}

std::string experiment_csv(const dotprod::ExperimentReport& report) {
    std::ostringstream out;
    out << "n,epsilon,triples,incidences,elapsed_ms\n";
    for (const auto& row : report.rows) {
        out << row.n << ",";
        if (row.epsilon) out << *row.epsilon;
        out << "," << row.triples << "," << row.incidences << "," << row.elapsed_ms << "\n";
    }
    return out.str();
}

struct CommonArgs {
    std::string points_path;
    std::string alpha = "1";
    std::string beta = "1";
    std::string out_path;
    unsigned threads = 0;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact counting of planar dot-product triples"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- generate ----------------------------------------------------
    auto* gen = app.add_subcommand("generate", "write a construction as point-set CSV");
    std::string gen_kind;
    std::uint64_t gen_n = 0, gen_seed = 0;
    std::string gen_alpha = "1", gen_beta = "1", gen_s = "2", gen_out;
    gen->add_option("--kind", gen_kind, "sharp|zero|grid|random|perturbed-grid")->required();
    gen->add_option("--n", gen_n, "number of points")->required();
    gen->add_option("--alpha", gen_alpha, "sharp line target (rational)");
    gen->add_option("--beta", gen_beta, "sharp line target (rational)");
    gen->add_option("--s", gen_s, "perturbed-grid separation exponent (rational)");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "CSV path; a .json sidecar records the spec");
    gen->callback([&] {
        dotprod::ConstructionSpec spec;
        spec.kind = dotprod::construction_kind_from_string(gen_kind);
        spec.n = gen_n;
        spec.alpha = dotprod::parse_rational(gen_alpha);
        spec.beta = dotprod::parse_rational(gen_beta);
        spec.s = dotprod::parse_rational(gen_s);
        spec.seed = gen_seed;
        const dotprod::PointSet set = dotprod::generate(spec);
        if (gen_out.empty()) {
            std::ostringstream out;
            dotprod::save_pointset(out, set);
            std::cout << out.str();
        } else {
            dotprod::save_pointset_file(gen_out, set);
            std::ofstream sidecar(gen_out + ".json");
            if (!sidecar) throw std::runtime_error("cannot open sidecar: " + gen_out + ".json");
            sidecar << dotprod::construction_spec_json(spec).dump(2) << "\n";
        }
    });

    // ---- count -------------------------------------------------------
    auto* count = app.add_subcommand("count", "count triples with a prescribed dot-product pair");
    CommonArgs count_args;
    std::string count_method = "quadratic";
    count->add_option("--points", count_args.points_path, "point-set CSV")->required();
    count->add_option("--alpha", count_args.alpha, "dot-product target (rational)")->required();
    count->add_option("--beta", count_args.beta, "dot-product target (rational)")->required();
    count->add_option("--method", count_method, "brute|quadratic|ab")
        ->check(CLI::IsMember({"brute", "quadratic", "ab"}));
    count->add_option("--threads", count_args.threads, "worker thread cap (0 = auto)");
    count->add_option("--out", count_args.out_path, "write the JSON report here");
    count->callback([&] {
        const auto set = dotprod::load_pointset_file(count_args.points_path);
        const dotprod::DotPair d{dotprod::parse_rational(count_args.alpha),
                                 dotprod::parse_rational(count_args.beta)};
        const auto start = std::chrono::steady_clock::now();
        dotprod::json report;
        const auto elapsed = [&start] {
            return static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count());
        };
        if (count_method == "brute") {
            const auto triples = dotprod::count_bruteforce(set, d, count_args.threads);
            report = dotprod::count_report_json(set.size(), d, "brute", triples, std::nullopt,
                                                elapsed());
        } else if (count_method == "quadratic") {
            const auto profile = dotprod::incidence_profile(set, d, count_args.threads);
            report = dotprod::count_report_json(set.size(), d, "quadratic",
                                                profile.total_triples,
                                                profile.total_incidences, elapsed());
        } else {
            const auto profile = dotprod::incidence_profile(set, d, count_args.threads);
            const auto classes = dotprod::count_via_ab(set, d, count_args.threads);
            report = dotprod::count_report_json(
                set.size(), d, "ab", classes.triples_from_a + classes.triples_from_b,
                profile.total_incidences, elapsed(), &classes);
        }
        emit_json(report, count_args.out_path);
    });

    // ---- incidence ---------------------------------------------------
    auto* incidence = app.add_subcommand("incidence", "line-incidence diagnostics");
    CommonArgs inc_args;
    bool inc_dyadic = false, inc_capacity = false;
    std::string inc_epsilon;
    incidence->add_option("--points", inc_args.points_path, "point-set CSV")->required();
    incidence->add_option("--alpha", inc_args.alpha, "dot-product target (rational)")->required();
    incidence->add_option("--beta", inc_args.beta, "dot-product target (rational)")->required();
    incidence->add_flag("--dyadic", inc_dyadic, "emit dyadic buckets and bracket identities");
    incidence->add_flag("--capacity", inc_capacity, "check the per-line packing cap");
    incidence->add_option("--epsilon", inc_epsilon, "separation lower bound (rational)");
    incidence->add_option("--threads", inc_args.threads, "worker thread cap (0 = auto)");
    incidence->add_option("--out", inc_args.out_path, "write the JSON report here");
    incidence->callback([&] {
        const auto set = dotprod::load_pointset_file(inc_args.points_path);
        const dotprod::DotPair d{dotprod::parse_rational(inc_args.alpha),
                                 dotprod::parse_rational(inc_args.beta)};
        std::optional<Rational> eps;
        if (!inc_epsilon.empty()) {
            eps = dotprod::parse_rational(inc_epsilon);
            if (*eps <= 0) throw std::invalid_argument("epsilon must be positive");
        }
        if (inc_capacity && !eps)
            throw std::invalid_argument("--capacity requires --epsilon");
        const auto profile = dotprod::incidence_profile(set, d, inc_args.threads);
        dotprod::json report;
        report["schema_version"] = 1;
        report["n"] = set.size();
        report["alpha"] = dotprod::to_fraction_string(d.alpha);
        report["beta"] = dotprod::to_fraction_string(d.beta);
        report["incidences"] = profile.total_incidences;
        report["triples"] = profile.total_triples;
        if (inc_dyadic) {
            std::optional<Rational> eps_sq;
            if (eps) eps_sq = *eps * *eps;
            const auto stats = dotprod::dyadic_decompose(profile, eps_sq);
            const auto identities = dotprod::check_dyadic_identities(stats, profile);
            report["dyadic"] = dotprod::dyadic_json(stats, identities);
            if (!identities.pass)
                throw dotprod::bound_violation("dyadic bracket identities failed");
        }
        if (inc_capacity) {
            const auto capacity =
                dotprod::check_line_capacity(set, d, *eps * *eps, inc_args.threads);
            report["capacity"] = dotprod::capacity_json(capacity);
            if (!capacity.pass) exit_code = 1;
        }
        emit_json(report, inc_args.out_path);
    });

    // ---- adaptability ------------------------------------------------
    auto* adapt = app.add_subcommand("adaptability", "separation and energy diagnostics");
    CommonArgs adapt_args;
    std::string adapt_s;
    double adapt_threshold = 100.0;
    adapt->add_option("--points", adapt_args.points_path, "point-set CSV")->required();
    adapt->add_option("--s", adapt_s, "adaptability exponent (rational)")->required();
    adapt->add_option("--threshold", adapt_threshold, "energy pass threshold (default 100)");
    adapt->add_option("--threads", adapt_args.threads, "worker thread cap (0 = auto)");
    adapt->add_option("--out", adapt_args.out_path, "write the JSON report here");
    adapt->callback([&] {
        const auto set = dotprod::load_pointset_file(adapt_args.points_path);
        const auto report = dotprod::is_s_adaptable(set, dotprod::parse_rational(adapt_s),
                                                    adapt_threshold, adapt_args.threads);
        emit_json(dotprod::adaptability_json(report), adapt_args.out_path);
    });

    // ---- experiment ----------------------------------------------------
    auto* experiment = app.add_subcommand("experiment", "scaling runs over a construction family");
    std::string exp_family, exp_nlist, exp_alpha = "1", exp_beta = "1", exp_s = "2", exp_out;
    std::uint64_t exp_seed = 0;
    unsigned exp_threads = 0;
    bool exp_csv = false;
    experiment->add_option("--family", exp_family, "sharp|zero|grid|random|perturbed-grid")
        ->required();
    experiment->add_option("--n-list", exp_nlist, "comma-separated sizes")->required();
    experiment->add_option("--alpha", exp_alpha, "dot-product target (rational)");
    experiment->add_option("--beta", exp_beta, "dot-product target (rational)");
    experiment->add_option("--s", exp_s, "separation exponent for perturbed-grid (rational)");
    experiment->add_option("--seed", exp_seed, "experiment seed");
    experiment->add_option("--threads", exp_threads, "worker thread cap (0 = auto)");
    experiment->add_flag("--csv", exp_csv, "emit rows as CSV instead of the JSON report");
    experiment->add_option("--out", exp_out, "write the report here");
    experiment->callback([&] {
        const auto n_list = parse_n_list(exp_nlist);
        const dotprod::DotPair d{dotprod::parse_rational(exp_alpha),
                                 dotprod::parse_rational(exp_beta)};
        const auto kind = dotprod::construction_kind_from_string(exp_family);
        dotprod::ExperimentReport report;
        if (kind == dotprod::ConstructionKind::perturbed_grid) {
            report = dotprod::run_separation_experiment(n_list, dotprod::parse_rational(exp_s), d,
                                                        exp_seed, exp_threads);
        } else {
            dotprod::ConstructionSpec family;
            family.kind = kind;
            family.alpha = d.alpha;
            family.beta = d.beta;
            family.seed = exp_seed;
            report = dotprod::run_scaling(family, n_list, d, exp_threads);
        }
        if (exp_csv)
            emit(experiment_csv(report), exp_out);
        else
            emit_json(dotprod::experiment_json(report), exp_out);
        if (!report.asserted_checks_pass()) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dotprod::bound_violation& e) {
        std::cerr << "bound violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
