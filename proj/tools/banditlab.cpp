#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "banditlab/bounds.hpp"
#include "banditlab/diversity.hpp"
#include "banditlab/harness.hpp"
#include "banditlab/repgen.hpp"
#include "banditlab/serialization.hpp"

namespace {

using banditlab::ContextualProblem;

const char* yes_no(bool v) { return v ? "yes" : "no"; }

ContextualProblem open_problem(const std::string& name, std::uint64_t seed) {
    const std::vector<std::string> names = banditlab::preset_names();
    if (std::find(names.begin(), names.end(), name) != names.end())
        return banditlab::preset_problem(name, seed);
    return banditlab::load_problem_file(name);
}

int cmd_run(const std::string& config_path, long seed, long horizon, long runs,
            const std::string& out_dir, int workers, bool no_csv, bool no_svg) {
    banditlab::ExperimentConfig config = banditlab::load_config_file(config_path);
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    if (horizon > 0) config.horizon = horizon;
    if (runs > 0) config.runs = static_cast<int>(runs);
    if (!out_dir.empty()) config.out_dir = out_dir;

    banditlab::RunOptions options;
    options.write_csv = !no_csv;
    options.write_svg = !no_svg;
    options.workers = workers;

    const auto start = std::chrono::steady_clock::now();
    const banditlab::ExperimentResult result = banditlab::run_experiment(config, options);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::printf("problem %s, horizon %ld, runs %d, %.1fs\n", config.problem.c_str(),
                config.horizon, config.runs, elapsed);
    const Eigen::Index last = result.mean_regret.cols() - 1;
    for (size_t j = 0; j < result.algorithm_names.size(); ++j) {
        std::printf("  %-24s final regret %10.2f +- %.2f\n", result.algorithm_names[j].c_str(),
                    result.mean_regret(static_cast<Eigen::Index>(j), last),
                    result.std_regret(static_cast<Eigen::Index>(j), last));
    }
    if (!result.csv_path.empty()) std::printf("trace:   %s\n", result.csv_path.c_str());
    if (!result.summary_path.empty()) std::printf("summary: %s\n", result.summary_path.c_str());
    if (!result.svg_path.empty()) std::printf("plot:    %s\n", result.svg_path.c_str());
    return 0;
}

int cmd_preset(const std::string& name, std::uint64_t seed, const std::string& out) {
    if (name == "list") {
        for (const std::string& preset : banditlab::preset_names()) std::printf("%s\n", preset.c_str());
        return 0;
    }
    const ContextualProblem problem = banditlab::preset_problem(name, seed);
    if (out.empty()) {
        banditlab::save_problem(problem, std::cout);
        return 0;
    }
    banditlab::save_problem_file(problem, out);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

nlohmann::json report_json(const banditlab::DiversityReport& report) {
    return {
        {"non_redundant", report.non_redundant},
        {"cmb", report.cmb},
        {"bbk", report.bbk},
        {"hls", report.hls},
        {"wys", report.wys},
        {"lambda_hls", report.lambda_hls},
        {"lambda_min_pos", report.lambda_min_pos},
        {"bbk_method", report.bbk_method == banditlab::BbkMethod::exact ? "exact" : "randomized"},
        {"bbk_fell_back", report.bbk_fell_back},
        {"estimated",
         report.estimation == banditlab::MomentEstimation::monte_carlo},
    };
}

int cmd_check(const std::string& name, std::uint64_t seed, bool as_json) {
    const ContextualProblem problem = open_problem(name, seed);
    std::vector<banditlab::DiversityReport> reports;
    for (int i = 0; i < problem.n_reps(); ++i)
        reports.push_back(banditlab::check_diversity(problem, i));

    if (as_json) {
        nlohmann::json doc;
        doc["problem"] = name;
        doc["finite"] = problem.is_finite();
        doc["n_arms"] = problem.n_arms();
        doc["noise_std"] = problem.noise_std();
        if (problem.is_finite()) {
            const banditlab::GapProfile gaps = banditlab::gap_profile(problem);
            doc["n_contexts"] = problem.n_contexts();
            doc["min_gap"] = gaps.min_gap;
            doc["max_gap"] = gaps.max_gap;
            doc["has_ties"] = gaps.has_ties;
        }
        doc["reps"] = nlohmann::json::array();
        for (int i = 0; i < problem.n_reps(); ++i) {
            nlohmann::json entry = report_json(reports[static_cast<size_t>(i)]);
            const std::string& label = problem.is_finite()
                                           ? problem.rep(i).label
                                           : problem.cont().reps[static_cast<size_t>(i)].label;
            entry["label"] = label;
            if (problem.is_finite()) entry["misspec_sup"] = problem.rep(i).misspec_sup();
            doc["reps"].push_back(entry);
        }
        if (problem.is_finite()) {
            const banditlab::MixedHlsReport mixed = banditlab::check_mixed_hls(problem);
            doc["mixed_hls"] = mixed.mixed_hls;
            doc["uncovered"] = nlohmann::json::array();
            for (const auto& [x, a] : mixed.uncovered) doc["uncovered"].push_back({x, a});
        }
        std::printf("%s\n", doc.dump(2).c_str());
        return 0;
    }

    std::printf("%-14s %4s %9s %5s %5s %5s %5s %5s %12s %14s\n", "rep", "dim", "misspec",
                "nred", "cmb", "bbk", "hls", "wys", "lambda_hls", "lambda_min_pos");
    for (int i = 0; i < problem.n_reps(); ++i) {
        const banditlab::DiversityReport& r = reports[static_cast<size_t>(i)];
        const std::string& label = problem.is_finite()
                                       ? problem.rep(i).label
                                       : problem.cont().reps[static_cast<size_t>(i)].label;
        const double misspec = problem.is_finite() ? problem.rep(i).misspec_sup() : 0.0;
        std::printf("%-14s %4d %9.4f %5s %5s %5s %5s %5s %12.6f %14.6f\n", label.c_str(),
                    problem.is_finite() ? problem.rep(i).dim()
                                        : problem.cont().reps[static_cast<size_t>(i)].dim(),
                    misspec, yes_no(r.non_redundant), yes_no(r.cmb), yes_no(r.bbk),
                    yes_no(r.hls), yes_no(r.wys), r.lambda_hls, r.lambda_min_pos);
        if (r.bbk_fell_back)
            std::printf("  (bbk checked with %d random directions)\n", r.bbk_directions);
    }
    if (problem.is_finite()) {
        const banditlab::MixedHlsReport mixed = banditlab::check_mixed_hls(problem);
        std::printf("mixed span condition over all reps: %s\n", yes_no(mixed.mixed_hls));
        for (const auto& [x, a] : mixed.uncovered)
            std::printf("  uncovered pair: context %d arm %d\n", x, a);
    }
    return 0;
}

int cmd_bounds(const std::string& name, std::uint64_t seed, double delta, long horizon) {
    const ContextualProblem problem = open_problem(name, seed);
    if (!problem.is_finite()) {
        std::fprintf(stderr, "bounds: finite problems only\n");
        return 1;
    }
    const banditlab::GapProfile gaps = banditlab::gap_profile(problem);
    std::printf("min_gap %.6f  max_gap %.6f  delta %g  horizon %ld\n", gaps.min_gap,
                gaps.max_gap, delta, horizon);

    double best_tau = std::numeric_limits<double>::infinity();
    for (int i = 0; i < problem.n_reps(); ++i) {
        const banditlab::FiniteRepresentation& rep = problem.rep(i);
        const banditlab::DiversityReport report = banditlab::check_diversity(problem, i);
        const banditlab::BoundInputs in = banditlab::make_bound_inputs(
            delta, 1.0, rep.feature_bound, rep.param_bound, problem.noise_std(), gaps.min_gap,
            gaps.max_gap, rep.dim());
        const banditlab::TauResult tau = banditlab::tau_hls(in, report.lambda_hls);
        const double envelope =
            banditlab::regret_bound(in, static_cast<double>(horizon), tau.tau, 1);
        best_tau = std::min(best_tau, tau.tau);
        std::printf("  %-14s lambda_hls %10.6f  tau %12.4g  regret envelope %12.4g%s\n",
                    rep.label.c_str(), report.lambda_hls, tau.tau, envelope,
                    in.clamped || tau.log_clamped ? "  (inputs clamped)" : "");
    }

    const banditlab::FiniteRepresentation& first = problem.rep(0);
    double max_l = 0.0;
    double max_s = 0.0;
    int max_d = first.dim();
    for (int i = 0; i < problem.n_reps(); ++i) {
        max_l = std::max(max_l, problem.rep(i).feature_bound);
        max_s = std::max(max_s, problem.rep(i).param_bound);
        max_d = std::max(max_d, problem.rep(i).dim());
    }
    const banditlab::BoundInputs joint = banditlab::make_bound_inputs(
        delta, 1.0, max_l, max_s, problem.noise_std(), gaps.min_gap, gaps.max_gap, max_d);
    std::printf("multi-rep envelope (m=%d, best tau): %12.4g\n", problem.n_reps(),
                banditlab::regret_bound(joint, static_cast<double>(horizon), best_tau,
                                        problem.n_reps()));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear contextual bandit simulations with representation selection"};
    app.require_subcommand(1);

    std::string config_path;
    long seed_override = -1;
    long horizon_override = 0;
    long runs_override = 0;
    std::string out_override;
    int workers = 0;
    bool no_csv = false;
    bool no_svg = false;
    CLI::App* run = app.add_subcommand("run", "run an experiment from a JSON config");
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--seed", seed_override, "override the config seed");
    run->add_option("--horizon", horizon_override, "override the horizon");
    run->add_option("--runs", runs_override, "override the number of runs");
    run->add_option("--out", out_override, "override the output directory");
    run->add_option("--workers", workers, "worker threads (default: BANDITLAB_WORKERS or all cores)");
    run->add_flag("--no-csv", no_csv, "skip the step trace");
    run->add_flag("--no-svg", no_svg, "skip the plot");

    std::string preset_name;
    std::uint64_t preset_seed = 1;
    std::string preset_out;
    CLI::App* preset = app.add_subcommand("preset", "print or save a bundled problem ('list' to enumerate)");
    preset->add_option("name", preset_name, "preset name or 'list'")->required();
    preset->add_option("--seed", preset_seed, "generation seed");
    preset->add_option("--out", preset_out, "write to a file instead of stdout");

    std::string check_name;
    std::uint64_t check_seed = 1;
    bool check_json = false;
    CLI::App* check = app.add_subcommand("check", "report the span conditions of each representation");
    check->add_option("problem", check_name, "preset name or problem file")->required();
    check->add_option("--seed", check_seed, "generation seed for presets");
    check->add_flag("--json", check_json, "machine-readable output");

    std::string bounds_name;
    std::uint64_t bounds_seed = 1;
    double bounds_delta = 0.01;
    long bounds_horizon = 50000;
    CLI::App* bounds = app.add_subcommand("bounds", "closed-form regret envelopes and onset times");
    bounds->add_option("problem", bounds_name, "preset name or problem file")->required();
    bounds->add_option("--seed", bounds_seed, "generation seed for presets");
    bounds->add_option("--delta", bounds_delta, "confidence level");
    bounds->add_option("--horizon", bounds_horizon, "horizon for the envelope");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, seed_override, horizon_override, runs_override,
                           out_override, workers, no_csv, no_svg);
        if (preset->parsed()) return cmd_preset(preset_name, preset_seed, preset_out);
        if (check->parsed()) return cmd_check(check_name, check_seed, check_json);
        if (bounds->parsed()) return cmd_bounds(bounds_name, bounds_seed, bounds_delta, bounds_horizon);
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
