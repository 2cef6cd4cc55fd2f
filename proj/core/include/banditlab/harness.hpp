#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "banditlab/config.hpp"
#include "banditlab/problem.hpp"

namespace banditlab {

/// Pre-drawn randomness for one run, shared by every algorithm in that run
/// so their trajectories are directly comparable: one context stream plus a
/// noise table indexed by (step, arm) — the reward noise for a given
/// (step, arm) is identical no matter which algorithm plays it.
struct RunStreams {
    /// Finite problems: context index per step.
    std::vector<int> contexts;
    /// Continuous problems: sampled context per step.
    std::vector<Eigen::VectorXd> cont_contexts;
    /// horizon x n_arms standard normal draws.
    Eigen::MatrixXd noise;
};

/// Streams for run `run_id` of an experiment seeded with `base_seed`.
RunStreams make_run_streams(const ContextualProblem& problem, std::uint64_t base_seed, int run_id,
                            long horizon);

/// Per-(run, algorithm) outcome summary, accumulated while the run plays.
struct RunStats {
    int run_id = 0;
    std::string algorithm;
    double final_cum_regret = 0.0;
    /// Last step with positive instantaneous regret; 0 when the whole run
    /// was optimal.
    long last_positive_step = 0;
    /// First step of the final-tenth window the plateau checks look at.
    long window_start = 0;
    /// True when no step in [window_start, horizon] had positive regret.
    bool window_zero = false;
    /// Regret accumulated inside the window.
    double window_regret = 0.0;

    /// eleader bookkeeping.
    std::vector<long> elimination_times;
    std::vector<int> eliminated_reps;
    std::vector<int> final_active;
    bool anomaly = false;

    /// glr_bai bookkeeping: first stopping step (-1 when it never stops)
    /// and whether the recommendation at that step matched the true
    /// optimal arms of every positive-probability context.
    long glr_trigger_step = -1;
    bool glr_correct = false;

    /// Cumulative regret sampled at the experiment's checkpoints.
    std::vector<double> checkpoint_regret;
    /// Arm sequence; filled only when RunOptions::collect_arms is set.
    std::vector<int> arms;
};

struct RunOptions {
    bool write_csv = true;
    bool write_svg = true;
    bool write_summary = true;
    /// Keep each run's arm sequence in its RunStats.
    bool collect_arms = false;
    /// Worker threads; 0 reads BANDITLAB_WORKERS and falls back to the
    /// hardware concurrency (capped by the number of runs).
    int workers = 0;
};

struct ExperimentResult {
    std::vector<std::string> algorithm_names;
    /// Log-spaced steps at which cumulative regret is summarized.
    std::vector<long> checkpoints;
    /// Run-major: stats[run * n_algorithms + alg].
    std::vector<RunStats> stats;
    /// algorithms x checkpoints.
    Eigen::MatrixXd mean_regret;
    Eigen::MatrixXd std_regret;
    std::string csv_path;
    std::string svg_path;
    std::string summary_path;

    const RunStats& at(int run, int alg) const {
        return stats[static_cast<size_t>(run) * algorithm_names.size() +
                     static_cast<size_t>(alg)];
    }
};

/// Builds the problem named by the config (preset or file), applying the
/// sigma override if present.
ContextualProblem resolve_problem(const ExperimentConfig& config);

/// Display name of one algorithm entry on a given problem, e.g.
/// "linucb_rank_6" or "leader".
std::string algorithm_name(const AlgorithmSpec& spec, const ContextualProblem& problem);

/// Runs every (run, algorithm) pair of the experiment: replays the run's
/// streams through each algorithm, scores exact expected regret from the
/// problem's reward model, and writes trace.csv / summary.csv / regret.svg
/// into config.out_dir as enabled. Deterministic for a fixed config,
/// including across worker counts.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace banditlab
