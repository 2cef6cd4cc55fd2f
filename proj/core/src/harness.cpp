#include "banditlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "banditlab/learners.hpp"
#include "banditlab/plot.hpp"
#include "banditlab/repgen.hpp"
#include "banditlab/serialization.hpp"

namespace banditlab {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

/// Child streams of one run's root generator. Stream ids are fixed so the
/// same (seed, run) pair always yields the same draws for each purpose,
/// independent of which algorithms the experiment contains.
constexpr std::uint64_t kContextStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kAlgorithmStreamBase = 100;

Rng run_root(std::uint64_t base_seed, int run_id) {
    return Rng(base_seed + static_cast<std::uint64_t>(run_id));
}

std::vector<long> log_spaced_checkpoints(long horizon, int count) {
    std::vector<long> points;
    points.reserve(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double frac = count > 1 ? static_cast<double>(k) / (count - 1) : 1.0;
        long t = std::llround(std::pow(static_cast<double>(horizon), frac));
        t = std::clamp(t, 1L, horizon);
        points.push_back(t);
    }
    points.back() = horizon;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

int resolve_workers(int requested, int runs) {
    int workers = requested;
    if (workers <= 0) {
        if (const char* env = std::getenv("BANDITLAB_WORKERS")) {
            char* end = nullptr;
            const long parsed = std::strtol(env, &end, 10);
            if (end && *end == '\0' && parsed > 0) workers = static_cast<int>(parsed);
        }
    }
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(workers, 1, std::max(1, runs));
}

std::string rep_label(const ContextualProblem& problem, int rep) {
    const std::string& label = problem.is_finite()
                                   ? problem.rep(rep).label
                                   : problem.cont().reps[static_cast<size_t>(rep)].label;
    return label.empty() ? "rep_" + std::to_string(rep) : label;
}

/// Streams cumulative bookkeeping for one (run, algorithm) trajectory:
/// regret totals, the final-tenth window, checkpoint samples, and the
/// optional trace rows.
class RunRecorder {
public:
    RunRecorder(RunStats* stats, long horizon, const std::vector<long>& checkpoints,
                long trace_every, bool collect_arms, std::ostream* trace)
        : stats_(stats),
          horizon_(horizon),
          checkpoints_(checkpoints),
          trace_every_(trace_every),
          collect_arms_(collect_arms),
          trace_(trace) {
        stats_->window_start = 9 * horizon / 10 + 1;
        stats_->checkpoint_regret.reserve(checkpoints.size());
        if (collect_arms_) stats_->arms.reserve(static_cast<size_t>(horizon));
    }

    void record(long t, double inst, int arm, int selecting_rep, int active_size) {
        cum_ += inst;
        if (inst > 0.0) {
            stats_->last_positive_step = t;
            if (t >= stats_->window_start) window_positive_ = true;
        }
        if (t >= stats_->window_start) stats_->window_regret += inst;
        if (next_checkpoint_ < checkpoints_.size() &&
            t == checkpoints_[next_checkpoint_]) {
            stats_->checkpoint_regret.push_back(cum_);
            ++next_checkpoint_;
        }
        if (collect_arms_) stats_->arms.push_back(arm);
        if (trace_ && (t % trace_every_ == 0 || t == horizon_)) {
            std::ostream& out = *trace_;
            out << stats_->run_id << ',' << t << ',' << stats_->algorithm << ','
                << format_double(inst) << ',' << format_double(cum_) << ',' << arm << ',';
            if (selecting_rep >= 0) out << selecting_rep;
            out << ',';
            if (active_size >= 0) out << active_size;
            out << '\n';
        }
    }

    void finish() {
        stats_->final_cum_regret = cum_;
        stats_->window_zero = !window_positive_;
    }

private:
    RunStats* stats_;
    long horizon_;
    const std::vector<long>& checkpoints_;
    long trace_every_;
    bool collect_arms_;
    std::ostream* trace_;
    double cum_ = 0.0;
    bool window_positive_ = false;
    size_t next_checkpoint_ = 0;
};

/// Everything a worker needs to play one run, fixed across runs.
struct ExperimentPlan {
    const ContextualProblem* problem = nullptr;
    const ExperimentConfig* config = nullptr;
    const RunOptions* options = nullptr;
    std::vector<std::string> names;
    std::vector<long> checkpoints;
    GapProfile gaps;
    /// views[x][i] points at representation i's arm-feature block for
    /// finite context x.
    std::vector<FeatureView> views;
    double exp4_reward_min = 0.0;
    double exp4_reward_max = 0.0;
};

double continuous_regret(const ContinuousSpec& spec, const Eigen::VectorXd& x, int arm) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < spec.n_arms; ++a) best = std::max(best, spec.mean_reward(x, a));
    return best - spec.mean_reward(x, arm);
}

void play_single_rep(const ExperimentPlan& plan, const AlgorithmSpec& spec,
                     const RunStreams& streams, RunRecorder& rec, RunStats& stats) {
    const ContextualProblem& problem = *plan.problem;
    const ExperimentConfig& config = *plan.config;
    const bool glr = spec.kind == AlgorithmSpec::Kind::glr_bai;
    const int rep = spec.rep;
    const double sigma = problem.noise_std();

    const int dim = problem.is_finite() ? problem.rep(rep).dim()
                                        : problem.cont().reps[static_cast<size_t>(rep)].dim();
    const double feature_bound =
        problem.is_finite() ? problem.rep(rep).feature_bound
                            : problem.cont().reps[static_cast<size_t>(rep)].feature_bound;
    const double param_bound =
        problem.is_finite() ? problem.rep(rep).param_bound
                            : problem.cont().reps[static_cast<size_t>(rep)].param_bound;
    RlsState state(dim, config.lambda, feature_bound, param_bound, sigma);

    Eigen::MatrixXd cont_features;
    for (long t = 1; t <= config.horizon; ++t) {
        const Eigen::MatrixXd* features = nullptr;
        int x = -1;
        double inst = 0.0;
        double mean = 0.0;
        if (problem.is_finite()) {
            x = streams.contexts[static_cast<size_t>(t - 1)];
            features = &problem.rep(rep).features[static_cast<size_t>(x)];
        } else {
            const ContinuousSpec& cont = problem.cont();
            const Eigen::VectorXd& ctx = streams.cont_contexts[static_cast<size_t>(t - 1)];
            const ContinuousRepresentation& crep = cont.reps[static_cast<size_t>(rep)];
            cont_features.resize(cont.n_arms, dim);
            for (int a = 0; a < cont.n_arms; ++a)
                cont_features.row(a) = crep.features(ctx, a).transpose();
            features = &cont_features;
        }
        const double delta_t = schedule_delta(config.schedule, config.delta, t);
        const int arm = linucb_select(state, *features, delta_t);
        if (problem.is_finite()) {
            inst = plan.gaps.gaps(x, arm);
            mean = problem.mean_reward()(x, arm);
        } else {
            const Eigen::VectorXd& ctx = streams.cont_contexts[static_cast<size_t>(t - 1)];
            inst = continuous_regret(problem.cont(), ctx, arm);
            mean = problem.cont().mean_reward(ctx, arm);
        }
        const double reward = mean + sigma * streams.noise(t - 1, arm);
        state.update(features->row(arm).transpose(), reward);

        if (glr && stats.glr_trigger_step < 0) {
            const GlrResult res = glr_stop(state, problem, rep, config.delta);
            if (res.stop) {
                stats.glr_trigger_step = t;
                bool correct = true;
                for (int c = 0; c < problem.n_contexts(); ++c) {
                    if (problem.rho()[c] <= 0.0) continue;
                    if (res.recommended[static_cast<size_t>(c)] != plan.gaps.optimal_arm[static_cast<size_t>(c)]) {
                        correct = false;
                        break;
                    }
                }
                stats.glr_correct = correct;
            }
        }
        rec.record(t, inst, arm, -1, -1);
    }
}

void play_leader(const ExperimentPlan& plan, const AlgorithmSpec& spec,
                 const RunStreams& streams, RunRecorder& rec, RunStats& stats) {
    const ContextualProblem& problem = *plan.problem;
    const ExperimentConfig& config = *plan.config;
    const double sigma = problem.noise_std();
    const bool eliminate = spec.kind == AlgorithmSpec::Kind::eleader;

    LeaderConfig leader_config;
    leader_config.delta = config.delta;
    leader_config.elimination = eliminate;
    leader_config.constrained_mse = spec.constrained_mse;
    leader_config.schedule = config.schedule;
    LeaderState leader(make_rep_states(problem, config.lambda), leader_config);

    std::vector<Eigen::MatrixXd> cont_features;
    FeatureView cont_view;
    for (long t = 1; t <= config.horizon; ++t) {
        const FeatureView* view = nullptr;
        int x = -1;
        double inst = 0.0;
        double mean = 0.0;
        if (problem.is_finite()) {
            x = streams.contexts[static_cast<size_t>(t - 1)];
            view = &plan.views[static_cast<size_t>(x)];
        } else {
            const ContinuousSpec& cont = problem.cont();
            const Eigen::VectorXd& ctx = streams.cont_contexts[static_cast<size_t>(t - 1)];
            cont_features.resize(cont.reps.size());
            cont_view.clear();
            for (size_t i = 0; i < cont.reps.size(); ++i) {
                cont_features[i].resize(cont.n_arms, cont.reps[i].dim());
                for (int a = 0; a < cont.n_arms; ++a)
                    cont_features[i].row(a) = cont.reps[i].features(ctx, a).transpose();
                cont_view.push_back(&cont_features[i]);
            }
            view = &cont_view;
        }
        const LeaderState::Decision decision = leader.select(*view);
        if (problem.is_finite()) {
            inst = plan.gaps.gaps(x, decision.arm);
            mean = problem.mean_reward()(x, decision.arm);
        } else {
            const Eigen::VectorXd& ctx = streams.cont_contexts[static_cast<size_t>(t - 1)];
            inst = continuous_regret(problem.cont(), ctx, decision.arm);
            mean = problem.cont().mean_reward(ctx, decision.arm);
        }
        const double reward = mean + sigma * streams.noise(t - 1, decision.arm);
        leader.update(*view, decision.arm, reward);
        if (eliminate) leader.eliminate();
        rec.record(t, inst, decision.arm, decision.selecting_rep,
                   eliminate ? static_cast<int>(leader.active().size()) : -1);
    }

    for (const EliminationEvent& event : leader.events()) {
        stats.elimination_times.push_back(event.t);
        stats.eliminated_reps.push_back(event.rep);
    }
    stats.final_active = leader.active();
    stats.anomaly = leader.anomaly();
}

void play_exp4ix(const ExperimentPlan& plan, const RunStreams& streams, Rng& rng,
                 RunRecorder& rec) {
    const ContextualProblem& problem = *plan.problem;
    const ExperimentConfig& config = *plan.config;
    const double sigma = problem.noise_std();
    const int n_reps = problem.n_reps();

    std::vector<RlsState> states = make_rep_states(problem, config.lambda);
    Exp4Ix master(n_reps, problem.n_arms(), config.horizon, plan.exp4_reward_min,
                  plan.exp4_reward_max);

    std::vector<int> expert_arms(static_cast<size_t>(n_reps), 0);
    for (long t = 1; t <= config.horizon; ++t) {
        const int x = streams.contexts[static_cast<size_t>(t - 1)];
        const FeatureView& view = plan.views[static_cast<size_t>(x)];
        const double delta_t = schedule_delta(config.schedule, config.delta, t);
        for (int i = 0; i < n_reps; ++i)
            expert_arms[static_cast<size_t>(i)] =
                linucb_select(states[static_cast<size_t>(i)], *view[static_cast<size_t>(i)], delta_t);
        const int arm = master.select(expert_arms, rng);
        const double inst = plan.gaps.gaps(x, arm);
        const double reward = problem.mean_reward()(x, arm) + sigma * streams.noise(t - 1, arm);
        master.observe(reward);
        for (int i = 0; i < n_reps; ++i)
            states[static_cast<size_t>(i)].update(view[static_cast<size_t>(i)]->row(arm).transpose(),
                                                  reward);
        rec.record(t, inst, arm, -1, -1);
    }
}

void play_regbal(const ExperimentPlan& plan, const AlgorithmSpec& spec,
                 const RunStreams& streams, RunRecorder& rec) {
    const ContextualProblem& problem = *plan.problem;
    const ExperimentConfig& config = *plan.config;
    const double sigma = problem.noise_std();

    RegBal balancer(make_rep_states(problem, config.lambda), config.delta, spec.shared_updates);
    for (long t = 1; t <= config.horizon; ++t) {
        const int x = streams.contexts[static_cast<size_t>(t - 1)];
        const FeatureView& view = plan.views[static_cast<size_t>(x)];
        const RegBal::Decision decision = balancer.select(view);
        const double inst = plan.gaps.gaps(x, decision.arm);
        const double reward =
            problem.mean_reward()(x, decision.arm) + sigma * streams.noise(t - 1, decision.arm);
        balancer.update(view, decision.arm, reward);
        rec.record(t, inst, decision.arm, decision.base, -1);
    }
}

void play_run(const ExperimentPlan& plan, int run_id, std::vector<RunStats>& stats,
              std::ostream* trace) {
    const ExperimentConfig& config = *plan.config;
    const RunStreams streams =
        make_run_streams(*plan.problem, config.seed, run_id, config.horizon);
    const size_t n_algorithms = config.algorithms.size();

    for (size_t j = 0; j < n_algorithms; ++j) {
        const AlgorithmSpec& spec = config.algorithms[j];
        RunStats& slot = stats[static_cast<size_t>(run_id) * n_algorithms + j];
        slot.run_id = run_id;
        slot.algorithm = plan.names[j];
        RunRecorder rec(&slot, config.horizon, plan.checkpoints, config.trace_every,
                        plan.options->collect_arms, trace);
        switch (spec.kind) {
            case AlgorithmSpec::Kind::linucb:
            case AlgorithmSpec::Kind::glr_bai:
                play_single_rep(plan, spec, streams, rec, slot);
                break;
            case AlgorithmSpec::Kind::leader:
            case AlgorithmSpec::Kind::eleader:
                play_leader(plan, spec, streams, rec, slot);
                break;
            case AlgorithmSpec::Kind::exp4ix: {
                Rng rng = run_root(config.seed, run_id)
                              .fork(kAlgorithmStreamBase + static_cast<std::uint64_t>(j));
                play_exp4ix(plan, streams, rng, rec);
                break;
            }
            case AlgorithmSpec::Kind::regbal:
                play_regbal(plan, spec, streams, rec);
                break;
        }
        rec.finish();
    }
}

void validate_algorithms(const ExperimentConfig& config, const ContextualProblem& problem) {
    require(!config.algorithms.empty(), "experiment: no algorithms configured");
    for (const AlgorithmSpec& spec : config.algorithms) {
        const bool single = spec.kind == AlgorithmSpec::Kind::linucb ||
                            spec.kind == AlgorithmSpec::Kind::glr_bai;
        if (single) {
            require(spec.rep >= 0 && spec.rep < problem.n_reps(),
                    "experiment: rep index out of range for " + algorithm_kind_name(spec.kind));
        }
        if (!problem.is_finite()) {
            require(spec.kind == AlgorithmSpec::Kind::linucb ||
                        spec.kind == AlgorithmSpec::Kind::leader,
                    "experiment: continuous problems support only linucb and leader");
        }
    }
}

}  // namespace

RunStreams make_run_streams(const ContextualProblem& problem, std::uint64_t base_seed, int run_id,
                            long horizon) {
    require(horizon >= 1, "make_run_streams: horizon must be positive");
    Rng root = run_root(base_seed, run_id);
    Rng context_rng = root.fork(kContextStream);
    Rng noise_rng = root.fork(kNoiseStream);

    RunStreams streams;
    if (problem.is_finite()) {
        std::vector<double> weights(static_cast<size_t>(problem.n_contexts()));
        for (int x = 0; x < problem.n_contexts(); ++x)
            weights[static_cast<size_t>(x)] = problem.rho()[x];
        streams.contexts.resize(static_cast<size_t>(horizon));
        for (long t = 0; t < horizon; ++t)
            streams.contexts[static_cast<size_t>(t)] =
                static_cast<int>(context_rng.categorical(weights));
    } else {
        streams.cont_contexts.resize(static_cast<size_t>(horizon));
        for (long t = 0; t < horizon; ++t)
            streams.cont_contexts[static_cast<size_t>(t)] =
                problem.cont().sample_context(context_rng);
    }
    streams.noise.resize(horizon, problem.n_arms());
    for (long t = 0; t < horizon; ++t)
        for (int a = 0; a < problem.n_arms(); ++a) streams.noise(t, a) = noise_rng.gaussian();
    return streams;
}

ContextualProblem resolve_problem(const ExperimentConfig& config) {
    const std::vector<std::string> names = preset_names();
    ContextualProblem problem =
        std::find(names.begin(), names.end(), config.problem) != names.end()
            ? preset_problem(config.problem, config.seed)
            : load_problem_file(config.problem);
    if (config.sigma) problem.set_noise_std(*config.sigma);
    return problem;
}

std::string algorithm_name(const AlgorithmSpec& spec, const ContextualProblem& problem) {
    switch (spec.kind) {
        case AlgorithmSpec::Kind::linucb:
            return "linucb_" + rep_label(problem, spec.rep);
        case AlgorithmSpec::Kind::glr_bai:
            return "glr_bai_" + rep_label(problem, spec.rep);
        case AlgorithmSpec::Kind::leader:
            return "leader";
        case AlgorithmSpec::Kind::eleader:
            return "eleader";
        case AlgorithmSpec::Kind::exp4ix:
            return "exp4ix";
        case AlgorithmSpec::Kind::regbal:
            return "regbal";
    }
    throw std::invalid_argument("experiment: unknown algorithm kind");
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    require(config.horizon >= 1, "experiment: horizon must be positive");
    require(config.runs >= 1, "experiment: runs must be positive");
    require(config.trace_every >= 1, "experiment: trace_every must be positive");
    require(config.delta > 0.0 && config.delta < 1.0, "experiment: delta must lie in (0, 1)");
    require(config.lambda > 0.0, "experiment: lambda must be positive");

    const ContextualProblem problem = resolve_problem(config);
    validate_algorithms(config, problem);

    ExperimentPlan plan;
    plan.problem = &problem;
    plan.config = &config;
    plan.options = &options;
    plan.checkpoints = log_spaced_checkpoints(config.horizon, 200);
    for (const AlgorithmSpec& spec : config.algorithms)
        plan.names.push_back(algorithm_name(spec, problem));
    {
        std::set<std::string> seen;
        for (const std::string& name : plan.names) {
            require(seen.insert(name).second,
                    "experiment: duplicate algorithm name \"" + name + "\"");
        }
    }
    if (problem.is_finite()) {
        plan.gaps = gap_profile(problem);
        plan.views.resize(static_cast<size_t>(problem.n_contexts()));
        for (int x = 0; x < problem.n_contexts(); ++x)
            for (int i = 0; i < problem.n_reps(); ++i)
                plan.views[static_cast<size_t>(x)].push_back(
                    &problem.rep(i).features[static_cast<size_t>(x)]);
        plan.exp4_reward_min = problem.mean_reward().minCoeff() - 3.0 * problem.noise_std();
        plan.exp4_reward_max = problem.mean_reward().maxCoeff() + 3.0 * problem.noise_std();
    }

    const bool writes_files = options.write_csv || options.write_svg || options.write_summary;
    const std::filesystem::path out_dir(config.out_dir);
    if (writes_files) std::filesystem::create_directories(out_dir);

    const size_t n_algorithms = config.algorithms.size();
    ExperimentResult result;
    result.algorithm_names = plan.names;
    result.checkpoints = plan.checkpoints;
    result.stats.resize(static_cast<size_t>(config.runs) * n_algorithms);

    auto part_path = [&](int run_id) {
        return out_dir / (".part_" + std::to_string(run_id) + ".csv");
    };

    const int workers = resolve_workers(options.workers, config.runs);
    std::atomic<int> next_run{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker_loop = [&]() {
        while (!failed.load()) {
            const int run_id = next_run.fetch_add(1);
            if (run_id >= config.runs) break;
            try {
                if (options.write_csv) {
                    std::ofstream part(part_path(run_id));
                    if (!part) {
                        throw std::runtime_error("experiment: cannot write " +
                                                 part_path(run_id).string());
                    }
                    play_run(plan, run_id, result.stats, &part);
                } else {
                    play_run(plan, run_id, result.stats, nullptr);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };

    if (workers == 1) {
        worker_loop();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
        for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    if (options.write_csv) {
        const std::filesystem::path csv = out_dir / "trace.csv";
        std::ofstream out(csv);
        if (!out) throw std::runtime_error("experiment: cannot write " + csv.string());
        out << "run_id,t,algorithm,inst_regret,cum_regret,arm,selecting_rep,active_set_size\n";
        for (int run_id = 0; run_id < config.runs; ++run_id) {
            std::ifstream part(part_path(run_id));
            out << part.rdbuf();
            part.close();
            std::filesystem::remove(part_path(run_id));
        }
        result.csv_path = csv.string();
    }

    const size_t n_points = plan.checkpoints.size();
    result.mean_regret.setZero(static_cast<Eigen::Index>(n_algorithms),
                               static_cast<Eigen::Index>(n_points));
    result.std_regret.setZero(static_cast<Eigen::Index>(n_algorithms),
                              static_cast<Eigen::Index>(n_points));
    for (size_t j = 0; j < n_algorithms; ++j) {
        for (size_t c = 0; c < n_points; ++c) {
            double mean = 0.0;
            for (int r = 0; r < config.runs; ++r)
                mean += result.at(r, static_cast<int>(j)).checkpoint_regret[c];
            mean /= config.runs;
            double var = 0.0;
            if (config.runs > 1) {
                for (int r = 0; r < config.runs; ++r) {
                    const double diff =
                        result.at(r, static_cast<int>(j)).checkpoint_regret[c] - mean;
                    var += diff * diff;
                }
                var /= config.runs - 1;
            }
            result.mean_regret(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) = mean;
            result.std_regret(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) =
                std::sqrt(var);
        }
    }

    if (options.write_summary) {
        const std::filesystem::path summary = out_dir / "summary.csv";
        std::ofstream out(summary);
        if (!out) throw std::runtime_error("experiment: cannot write " + summary.string());
        out << "algorithm,t,mean_cum_regret,std_cum_regret\n";
        for (size_t j = 0; j < n_algorithms; ++j) {
            for (size_t c = 0; c < n_points; ++c) {
                out << plan.names[j] << ',' << plan.checkpoints[c] << ','
                    << format_double(result.mean_regret(static_cast<Eigen::Index>(j),
                                                        static_cast<Eigen::Index>(c)))
                    << ','
                    << format_double(result.std_regret(static_cast<Eigen::Index>(j),
                                                       static_cast<Eigen::Index>(c)))
                    << '\n';
            }
        }
        result.summary_path = summary.string();
    }

    if (options.write_svg) {
        std::vector<SummarySeries> series;
        for (size_t j = 0; j < n_algorithms; ++j) {
            SummarySeries s;
            s.name = plan.names[j];
            for (size_t c = 0; c < n_points; ++c) {
                const double mean = result.mean_regret(static_cast<Eigen::Index>(j),
                                                       static_cast<Eigen::Index>(c));
                const double spread = 2.0 * result.std_regret(static_cast<Eigen::Index>(j),
                                                              static_cast<Eigen::Index>(c));
                s.mean.push_back(mean);
                s.lo.push_back(mean - spread);
                s.hi.push_back(mean + spread);
            }
            series.push_back(std::move(s));
        }
        const std::filesystem::path svg = out_dir / "regret.svg";
        write_svg_plot(svg.string(), plan.checkpoints, series, config.plot_log_x,
                       "cumulative regret: " + config.problem);
        result.svg_path = svg.string();
    }

    return result;
}

}  // namespace banditlab
