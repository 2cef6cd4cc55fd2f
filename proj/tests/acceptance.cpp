#include "banditlab/bounds.hpp"
#include "banditlab/config.hpp"
#include "banditlab/diversity.hpp"
#include "banditlab/harness.hpp"
#include "banditlab/learners.hpp"
#include "banditlab/moments.hpp"
#include "banditlab/problem.hpp"
#include "banditlab/repgen.hpp"
#include "banditlab/rls.hpp"
#include "banditlab/rng.hpp"
#include "fixtures.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace banditlab;

namespace {

constexpr int kRuns = 20;
constexpr int kPlateauRuns = 18;
constexpr int kMaxPlateauLeaks = kRuns - kPlateauRuns;
constexpr long kHorizon = 50000;
/// Pinned problem instances for the regret experiments.
constexpr std::uint64_t kFig1Seed = 5;
constexpr std::uint64_t kMixingSeed = 4;
constexpr double kDelta = 0.01;
constexpr double kReg = 1.0;
constexpr double kLeaderFactor = 1.5;
constexpr double kThetaTol = 1e-8;
constexpr double kLogDetTol = 1e-8;
constexpr double kEigTol = 1e-9;
constexpr double kRealizTol = 1e-9;
constexpr double kMisspecThreshold = 0.05;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string format(const char* pattern, ...) {
    char buf[768];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return std::string(buf);
}

int g_failures = 0;

void run_criterion(const char* name, double budget_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.pass && seconds > budget_seconds) {
        out.pass = false;
        out.detail += format(" (exceeded the %.0fs budget)", budget_seconds);
    }
    std::printf("[%s] %s (%.1fs) %s\n", out.pass ? "PASS" : "FAIL", name, seconds,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++g_failures;
}

// fig1-scale experiment shared by the plateau, selection, stopping-rule and
// onset criteria. Algorithms: one optimistic learner per representation,
// the multi-representation selector, and the stopping rule on the
// full-rank representation.
std::optional<ExperimentResult> g_fig1;
int g_hls_rep = -1;
int g_rank1_rep = -1;

int runs_of(const ExperimentResult& res) {
    return static_cast<int>(res.stats.size() / res.algorithm_names.size());
}

double mean_final(const ExperimentResult& res, int alg) {
    double sum = 0.0;
    const int runs = runs_of(res);
    for (int r = 0; r < runs; ++r) sum += res.at(r, alg).final_cum_regret;
    return sum / runs;
}

int count_window_zero(const ExperimentResult& res, int alg) {
    int n = 0;
    for (int r = 0; r < runs_of(res); ++r)
        if (res.at(r, alg).window_zero) ++n;
    return n;
}

Outcome fixture_classification() {
    struct Row {
        int fixture;
        bool non_redundant, cmb, bbk, hls, wys;
    };
    constexpr Row rows[] = {
        {1, true, false, false, false, false},
        {2, true, false, false, false, false},
        {3, true, true, false, false, false},
        {4, true, false, false, true, false},
        {5, true, true, false, true, false},
        {6, true, true, true, false, false},
        {7, true, true, true, true, false},
        {8, true, true, false, true, true},
        {9, true, true, true, true, true},
    };
    for (const Row& row : rows) {
        const ContextualProblem p = fixtures::classification_case(row.fixture);
        const DiversityReport r = check_diversity(p, 0);
        if (r.non_redundant != row.non_redundant || r.cmb != row.cmb || r.bbk != row.bbk ||
            r.hls != row.hls || r.wys != row.wys)
            return {false, format("fixture %d classified {%d,%d,%d,%d,%d}, expected "
                                  "{%d,%d,%d,%d,%d}",
                                  row.fixture, int(r.non_redundant), int(r.cmb), int(r.bbk),
                                  int(r.hls), int(r.wys), int(row.non_redundant), int(row.cmb),
                                  int(row.bbk), int(row.hls), int(row.wys))};
    }

    int spanning = 0;
    int flat = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Rng rng(9000 + static_cast<std::uint64_t>(trial));
        const int dim = 2 + static_cast<int>(rng.uniform_index(3));
        const int arms = 2 + static_cast<int>(rng.uniform_index(3));
        const int contexts = dim + 2 + static_cast<int>(rng.uniform_index(4));
        ContextualProblem p = random_problem(contexts, arms, dim, rng);
        if (trial % 5 == 0) {
            std::vector<FiniteRepresentation> low = {apply_transform(p.rep(0), p, Derank{1})};
            p.set_reps(std::move(low));
        }
        const DiversityReport r = check_diversity(p, 0);
        if (r.wys && !(r.cmb && r.hls))
            return {false, format("trial %d: wys held without cmb and hls", trial)};
        if (r.bbk && !r.cmb) return {false, format("trial %d: bbk held without cmb", trial)};
        if ((r.cmb || r.bbk || r.hls || r.wys) && !r.non_redundant)
            return {false, format("trial %d: a condition held on a redundant map", trial)};
        if (r.hls != (r.lambda_hls > 0.0))
            return {false, format("trial %d: hls flag disagrees with the eigenvalue", trial)};
        (r.hls ? spanning : flat) += 1;
    }
    if (spanning == 0 || flat == 0)
        return {false, "the random sample did not cover both classification outcomes"};
    return {true, format("nine fixtures exact; 1000 random maps (%d spanning, %d not) satisfy "
                         "the inclusion diagram",
                         spanning, flat)};
}

Outcome constant_regret_plateau() {
    ExperimentConfig cfg;
    cfg.problem = "fig1";
    cfg.seed = kFig1Seed;
    cfg.horizon = kHorizon;
    cfg.runs = kRuns;
    cfg.delta = kDelta;
    cfg.lambda = kReg;
    for (int i = 0; i < 6; ++i) cfg.algorithms.push_back({AlgorithmSpec::Kind::linucb, i});
    cfg.algorithms.push_back({AlgorithmSpec::Kind::leader});
    cfg.algorithms.push_back({AlgorithmSpec::Kind::glr_bai, 0});

    const ContextualProblem p = resolve_problem(cfg);
    if (p.n_reps() != 6) return {false, format("expected 6 representations, found %d", p.n_reps())};
    for (int i = 0; i < p.n_reps(); ++i) {
        const DiversityReport r = check_diversity(p, i);
        if (r.hls) {
            if (g_hls_rep >= 0) return {false, "more than one representation spans"};
            g_hls_rep = i;
        }
        if (moment_matrix(p, i, MomentKind::optimal).rank == 1) g_rank1_rep = i;
    }
    if (g_hls_rep < 0) return {false, "no representation spans the optimal directions"};
    if (g_rank1_rep < 0) return {false, "no representation has a rank-one optimal moment"};

    RunOptions opt;
    opt.write_csv = false;
    opt.write_svg = false;
    opt.write_summary = false;
    opt.workers = 1;
    g_fig1 = run_experiment(cfg, opt);

    const int plateau = count_window_zero(*g_fig1, g_hls_rep);
    int positive = 0;
    for (int r = 0; r < kRuns; ++r)
        if (g_fig1->at(r, g_rank1_rep).window_regret > 0.0) ++positive;

    if (plateau < kPlateauRuns || positive < kPlateauRuns)
        return {false, format("spanning-map plateau %d/%d, rank-one-map positive window %d/%d "
                              "(need %d)",
                              plateau, kRuns, positive, kRuns, kPlateauRuns)};
    return {true, format("spanning map flat over the final tenth in %d/%d runs, rank-one map "
                         "still paying regret in %d/%d",
                         plateau, kRuns, positive, kRuns)};
}

Outcome best_model_selection() {
    if (!g_fig1) return {false, "shared experiment unavailable"};
    const ExperimentResult& res = *g_fig1;

    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 6; ++i) best = std::min(best, mean_final(res, i));
    const double leader_mean = mean_final(res, 6);

    const bool within_factor = leader_mean <= kLeaderFactor * best;
    bool below_alternatives = true;
    for (int i = 0; i < 6; ++i) {
        if (i == g_hls_rep) continue;
        if (leader_mean > mean_final(res, i)) below_alternatives = false;
    }

    const Outcome out = {
        within_factor && below_alternatives,
        format("selector mean %.2f vs best single %.2f (ratio %.2f, limit %.2f); below every "
               "non-spanning alternative: %s",
               leader_mean, best, leader_mean / best, kLeaderFactor,
               below_alternatives ? "yes" : "no")};
    return out;
}

Outcome mixed_union_plateau() {
    ExperimentConfig cfg;
    cfg.problem = "mixing";
    cfg.seed = kMixingSeed;
    cfg.horizon = kHorizon;
    cfg.runs = kRuns;
    cfg.delta = kDelta;
    cfg.lambda = kReg;
    cfg.algorithms.push_back({AlgorithmSpec::Kind::leader});
    const ContextualProblem p = resolve_problem(cfg);
    for (int i = 0; i < p.n_reps(); ++i) {
        cfg.algorithms.push_back({AlgorithmSpec::Kind::linucb, i});
        if (check_diversity(p, i).hls)
            return {false, format("representation %d spans on its own", i)};
    }
    if (!check_mixed_hls(p).mixed_hls)
        return {false, "the union of representations does not span"};

    RunOptions opt;
    opt.write_csv = false;
    opt.write_svg = false;
    opt.write_summary = false;
    opt.workers = 1;
    const ExperimentResult res = run_experiment(cfg, opt);

    const int selector_plateau = count_window_zero(res, 0);
    int worst_single = 0;
    for (int i = 1; i <= p.n_reps(); ++i)
        worst_single = std::max(worst_single, count_window_zero(res, i));

    if (selector_plateau < kPlateauRuns)
        return {false, format("selector plateaued in only %d/%d runs", selector_plateau, kRuns)};
    if (worst_single > kMaxPlateauLeaks)
        return {false, format("a single map plateaued in %d/%d runs (allowed %d)", worst_single,
                              kRuns, kMaxPlateauLeaks)};
    return {true, format("no single map spans, the union does; selector flat in %d/%d runs, "
                         "single maps in at most %d/%d",
                         selector_plateau, kRuns, worst_single, kRuns)};
}

Outcome elimination_and_replay() {
    ExperimentConfig cfg;
    cfg.problem = "misspec_toy";
    cfg.seed = 1;
    cfg.horizon = kHorizon;
    cfg.runs = kRuns;
    cfg.delta = kDelta;
    cfg.lambda = kReg;
    cfg.algorithms.push_back({AlgorithmSpec::Kind::eleader});

    const ContextualProblem p = resolve_problem(cfg);
    std::vector<int> misspecified;
    std::vector<int> realizable;
    for (int i = 0; i < p.n_reps(); ++i) {
        const double eps = p.rep(i).misspec_sup();
        if (eps > kMisspecThreshold)
            misspecified.push_back(i);
        else if (eps <= kRealizTol)
            realizable.push_back(i);
        else
            return {false, format("representation %d sits in the ambiguous band (eps %.3f)", i,
                                  eps)};
    }
    if (misspecified.empty() || realizable.empty())
        return {false, "the problem does not separate misspecified from realizable maps"};

    RunOptions opt;
    opt.write_csv = false;
    opt.write_svg = false;
    opt.write_summary = false;
    opt.collect_arms = true;
    opt.workers = 1;
    const ExperimentResult res = run_experiment(cfg, opt);

    for (int r = 0; r < kRuns; ++r) {
        const RunStats& s = res.at(r, 0);
        if (s.anomaly) return {false, format("run %d: the active set collapsed", r)};
        const std::set<int> eliminated(s.eliminated_reps.begin(), s.eliminated_reps.end());
        for (int i : misspecified)
            if (!eliminated.count(i))
                return {false, format("run %d: misspecified representation %d survived", r, i)};
        for (int i : realizable)
            if (eliminated.count(i))
                return {false, format("run %d: realizable representation %d was eliminated", r, i)};
        long last_elimination = 0;
        for (long t : s.elimination_times) {
            if (t > kHorizon)
                return {false, format("run %d: an elimination landed after the horizon", r)};
            last_elimination = std::max(last_elimination, t);
        }
        if (s.arms.size() != static_cast<size_t>(kHorizon))
            return {false, format("run %d: arm log is incomplete", r)};

        // Replay: a selector restricted to the surviving set, fed the same
        // reward stream, must reproduce the recorded arms once the last
        // elimination has happened.
        const RunStreams streams = make_run_streams(p, cfg.seed, r, kHorizon);
        LeaderConfig twin_config;
        twin_config.delta = kDelta;
        twin_config.elimination = false;
        LeaderState twin(make_rep_states(p, kReg), twin_config);
        twin.set_active(s.final_active);
        for (long t = 1; t <= kHorizon; ++t) {
            const int x = streams.contexts[static_cast<size_t>(t - 1)];
            FeatureView view;
            view.reserve(static_cast<size_t>(p.n_reps()));
            for (int i = 0; i < p.n_reps(); ++i) view.push_back(&p.rep(i).features[x]);
            const int arm = s.arms[static_cast<size_t>(t - 1)];
            if (t >= last_elimination && twin.select(view).arm != arm)
                return {false, format("run %d: replay diverged from the recorded arms at step "
                                      "%ld",
                                      r, t)};
            const double reward =
                p.mean_reward()(x, arm) + p.noise_std() * streams.noise(t - 1, arm);
            twin.update(view, arm, reward);
        }
    }
    return {true, format("%zu misspecified maps eliminated in every run, %zu realizable maps "
                         "always kept, post-elimination replay matches exactly",
                         misspecified.size(), realizable.size())};
}

Outcome stopping_rule() {
    if (!g_fig1) return {false, "shared experiment unavailable"};
    const ExperimentResult& res = *g_fig1;
    const int glr_alg = 7;
    int stopped = 0;
    long latest = 0;
    bool recommendations_exact = true;
    for (int r = 0; r < kRuns; ++r) {
        const RunStats& s = res.at(r, glr_alg);
        if (s.glr_trigger_step >= 1 && s.glr_trigger_step <= kHorizon) {
            ++stopped;
            latest = std::max(latest, s.glr_trigger_step);
        }
        if (!s.glr_correct) recommendations_exact = false;
    }
    if (stopped != kRuns || !recommendations_exact)
        return {false, format("stopped in %d/%d runs, recommendations exact: %s", stopped, kRuns,
                              recommendations_exact ? "yes" : "no")};
    return {true, format("stopped in %d/%d runs (latest step %ld), recommended arms exact "
                         "everywhere",
                         stopped, kRuns, latest)};
}

Outcome oracle_equivalence() {
    const int dim = 8;
    Rng rng(777);
    RlsState state(dim, 1.3, 2.0, 1.5, 0.5);
    Eigen::MatrixXd v = 1.3 * Eigen::MatrixXd::Identity(dim, dim);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
    for (int k = 0; k < 1000; ++k) {
        Eigen::VectorXd phi(dim);
        for (int j = 0; j < dim; ++j) phi[j] = rng.gaussian();
        phi *= 2.0 * rng.uniform_pos() / phi.norm();
        const double y = rng.gaussian();
        state.update(phi, y);
        v += phi * phi.transpose();
        b += phi * y;
    }

    const Eigen::VectorXd batch = v.ldlt().solve(b);
    const double theta_err = (state.theta() - batch).cwiseAbs().maxCoeff();
    if (theta_err > kThetaTol)
        return {false, format("estimate drifted %.2e from the batch solve (limit %.0e)",
                              theta_err, kThetaTol)};

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
    const double direct = es.eigenvalues().array().log().sum();
    const double logdet_rel = std::abs(state.log_det() - direct) / std::abs(direct);
    if (logdet_rel > kLogDetTol)
        return {false, format("log det drifted %.2e relative (limit %.0e)", logdet_rel,
                              kLogDetTol)};

    double worst_eig = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Rng r2(1234 + static_cast<std::uint64_t>(trial));
        const int d = 3 + static_cast<int>(r2.uniform_index(6));
        const int rank = 1 + static_cast<int>(r2.uniform_index(static_cast<std::uint64_t>(d)));
        Eigen::MatrixXd g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = r2.gaussian();
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
        const Eigen::MatrixXd q = qr.householderQ();
        Eigen::VectorXd spectrum = Eigen::VectorXd::Zero(d);
        double smallest = std::numeric_limits<double>::infinity();
        for (int i = 0; i < rank; ++i) {
            spectrum[i] = r2.uniform(0.5, 3.0);
            smallest = std::min(smallest, spectrum[i]);
        }
        const Eigen::MatrixXd m = q * spectrum.asDiagonal() * q.transpose();
        worst_eig = std::max(worst_eig, std::abs(min_nonzero_eig(m) - smallest));
    }
    if (worst_eig > kEigTol)
        return {false, format("smallest-nonzero-eigenvalue error %.2e (limit %.0e)", worst_eig,
                              kEigTol)};
    return {true, format("after 1000 updates: estimate within %.1e, log det within %.1e "
                         "relative, eigenvalue floor within %.1e over 100 matrices",
                         theta_err, logdet_rel, worst_eig)};
}

Outcome construction_guarantees() {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(4200 + static_cast<std::uint64_t>(trial));
        const int dim = 2 + static_cast<int>(rng.uniform_index(4));
        const int arms = 2 + static_cast<int>(rng.uniform_index(3));
        const int contexts = dim + 2 + static_cast<int>(rng.uniform_index(4));
        const ContextualProblem p = random_problem(contexts, arms, dim, rng);

        const FiniteRepresentation built = build_hls_from_reward(p, dim);
        const ContextualProblem pb =
            ContextualProblem::finite(p.rho(), p.mean_reward(), p.noise_std(), {built});
        if (!check_diversity(pb, 0).hls)
            return {false, format("trial %d: the reward-built map does not span", trial)};

        const bool before = check_diversity(p, 0).hls;
        const FiniteRepresentation rotated =
            apply_transform(p.rep(0), p, InvertibleLinear{random_invertible(dim, rng)});
        const ContextualProblem pr =
            ContextualProblem::finite(p.rho(), p.mean_reward(), p.noise_std(), {rotated});
        if (check_diversity(pr, 0).hls != before)
            return {false, format("trial %d: an invertible transform changed the spanning flag",
                                  trial)};

        const int target =
            1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(dim - 1)));
        const FiniteRepresentation low = apply_transform(p.rep(0), p, Derank{target});
        const ContextualProblem pl =
            ContextualProblem::finite(p.rho(), p.mean_reward(), p.noise_std(), {low});
        const MomentMatrix m = moment_matrix(pl, 0, MomentKind::optimal);
        if (m.rank > target)
            return {false, format("trial %d: optimal-moment rank %d exceeds the target %d", trial,
                                  m.rank, target)};
        const bool low_flag = check_diversity(pl, 0).hls;
        const FiniteRepresentation low_rotated =
            apply_transform(low, pl, InvertibleLinear{random_invertible(dim, rng)});
        const ContextualProblem plr =
            ContextualProblem::finite(p.rho(), p.mean_reward(), p.noise_std(), {low_rotated});
        if (check_diversity(plr, 0).hls != low_flag)
            return {false, format("trial %d: a transform changed the reduced map's flag", trial)};
        double residual = 0.0;
        for (int x = 0; x < p.n_contexts(); ++x) {
            const Eigen::VectorXd fitted = pl.rep(0).features[x] * pl.rep(0).param;
            residual = std::max(
                residual,
                (fitted - p.mean_reward().row(x).transpose()).cwiseAbs().maxCoeff());
        }
        if (residual > kRealizTol)
            return {false, format("trial %d: rank reduction broke realizability (%.2e)", trial,
                                  residual)};
    }
    return {true, format("100 problems: reward-built maps span, invertible transforms preserve "
                         "the flag, rank targets hold with residuals under %.0e",
                         kRealizTol)};
}

Outcome onset_envelope() {
    if (!g_fig1) return {false, "shared experiment unavailable"};
    const ContextualProblem p = preset_problem("fig1", kFig1Seed);
    const GapProfile gaps = gap_profile(p);
    const double lambda = check_diversity(p, g_hls_rep).lambda_hls;
    const FiniteRepresentation& rep = p.rep(g_hls_rep);
    const BoundInputs in =
        make_bound_inputs(kDelta, kReg, rep.feature_bound, rep.param_bound, p.noise_std(),
                          gaps.min_gap, gaps.max_gap, rep.dim());
    const TauResult tau = tau_hls(in, lambda);
    int within = 0;
    for (int r = 0; r < kRuns; ++r)
        if (static_cast<double>(g_fig1->at(r, g_hls_rep).last_positive_step) <= tau.tau) ++within;
    if (within < kPlateauRuns)
        return {false, format("onset beat the %.2e envelope in only %d/%d runs", tau.tau, within,
                              kRuns)};
    return {true, format("empirical onset below the %.2e envelope in %d/%d runs (measured "
                         "eigenvalue %.3f)",
                         tau.tau, within, kRuns, lambda)};
}

Outcome byte_identical_reruns() {
    namespace fs = std::filesystem;
    const fs::path base = "acceptance_tmp";
    std::error_code ec;
    fs::remove_all(base, ec);

    ExperimentConfig cfg;
    cfg.problem = "fig1";
    cfg.seed = 3;
    cfg.horizon = 2000;
    cfg.runs = 3;
    cfg.delta = kDelta;
    cfg.lambda = kReg;
    cfg.trace_every = 7;
    cfg.algorithms = {{AlgorithmSpec::Kind::linucb, 0}, {AlgorithmSpec::Kind::leader},
                      {AlgorithmSpec::Kind::eleader},   {AlgorithmSpec::Kind::exp4ix},
                      {AlgorithmSpec::Kind::regbal},    {AlgorithmSpec::Kind::glr_bai, 0}};

    RunOptions opt;
    opt.write_svg = false;
    opt.workers = 1;
    cfg.out_dir = (base / "a").string();
    const ExperimentResult first = run_experiment(cfg, opt);
    cfg.out_dir = (base / "b").string();
    opt.workers = 2;
    const ExperimentResult second = run_experiment(cfg, opt);

    const auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string trace_a = slurp(first.csv_path);
    const std::string trace_b = slurp(second.csv_path);
    const std::string summary_a = slurp(first.summary_path);
    const std::string summary_b = slurp(second.summary_path);
    fs::remove_all(base, ec);

    if (trace_a.empty() || summary_a.empty()) return {false, "no output was written"};
    if (trace_a != trace_b || summary_a != summary_b)
        return {false, "outputs differ between identically-seeded runs"};
    return {true, format("trace (%zu bytes) and summary (%zu bytes) identical across a rerun "
                         "with a different worker count",
                         trace_a.size(), summary_a.size())};
}

}  // namespace

int main() {
    run_criterion("diversity fixture classification", 5.0, fixture_classification);
    run_criterion("constant-regret plateau", 180.0, constant_regret_plateau);
    run_criterion("selection matches the best representation", 180.0, best_model_selection);
    run_criterion("union of locally good representations", 300.0, mixed_union_plateau);
    run_criterion("misspecification elimination and replay", 300.0, elimination_and_replay);
    run_criterion("stopping rule identifies optimal arms", 120.0, stopping_rule);
    run_criterion("incremental-solver oracle equivalence", 10.0, oracle_equivalence);
    run_criterion("representation construction guarantees", 30.0, construction_guarantees);
    run_criterion("plateau onset within the closed-form envelope", 180.0, onset_envelope);
    run_criterion("byte-identical reruns", 120.0, byte_identical_reruns);

    if (g_failures == 0)
        std::printf("all 10 criteria passed\n");
    else
        std::printf("%d of 10 criteria failed\n", g_failures);
    return g_failures;
}
