#include <benchmark/benchmark.h>

#include "banditlab/diversity.hpp"
#include "banditlab/learners.hpp"
#include "banditlab/repgen.hpp"
#include "banditlab/rls.hpp"
#include "banditlab/rng.hpp"

namespace {

using namespace banditlab;

void bm_rls_update(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    Rng rng(7);
    RlsState rls(dim, 1.0, 2.0, 1.0, 0.3);
    Eigen::VectorXd phi(dim);
    for (auto _ : state) {
        for (int i = 0; i < dim; ++i) phi[i] = rng.gaussian();
        rls.update(phi, rng.gaussian());
        benchmark::DoNotOptimize(rls.theta());
    }
}
BENCHMARK(bm_rls_update)->Arg(6)->Arg(24)->Arg(96);

void bm_rls_beta(benchmark::State& state) {
    RlsState rls(12, 1.0, 2.0, 1.0, 0.3);
    Rng rng(7);
    Eigen::VectorXd phi(12);
    for (int t = 0; t < 256; ++t) {
        for (int i = 0; i < 12; ++i) phi[i] = rng.gaussian();
        rls.update(phi, rng.gaussian());
    }
    for (auto _ : state) benchmark::DoNotOptimize(rls.beta(0.01));
}
BENCHMARK(bm_rls_beta);

void bm_leader_step(benchmark::State& state) {
    Rng rng(11);
    ContextualProblem problem = preset_problem("fig1", 1);
    LeaderConfig config;
    LeaderState leader(make_rep_states(problem, 1.0), config);

    std::vector<FeatureView> views(static_cast<size_t>(problem.n_contexts()));
    for (int x = 0; x < problem.n_contexts(); ++x)
        for (int i = 0; i < problem.n_reps(); ++i)
            views[static_cast<size_t>(x)].push_back(&problem.rep(i).features[static_cast<size_t>(x)]);

    for (auto _ : state) {
        const int x = static_cast<int>(rng.uniform_index(
            static_cast<std::uint64_t>(problem.n_contexts())));
        const auto decision = leader.select(views[static_cast<size_t>(x)]);
        const double reward = problem.mean_reward()(x, decision.arm) + 0.3 * rng.gaussian();
        leader.update(views[static_cast<size_t>(x)], decision.arm, reward);
        benchmark::DoNotOptimize(decision);
    }
}
BENCHMARK(bm_leader_step);

void bm_diversity_check(benchmark::State& state) {
    Rng rng(3);
    ContextualProblem problem = random_problem(20, 5, 6, rng);
    for (auto _ : state) {
        const DiversityReport report = check_diversity(problem, 0);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(bm_diversity_check);

}  // namespace

BENCHMARK_MAIN();
