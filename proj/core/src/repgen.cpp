#include "banditlab/repgen.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "banditlab/diversity.hpp"
#include "banditlab/moments.hpp"

namespace banditlab {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

/// Context indices with rho > 0, most likely first (ties by index).
std::vector<int> contexts_by_weight(const ContextualProblem& problem) {
    std::vector<int> order;
    for (int x = 0; x < problem.n_contexts(); ++x)
        if (problem.rho()[x] > 0.0) order.push_back(x);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return problem.rho()[a] > problem.rho()[b];
    });
    return order;
}

void check_rep_matches(const FiniteRepresentation& rep, const ContextualProblem& problem) {
    require(problem.is_finite(), "apply_transform: problem must be finite");
    require(rep.n_contexts() == problem.n_contexts() && rep.n_arms() == problem.n_arms(),
            "apply_transform: representation shape does not match the problem");
}

FiniteRepresentation transform_invertible(const FiniteRepresentation& rep,
                                          const InvertibleLinear& spec) {
    const int d = rep.dim();
    require(spec.matrix.rows() == d && spec.matrix.cols() == d,
            "InvertibleLinear: matrix must be d x d");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(spec.matrix);
    require(std::abs(lu.determinant()) > 1e-9, "InvertibleLinear: matrix is singular");

    FiniteRepresentation out = rep;
    for (auto& block : out.features) block = block * spec.matrix;
    out.param = lu.solve(rep.param);
    out.fit_feature_bound();
    out.fit_param_bound();
    return out;
}

FiniteRepresentation transform_derank(const FiniteRepresentation& rep,
                                      const ContextualProblem& problem, const Derank& spec) {
    require(!rep.has_misspec(), "Derank: representation must be realizable");
    const int d = rep.dim();
    require(spec.target_rank >= 1 && spec.target_rank < d,
            "Derank: target_rank must satisfy 1 <= k < dim");

    const std::vector<int> order = contexts_by_weight(problem);
    const GapProfile gp = gap_profile(problem);
    const long q = static_cast<long>(order.size()) - spec.target_rank + 1;
    if (q <= 1) return rep;

    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    double norm2 = 0.0;
    for (long i = 0; i < q; ++i) {
        const int x = order[static_cast<size_t>(i)];
        const double mu_star = problem.mean_reward()(x, gp.optimal_arm[x]);
        w += mu_star * rep.features[x].row(gp.optimal_arm[x]).transpose();
        norm2 += mu_star * mu_star;
    }
    require(norm2 > 1e-18, "Derank: optimal rewards vanish on the merged contexts");

    FiniteRepresentation out = rep;
    for (long i = 0; i < q; ++i) {
        const int x = order[static_cast<size_t>(i)];
        const double mu_star = problem.mean_reward()(x, gp.optimal_arm[x]);
        out.features[x].row(gp.optimal_arm[x]) = (mu_star / norm2) * w.transpose();
    }
    out.fit_feature_bound();
    return out;
}

FiniteRepresentation transform_merge(const FiniteRepresentation& rep, const MergeFeatures& spec) {
    const int d = rep.dim();
    std::vector<std::vector<int>> groups = spec.groups;
    std::vector<int> owner(static_cast<size_t>(d), -1);
    for (size_t g = 0; g < groups.size(); ++g) {
        require(!groups[g].empty(), "MergeFeatures: empty group");
        std::sort(groups[g].begin(), groups[g].end());
        for (int j : groups[g]) {
            require(j >= 0 && j < d, "MergeFeatures: index out of range");
            require(owner[static_cast<size_t>(j)] == -1, "MergeFeatures: groups must be disjoint");
            owner[static_cast<size_t>(j)] = static_cast<int>(g);
        }
    }

    /// Output coordinate layout: scan original coordinates in order; a
    /// group emits its merged coordinate at its smallest member.
    struct OutCoord {
        int group;  // -1 for a plain copy
        int source;
    };
    std::vector<OutCoord> layout;
    for (int j = 0; j < d; ++j) {
        const int g = owner[static_cast<size_t>(j)];
        if (g == -1)
            layout.push_back({-1, j});
        else if (groups[static_cast<size_t>(g)].front() == j)
            layout.push_back({g, j});
    }

    const int nd = static_cast<int>(layout.size());
    FiniteRepresentation out;
    out.label = rep.label;
    out.misspec = rep.misspec;
    out.param.resize(nd);
    for (int c = 0; c < nd; ++c)
        out.param[c] = layout[static_cast<size_t>(c)].group == -1
                           ? rep.param[layout[static_cast<size_t>(c)].source]
                           : 1.0;
    out.features.reserve(rep.features.size());
    for (const Eigen::MatrixXd& block : rep.features) {
        Eigen::MatrixXd nb(block.rows(), nd);
        for (int c = 0; c < nd; ++c) {
            const OutCoord& oc = layout[static_cast<size_t>(c)];
            if (oc.group == -1) {
                nb.col(c) = block.col(oc.source);
            } else {
                nb.col(c).setZero();
                for (int j : groups[static_cast<size_t>(oc.group)])
                    nb.col(c) += rep.param[j] * block.col(j);
            }
        }
        out.features.push_back(std::move(nb));
    }
    out.fit_feature_bound();
    out.fit_param_bound();
    return out;
}

FiniteRepresentation transform_normalize(const FiniteRepresentation& rep) {
    const double s = rep.param.norm();
    require(s > 1e-12, "Normalize: parameter norm is zero");
    FiniteRepresentation out = rep;
    for (auto& block : out.features) block *= s;
    out.param /= s;
    out.fit_feature_bound();
    out.fit_param_bound();
    return out;
}

FiniteRepresentation transform_mixsplit(const FiniteRepresentation& rep,
                                        const ContextualProblem& problem, const MixSplit& spec) {
    const int d = rep.dim();
    require(d >= 2, "MixSplit: needs dimension >= 2");
    require(spec.first >= 0 && spec.first < d && spec.second >= 0 && spec.second < d &&
                spec.first != spec.second,
            "MixSplit: invalid coordinate pair");
    const double wsum = rep.param[spec.first] + rep.param[spec.second];
    require(std::abs(wsum) > 1e-9, "MixSplit: parameter weights of the pair cancel");

    const GapProfile gp = gap_profile(problem);
    std::set<std::pair<int, int>> keep(spec.keep_original.begin(), spec.keep_original.end());
    for (const auto& [x, a] : keep) {
        require(x >= 0 && x < rep.n_contexts() && a >= 0 && a < rep.n_arms(),
                "MixSplit: keep_original entry out of range");
        require(a != gp.optimal_arm[static_cast<size_t>(x)],
                "MixSplit: keep_original must not list optimal rows");
    }

    FiniteRepresentation out = rep;
    for (int x = 0; x < rep.n_contexts(); ++x) {
        for (int a = 0; a < rep.n_arms(); ++a) {
            const bool merge = a == gp.optimal_arm[static_cast<size_t>(x)] || !keep.count({x, a});
            if (!merge) continue;
            Eigen::MatrixXd& block = out.features[x];
            const double avg = (rep.param[spec.first] * block(a, spec.first) +
                                rep.param[spec.second] * block(a, spec.second)) /
                               wsum;
            block(a, spec.first) = avg;
            block(a, spec.second) = avg;
        }
    }
    out.fit_feature_bound();
    return out;
}

}  // namespace

FiniteRepresentation build_hls_from_reward(const ContextualProblem& problem, int dim) {
    require(problem.is_finite(), "build_hls_from_reward: problem must be finite");
    require(dim >= 1, "build_hls_from_reward: dim must be positive");

    const std::vector<int> order = contexts_by_weight(problem);
    require(static_cast<int>(order.size()) >= dim,
            "build_hls_from_reward: needs at least dim positive-probability contexts");

    const GapProfile gp = gap_profile(problem);
    auto mu_star = [&](int x) { return problem.mean_reward()(x, gp.optimal_arm[static_cast<size_t>(x)]); };

    // First anchor must have a nonzero optimal reward; keep the weight
    // ordering otherwise.
    std::vector<int> anchors;
    int lead = -1;
    for (int x : order)
        if (mu_star(x) != 0.0) {
            lead = x;
            break;
        }
    require(lead >= 0, "build_hls_from_reward: every optimal reward is zero");
    anchors.push_back(lead);
    for (int x : order) {
        if (static_cast<int>(anchors.size()) == dim) break;
        if (x != lead) anchors.push_back(x);
    }

    double max_abs = 0.0;
    for (int x : order) max_abs = std::max(max_abs, std::abs(mu_star(x)));
    const double scale = 1.0 + max_abs;

    FiniteRepresentation rep;
    rep.label = "reward_anchored";
    rep.param = Eigen::VectorXd::Zero(dim);
    rep.param[0] = 1.0;
    rep.param_bound = 1.0;
    rep.features.reserve(static_cast<size_t>(problem.n_contexts()));
    for (int x = 0; x < problem.n_contexts(); ++x) {
        Eigen::MatrixXd block = Eigen::MatrixXd::Zero(problem.n_arms(), dim);
        block.col(0) = problem.mean_reward().row(x).transpose();
        for (int j = 1; j < dim; ++j)
            if (x == anchors[static_cast<size_t>(j)]) block.col(j).setConstant(scale);
        rep.features.push_back(std::move(block));
    }
    rep.fit_feature_bound();
    rep.validate();
    return rep;
}

FiniteRepresentation apply_transform(const FiniteRepresentation& rep,
                                     const ContextualProblem& problem, const TransformSpec& spec) {
    check_rep_matches(rep, problem);
    FiniteRepresentation out = std::visit(
        [&](const auto& s) -> FiniteRepresentation {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, InvertibleLinear>) return transform_invertible(rep, s);
            if constexpr (std::is_same_v<T, Derank>) return transform_derank(rep, problem, s);
            if constexpr (std::is_same_v<T, MergeFeatures>) return transform_merge(rep, s);
            if constexpr (std::is_same_v<T, Normalize>) return transform_normalize(rep);
            if constexpr (std::is_same_v<T, MixSplit>) return transform_mixsplit(rep, problem, s);
        },
        spec);
    out.validate();
    return out;
}

Eigen::MatrixXd random_invertible(int dim, Rng& rng) {
    require(dim >= 1, "random_invertible: dim must be positive");
    for (;;) {
        Eigen::MatrixXd a(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) a(r, c) = rng.gaussian();
        if (std::abs(Eigen::PartialPivLU<Eigen::MatrixXd>(a).determinant()) >= 1e-6) return a;
    }
}

ContextualProblem random_problem(int n_contexts, int n_arms, int dim, Rng& rng) {
    require(n_contexts >= 1 && n_arms >= 1 && dim >= 1,
            "random_problem: all sizes must be positive");
    require(n_contexts >= dim,
            "random_problem: a full-rank optimal moment needs at least dim contexts");

    const Eigen::VectorXd rho =
        Eigen::VectorXd::Constant(n_contexts, 1.0 / static_cast<double>(n_contexts));
    for (;;) {
        Eigen::VectorXd theta(dim);
        do {
            for (int j = 0; j < dim; ++j) theta[j] = rng.uniform(-1.0, 1.0);
        } while (theta.norm() < 1e-12);
        theta /= theta.norm();

        FiniteRepresentation rep;
        rep.label = "orig";
        rep.param = theta;
        rep.param_bound = 1.0;
        Eigen::MatrixXd mu(n_contexts, n_arms);
        rep.features.reserve(static_cast<size_t>(n_contexts));
        for (int x = 0; x < n_contexts; ++x) {
            Eigen::MatrixXd block(n_arms, dim);
            for (int a = 0; a < n_arms; ++a)
                for (int j = 0; j < dim; ++j) block(a, j) = rng.gaussian();
            mu.row(x) = (block * theta).transpose();
            rep.features.push_back(std::move(block));
        }
        rep.fit_feature_bound();

        ContextualProblem problem = ContextualProblem::finite(rho, mu, 0.3, {std::move(rep)});
        if (moment_matrix(problem, 0, MomentKind::optimal).rank == dim) return problem;
    }
}

namespace {

constexpr int kPresetContexts = 20;
constexpr int kPresetArms = 5;
constexpr int kPresetDim = 6;
constexpr int kPresetAttempts = 100000;

/// Largest gap any preset instance may contain.
constexpr double kGapCap = 10.0;
/// Minimum-gap band for the plateau presets (fig1, mixing). The floor keeps
/// spanning representations settling well inside the bundled horizons; the
/// ceiling keeps rank-deficient copies exploring all the way to the end, so
/// the two behaviours stay distinguishable in the final stretch of a run.
constexpr double kPlateauGapLo = 0.08;
constexpr double kPlateauGapHi = 0.14;
/// Minimum-gap floor for the elimination presets (vardim, misspec_toy),
/// which only need comfortable margins, not late exploration.
constexpr double kSettledGapLo = 0.15;
/// Floor on every mixing copy's null-space demand (see null_demand): high
/// enough that each copy's rank deficiency still draws exploration in the
/// final tenth of a 50k-step run.
constexpr double kMixDemandFloor = 150.0;

/// Generated problems are filtered for a healthy margin: no reward ties, a
/// minimum gap inside the requested band, gaps bounded above, and a solidly
/// full-rank optimal moment for the source representation.
bool base_quality(const ContextualProblem& problem, double min_gap_lo, double min_gap_hi) {
    const GapProfile gp = gap_profile(problem);
    if (gp.has_ties || gp.min_gap < min_gap_lo || gp.min_gap > min_gap_hi) return false;
    if (gp.max_gap > kGapCap) return false;
    return moment_matrix(problem, 0, MomentKind::optimal).lambda_min >= 0.15;
}

/// Random invertible map with moderate conditioning, so a transformed
/// representation stays comparably easy to learn.
Eigen::MatrixXd filtered_invertible(int dim, Rng& rng) {
    for (;;) {
        Eigen::MatrixXd a = random_invertible(dim, rng);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        const Eigen::VectorXd& sv = svd.singularValues();
        if (sv[sv.size() - 1] >= 0.2 && sv[0] <= 6.0) return a;
    }
}

FiniteRepresentation transform_and_normalize(const FiniteRepresentation& rep,
                                             const ContextualProblem& problem, Rng& rng) {
    FiniteRepresentation out =
        apply_transform(rep, problem, InvertibleLinear{filtered_invertible(rep.dim(), rng)});
    out = apply_transform(out, problem, Normalize{});
    out.label = rep.label;
    return out;
}

bool rep_is_hls(const ContextualProblem& problem, int i) {
    return moment_matrix(problem, i, MomentKind::optimal).rank == problem.rep(i).dim();
}

bool rep_is_non_redundant(const ContextualProblem& problem, int i) {
    return moment_matrix(problem, i, MomentKind::all_arms).rank == problem.rep(i).dim();
}

/// How strongly the best suboptimal row feeds a rank-deficient
/// representation's missing directions: max over non-optimal rows of the
/// squared feature component in the optimal-moment null space over the
/// squared gap. A UCB learner keeps revisiting a row while its width along
/// an unexplored direction exceeds the gap, so this ratio controls how far
/// into a run the representation's rank deficiency stays visible.
double null_demand(const ContextualProblem& problem, int i, const GapProfile& gp) {
    const MomentMatrix m = moment_matrix(problem, i, MomentKind::optimal);
    const int nullity = m.dim() - m.rank;
    if (nullity == 0) return 0.0;
    const Eigen::MatrixXd null_basis = m.eigenvectors.leftCols(nullity);
    double demand = 0.0;
    for (int x = 0; x < problem.n_contexts(); ++x) {
        for (int a = 0; a < problem.n_arms(); ++a) {
            if (a == gp.optimal_arm[static_cast<size_t>(x)]) continue;
            const double gap = gp.gaps(x, a);
            const double c2 =
                (null_basis.transpose() *
                 problem.rep(i).features[static_cast<size_t>(x)].row(a).transpose())
                    .squaredNorm();
            demand = std::max(demand, c2 / (gap * gap));
        }
    }
    return demand;
}

ContextualProblem preset_fig1(std::uint64_t seed) {
    Rng root(seed);
    for (int attempt = 0; attempt < kPresetAttempts; ++attempt) {
        Rng rng = root.fork(static_cast<std::uint64_t>(attempt));
        ContextualProblem problem = random_problem(kPresetContexts, kPresetArms, kPresetDim, rng);
        if (!base_quality(problem, kPlateauGapLo, kPlateauGapHi)) continue;

        const FiniteRepresentation orig = problem.rep(0);
        std::vector<FiniteRepresentation> reps;
        for (int k = kPresetDim; k >= 1; --k) {
            FiniteRepresentation r =
                k == kPresetDim ? orig : apply_transform(orig, problem, Derank{k});
            r.label = "rank_" + std::to_string(k);
            reps.push_back(transform_and_normalize(r, problem, rng));
        }
        problem.set_reps(std::move(reps));

        bool ok = rep_is_hls(problem, 0);
        for (int i = 1; ok && i < problem.n_reps(); ++i) ok = !rep_is_hls(problem, i);
        if (ok) return problem;
    }
    throw std::runtime_error("preset fig1: could not generate a suitable problem");
}

/// The six equivalent representations of the varying-dimension experiment:
/// the source itself plus, for each output dimension 2..6, trailing
/// coordinates merged into one and the optimal moment collapsed to rank 1.
std::vector<FiniteRepresentation> vardim_reps(const ContextualProblem& problem, Rng& rng) {
    const FiniteRepresentation& orig = problem.rep(0);
    std::vector<FiniteRepresentation> reps;

    FiniteRepresentation full = orig;
    full.label = "orig";
    reps.push_back(transform_and_normalize(full, problem, rng));

    for (int m = 2; m <= kPresetDim; ++m) {
        FiniteRepresentation r = orig;
        if (m < kPresetDim) {
            std::vector<int> trailing;
            for (int j = m - 1; j < kPresetDim; ++j) trailing.push_back(j);
            r = apply_transform(r, problem, MergeFeatures{{trailing}});
        }
        r = apply_transform(r, problem, Derank{1});
        r.label = "dim_" + std::to_string(m);
        reps.push_back(transform_and_normalize(r, problem, rng));
    }
    return reps;
}

ContextualProblem preset_vardim(std::uint64_t seed) {
    Rng root(seed);
    for (int attempt = 0; attempt < kPresetAttempts; ++attempt) {
        Rng rng = root.fork(static_cast<std::uint64_t>(attempt));
        ContextualProblem problem = random_problem(kPresetContexts, kPresetArms, kPresetDim, rng);
        if (!base_quality(problem, kSettledGapLo, kGapCap)) continue;

        problem.set_reps(vardim_reps(problem, rng));

        bool ok = rep_is_hls(problem, 0);
        for (int i = 1; ok && i < problem.n_reps(); ++i) ok = !rep_is_hls(problem, i);
        if (ok) return problem;
    }
    throw std::runtime_error("preset vardim: could not generate a suitable problem");
}

ContextualProblem preset_mixing(std::uint64_t seed) {
    const std::vector<std::pair<int, int>> pairs = {{0, 1}, {2, 3}, {4, 5},
                                                    {1, 2}, {3, 4}, {5, 0}};
    Rng root(seed);
    for (int attempt = 0; attempt < kPresetAttempts; ++attempt) {
        Rng rng = root.fork(static_cast<std::uint64_t>(attempt));
        ContextualProblem problem = random_problem(kPresetContexts, kPresetArms, kPresetDim, rng);
        if (!base_quality(problem, kPlateauGapLo, kPlateauGapHi)) continue;

        const FiniteRepresentation orig = problem.rep(0);
        bool weights_ok = true;
        for (const auto& [p, q] : pairs)
            weights_ok = weights_ok && std::abs(orig.param[p] + orig.param[q]) >= 0.1;
        if (!weights_ok) continue;

        // Every non-optimal row keeps its original features in exactly two
        // of the six copies and is averaged in the other four, so each copy
        // stays non-redundant while the copies jointly cover every row. A
        // kept row informs a copy's missing direction only through its
        // feature difference across that copy's merged pair, and a copy only
        // keeps exploring late in a run when a tight-gap row feeds that
        // direction strongly. So rows are dealt in ascending-gap order, each
        // to the two copies where its benefit relative to what the copy has
        // already collected is largest: the tight rows spread to the copies
        // that still need them instead of clustering by index.
        const GapProfile gp = gap_profile(problem);
        std::vector<std::tuple<double, int, int>> sorted_rows;
        for (int x = 0; x < problem.n_contexts(); ++x)
            for (int a = 0; a < problem.n_arms(); ++a)
                if (a != gp.optimal_arm[static_cast<size_t>(x)])
                    sorted_rows.emplace_back(gp.gaps(x, a), x, a);
        std::sort(sorted_rows.begin(), sorted_rows.end());
        const size_t capacity =
            (2 * sorted_rows.size() + pairs.size() - 1) / pairs.size();
        std::vector<std::vector<std::pair<int, int>>> keep(pairs.size());
        std::vector<double> collected(pairs.size(), 0.0);
        for (const auto& [gap, x, a] : sorted_rows) {
            const Eigen::RowVectorXd phi = orig.features[static_cast<size_t>(x)].row(a);
            std::vector<std::tuple<bool, double, size_t>> score;
            std::vector<double> benefit(pairs.size(), 0.0);
            for (size_t i = 0; i < pairs.size(); ++i) {
                const double diff = phi[pairs[i].first] - phi[pairs[i].second];
                benefit[i] = diff * diff / (2.0 * gap * gap);
                // Copies with spare capacity outrank full ones, so counts
                // stay balanced and the fallback only fires for the last
                // couple of filler rows.
                score.push_back(
                    {keep[i].size() >= capacity, -benefit[i] / (1.0 + collected[i]), i});
            }
            std::sort(score.begin(), score.end());
            for (size_t pick = 0; pick < 2; ++pick) {
                const size_t i = std::get<2>(score[pick]);
                keep[i].push_back({x, a});
                collected[i] = std::max(collected[i], benefit[i]);
            }
        }

        std::vector<FiniteRepresentation> reps;
        for (size_t i = 0; i < pairs.size(); ++i) {
            FiniteRepresentation r = apply_transform(
                orig, problem, MixSplit{pairs[i].first, pairs[i].second, keep[i]});
            r.label = "mix_" + std::to_string(i);
            reps.push_back(transform_and_normalize(r, problem, rng));
        }
        problem.set_reps(std::move(reps));

        bool ok = true;
        for (int i = 0; ok && i < problem.n_reps(); ++i)
            ok = !rep_is_hls(problem, i) && rep_is_non_redundant(problem, i) &&
                 null_demand(problem, i, gp) >= kMixDemandFloor;
        if (ok && check_mixed_hls(problem).mixed_hls) return problem;
    }
    throw std::runtime_error("preset mixing: could not generate a suitable problem");
}

/// Least-squares refit of a fixed feature tensor against the reward table;
/// the residual is stored as the representation's misspecification.
FiniteRepresentation refit_rep(std::vector<Eigen::MatrixXd> features,
                               const ContextualProblem& problem, const std::string& label) {
    const int n = problem.n_contexts();
    const int k = problem.n_arms();
    const int d = static_cast<int>(features[0].cols());
    Eigen::MatrixXd design(static_cast<long>(n) * k, d);
    Eigen::VectorXd target(static_cast<long>(n) * k);
    for (int x = 0; x < n; ++x) {
        design.middleRows(static_cast<long>(x) * k, k) = features[static_cast<size_t>(x)];
        target.segment(static_cast<long>(x) * k, k) = problem.mean_reward().row(x).transpose();
    }
    const Eigen::VectorXd theta = design.colPivHouseholderQr().solve(target);

    FiniteRepresentation rep;
    rep.label = label;
    rep.features = std::move(features);
    rep.param = theta;
    rep.misspec.resize(n, k);
    for (int x = 0; x < n; ++x)
        rep.misspec.row(x) = problem.mean_reward().row(x) -
                             (rep.features[static_cast<size_t>(x)] * theta).transpose();
    rep.fit_feature_bound();
    rep.fit_param_bound();
    return rep;
}

/// A usable misspecified rep must be distinguishable from the realizable
/// ones on the data an optimistic learner actually collects: substantial
/// mean squared residual overall and on optimal rows in particular.
bool misspec_quality(const FiniteRepresentation& rep, const ContextualProblem& problem) {
    if (rep.param.norm() < 1e-9) return false;
    const GapProfile gp = gap_profile(problem);
    const double mean_sq = rep.misspec.array().square().mean();
    double opt_sq = 0.0;
    for (int x = 0; x < problem.n_contexts(); ++x) {
        const double f = rep.misspec(x, gp.optimal_arm[static_cast<size_t>(x)]);
        opt_sq += f * f;
    }
    opt_sq /= problem.n_contexts();
    return mean_sq >= 0.1 && opt_sq >= 0.1 && rep.misspec_sup() > 0.05;
}

ContextualProblem preset_misspec_toy(std::uint64_t seed) {
    Rng root(seed);
    for (int attempt = 0; attempt < kPresetAttempts; ++attempt) {
        Rng rng = root.fork(static_cast<std::uint64_t>(attempt));
        ContextualProblem problem = random_problem(kPresetContexts, kPresetArms, kPresetDim, rng);
        if (!base_quality(problem, kSettledGapLo, kGapCap)) continue;

        std::vector<FiniteRepresentation> reps = vardim_reps(problem, rng);
        {
            ContextualProblem staged = problem;
            staged.set_reps(reps);
            bool classified = rep_is_hls(staged, 0);
            for (int i = 1; classified && i < staged.n_reps(); ++i)
                classified = !rep_is_hls(staged, i);
            if (!classified) continue;
        }

        const FiniteRepresentation& orig = problem.rep(0);
        bool ok = true;
        for (int d : {3, 2}) {
            std::vector<Eigen::MatrixXd> feats;
            for (const Eigen::MatrixXd& block : orig.features) feats.push_back(block.leftCols(d));
            FiniteRepresentation r = refit_rep(std::move(feats), problem,
                                               "trunc_" + std::to_string(d));
            if (!misspec_quality(r, problem)) {
                ok = false;
                break;
            }
            reps.push_back(apply_transform(r, problem, Normalize{}));
        }
        if (!ok) continue;

        for (int d : {3, 9}) {
            bool found = false;
            for (int tries = 0; tries < 50 && !found; ++tries) {
                std::vector<Eigen::MatrixXd> feats;
                for (int x = 0; x < problem.n_contexts(); ++x) {
                    Eigen::MatrixXd block(problem.n_arms(), d);
                    for (int a = 0; a < problem.n_arms(); ++a)
                        for (int j = 0; j < d; ++j) block(a, j) = rng.gaussian();
                    feats.push_back(std::move(block));
                }
                FiniteRepresentation r = refit_rep(std::move(feats), problem,
                                                   "rand_" + std::to_string(d));
                if (!misspec_quality(r, problem)) continue;
                reps.push_back(apply_transform(r, problem, Normalize{}));
                found = true;
            }
            if (!found) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        problem.set_reps(std::move(reps));
        return problem;
    }
    throw std::runtime_error("preset misspec_toy: could not generate a suitable problem");
}

ContextualProblem preset_continuous() {
    const std::vector<Eigen::Vector2d> arms = {Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 1),
                                               Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1)};

    ContinuousSpec spec;
    spec.sampler = "half_disc";
    spec.mc_samples = 100000;
    spec.n_arms = static_cast<int>(arms.size());
    // Uniform over the lower half of the unit disc.
    spec.sample_context = [](Rng& rng) {
        const double r = std::sqrt(rng.uniform());
        const double ang = -Rng::pi() * rng.uniform();
        return Eigen::VectorXd{{r * std::cos(ang), r * std::sin(ang)}};
    };
    spec.mean_reward = [arms](const Eigen::VectorXd& x, int a) {
        return x[0] * arms[static_cast<size_t>(a)][0] + x[1] * arms[static_cast<size_t>(a)][1];
    };

    ContinuousRepresentation direct;
    direct.label = "direct_2d";
    direct.features = [arms](const Eigen::VectorXd& x, int a) {
        return Eigen::VectorXd{
            {x[0] * arms[static_cast<size_t>(a)][0], x[1] * arms[static_cast<size_t>(a)][1]}};
    };
    direct.param = Eigen::VectorXd{{1.0, 1.0}};
    direct.feature_bound = 1.0;
    direct.param_bound = std::sqrt(2.0);

    ContinuousRepresentation recentered;
    recentered.label = "recentered_3d";
    recentered.features = [arms](const Eigen::VectorXd& x, int a) {
        const Eigen::Vector2d& v = arms[static_cast<size_t>(a)];
        return Eigen::VectorXd{{x[0] * v[0] - x[0], x[1] * v[1] - x[1], x[0] + x[1]}};
    };
    recentered.param = Eigen::VectorXd{{1.0, 1.0, 1.0}};
    recentered.feature_bound = std::sqrt(3.0);
    recentered.param_bound = std::sqrt(3.0);

    spec.reps = {std::move(direct), std::move(recentered)};
    return ContextualProblem::continuous(std::move(spec), 0.2);
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig1", "vardim", "mixing", "continuous", "misspec_toy"};
}

ContextualProblem preset_problem(const std::string& name, std::uint64_t seed) {
    if (name == "fig1") return preset_fig1(seed);
    if (name == "vardim") return preset_vardim(seed);
    if (name == "mixing") return preset_mixing(seed);
    if (name == "continuous") return preset_continuous();
    if (name == "misspec_toy") return preset_misspec_toy(seed);
    throw std::invalid_argument("unknown preset '" + name +
                                "' (known: fig1, vardim, mixing, continuous, misspec_toy)");
}

}  // namespace banditlab
