#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "banditlab/moments.hpp"
#include "banditlab/problem.hpp"

namespace banditlab {

enum class BbkMethod { exact, randomized };

struct DiversityOptions {
    /// Exact sign-pattern enumeration is available for dim <= 3; larger
    /// dimensions fall back to randomized directions with a report flag.
    bool prefer_exact_bbk = true;
    int bbk_directions = 10000;
    std::uint64_t bbk_seed = 0xb5e55edULL;
    /// Monte Carlo budget for continuous problems; -1 uses the problem's own.
    long mc_samples = -1;
    std::uint64_t mc_seed = 0xd1ce5ULL;
};

/// Outcome of the spanning-condition checks for one representation.
///
/// A failed randomized direction is a certificate of non-membership; a pass
/// over sampled directions is only evidence, which is why the method and
/// direction count are recorded.
struct DiversityReport {
    bool non_redundant = false;
    bool cmb = false;
    bool bbk = false;
    bool hls = false;
    bool wys = false;
    /// lambda_min of the optimal-feature second moment; exactly 0 whenever
    /// the moment is rank-deficient, so hls == (lambda_hls > 0).
    double lambda_hls = 0.0;
    /// Smallest nonzero eigenvalue of the same matrix.
    double lambda_min_pos = 0.0;
    BbkMethod bbk_method = BbkMethod::exact;
    int bbk_directions = 0;
    /// True when exact BBK was requested but dim > 3 forced randomization.
    bool bbk_fell_back = false;
    MomentEstimation estimation = MomentEstimation::exact;
    long mc_samples = 0;
};

DiversityReport check_diversity(const ContextualProblem& problem, int rep_index,
                                const DiversityOptions& options = {});

/// Membership masks for the union-of-subspaces condition over a set of
/// representations attached to one finite problem.
struct MixedHlsReport {
    bool mixed_hls = false;
    /// covered[i](x, a) == 1 when phi_i(x, a) lies in the image of the
    /// optimal-feature moment of representation i.
    std::vector<Eigen::MatrixXi> covered;
    /// (context, arm) pairs not covered by any representation.
    std::vector<std::pair<int, int>> uncovered;
    /// Smallest nonzero eigenvalue of each rep's optimal moment.
    std::vector<double> lambda_min_pos;
};

MixedHlsReport check_mixed_hls(const ContextualProblem& problem);

/// Relative residual tolerance for subspace membership in check_mixed_hls.
inline constexpr double kMixedHlsTolerance = 1e-8;

}  // namespace banditlab
