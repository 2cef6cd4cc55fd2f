#pragma once

namespace banditlab {

/// Constants entering the closed-form guarantees. The formulas assume the
/// regularizer, parameter bound, noise level and maximum gap are all at
/// least 1; make_bound_inputs clamps smaller values up to 1 and sets
/// `clamped` so callers can surface a warning.
struct BoundInputs {
    double delta = 0.01;
    double reg = 1.0;
    double feature_bound = 1.0;
    double param_bound = 1.0;
    double noise_std = 1.0;
    double min_gap = 1.0;
    double max_gap = 1.0;
    int dim = 1;
    bool clamped = false;
};

BoundInputs make_bound_inputs(double delta, double reg, double feature_bound, double param_bound,
                              double noise_std, double min_gap, double max_gap, int dim);

/// High-probability bound on the number of suboptimal pulls after t rounds
/// of optimistic play with one representation:
///   32 max_gap^2 reg S^2 sigma^2 (2 log(1/delta) + d log(1 + t L^2/(reg d)))^2
///   / min_gap^2.
double suboptimal_pulls_bound(const BoundInputs& in, double t);

struct TauResult {
    double tau = 0.0;
    /// First branch: rounds until the optimistic policy's own pulls have
    /// built enough optimal-design mass.
    double exploration_branch = 0.0;
    /// Second branch: rounds until the empirical moment concentrates.
    double concentration_branch = 0.0;
    /// True when a logarithm argument had to be clamped up to e.
    bool log_clamped = false;
};

/// Horizon after which the confidence width of a representation whose
/// optimal features span the space stops forcing exploration (the
/// constant-regret onset time). lambda_hls is the smallest eigenvalue of
/// the optimal-feature second moment; lambda_hls <= 0 yields +infinity.
TauResult tau_hls(const BoundInputs& in, double lambda_hls);

/// Closed-form regret envelope for optimistic selection over m_reps
/// representations sharing one confidence budget:
///   32 reg max_gap^2 S^2 sigma^2 / min_gap
///     * (2 ln(m/delta) + d ln(1 + min(tau, n) L^2/(reg d)))^2.
/// Pass tau = +infinity when no constant-regret onset applies.
double regret_bound(const BoundInputs& in, double n, double tau, int m_reps);

}  // namespace banditlab
