#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "banditlab/rng.hpp"

namespace banditlab {

/// Feature map for a finite context set: N contexts, K arms, dimension d.
/// features[x] is the K-by-d matrix whose rows are phi(x, a).
///
/// Invariants (checked by validate()):
///  - every row norm is <= feature_bound (1e-12 slack),
///  - param_bound >= 1 and ||param|| <= param_bound,
///  - misspec, when present, has one entry per (context, arm).
struct FiniteRepresentation {
    std::vector<Eigen::MatrixXd> features;
    Eigen::VectorXd param;
    double feature_bound = 0.0;
    double param_bound = 1.0;
    /// Additive reward residual f(x, a); 0-by-0 when the representation is
    /// realizable. mean_reward = features * param + misspec.
    Eigen::MatrixXd misspec;
    std::string label;

    int n_contexts() const { return static_cast<int>(features.size()); }
    int n_arms() const { return features.empty() ? 0 : static_cast<int>(features[0].rows()); }
    int dim() const { return static_cast<int>(param.size()); }
    bool has_misspec() const { return misspec.size() > 0; }

    double misspec_at(int x, int a) const { return has_misspec() ? misspec(x, a) : 0.0; }

    /// Largest residual magnitude; 0 for realizable representations.
    double misspec_sup() const {
        return has_misspec() ? misspec.cwiseAbs().maxCoeff() : 0.0;
    }

    /// Recomputes feature_bound as the exact max row norm.
    void fit_feature_bound();
    /// Sets param_bound to max(1, ||param||).
    void fit_param_bound();

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;
};

/// Closed-form feature map over a continuous context space with finitely
/// many arms. Only used by named built-in problems; not serializable as a
/// tensor.
struct ContinuousRepresentation {
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, int)> features;
    Eigen::VectorXd param;
    double feature_bound = 0.0;
    double param_bound = 1.0;
    std::string label;

    int dim() const { return static_cast<int>(param.size()); }
};

/// Continuous context distribution described by a named sampler plus the
/// Monte Carlo budget used for moment estimation.
struct ContinuousSpec {
    std::string sampler;
    long mc_samples = 100000;
    int n_arms = 0;
    std::function<Eigen::VectorXd(Rng&)> sample_context;
    std::function<double(const Eigen::VectorXd&, int)> mean_reward;
    std::vector<ContinuousRepresentation> reps;
};

/// A contextual bandit problem with one or more attached representations.
/// Contexts are either a finite set with sampling weights rho, or a named
/// continuous sampler. Rewards are mean_reward(x, a) plus centered Gaussian
/// noise of standard deviation noise_std.
class ContextualProblem {
public:
    static ContextualProblem finite(Eigen::VectorXd rho,
                                    Eigen::MatrixXd mean_reward,
                                    double noise_std,
                                    std::vector<FiniteRepresentation> reps);
    static ContextualProblem continuous(ContinuousSpec spec, double noise_std);

    bool is_finite() const { return !continuous_.has_value(); }

    int n_contexts() const;
    int n_arms() const;
    int n_reps() const;

    const Eigen::VectorXd& rho() const;
    const Eigen::MatrixXd& mean_reward() const;
    const std::vector<FiniteRepresentation>& reps() const;
    std::vector<FiniteRepresentation>& mutable_reps();
    const FiniteRepresentation& rep(int i) const;
    const ContinuousSpec& cont() const;

    double noise_std() const { return noise_std_; }
    void set_noise_std(double s);

    /// Replaces the attached representations (revalidates against mu).
    void set_reps(std::vector<FiniteRepresentation> reps);
    void add_rep(FiniteRepresentation rep);

private:
    ContextualProblem() = default;
    void validate_rep_against_rewards(const FiniteRepresentation& rep) const;

    Eigen::VectorXd rho_;
    Eigen::MatrixXd mean_reward_;
    std::vector<FiniteRepresentation> reps_;
    std::optional<ContinuousSpec> continuous_;
    double noise_std_ = 0.0;
};

/// Per-pair suboptimality gaps of a finite problem.
/// gaps(x, a) = max_b mu(x, b) - mu(x, a).
struct GapProfile {
    Eigen::MatrixXd gaps;
    /// Canonical optimal arm per context: lowest index within 1e-12 of the max.
    std::vector<int> optimal_arm;
    /// Smallest positive gap over contexts with rho(x) > 0; 0 when the
    /// problem has no positive gap (degenerate).
    double min_gap = 0.0;
    /// Largest gap over contexts with rho(x) > 0.
    double max_gap = 0.0;
    /// True when some context has two arms tied for optimal within 1e-12.
    bool has_ties = false;
};

/// Computes the gap profile of a finite problem. Throws for continuous ones.
GapProfile gap_profile(const ContextualProblem& problem);

/// Tolerance used to declare two rewards tied when picking optimal arms.
inline constexpr double kTieTolerance = 1e-12;

/// Tolerance for |phi' theta + f - mu| when attaching representations.
inline constexpr double kRealizabilityTolerance = 1e-9;

}  // namespace banditlab
