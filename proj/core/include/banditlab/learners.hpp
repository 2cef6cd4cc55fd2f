#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "banditlab/problem.hpp"
#include "banditlab/rls.hpp"
#include "banditlab/rng.hpp"

namespace banditlab {

/// Per-representation arm-feature blocks for one context: entry i points
/// at a (n_arms x dim_i) matrix whose rows are phi_i(x, a).
using FeatureView = std::vector<const Eigen::MatrixXd*>;

/// One ridge state per attached representation, sharing the problem's
/// noise level and the given regularizer.
std::vector<RlsState> make_rep_states(const ContextualProblem& problem, double reg);

/// Optimistic arm for a single representation: argmax over rows of
/// mean + beta(delta) * bonus; ties resolved to the lowest arm index.
int linucb_select(const RlsState& state, const Eigen::MatrixXd& arm_features, double delta);

struct LeaderConfig {
    double delta = 0.01;
    /// Enables the misspecification test that shrinks the active set.
    bool elimination = false;
    /// Evaluate the elimination statistic at the norm-constrained
    /// least-squares minimizer; false uses the plain ridge estimate.
    bool constrained_mse = true;
    ConfidenceSchedule schedule = ConfidenceSchedule::fixed;
};

struct EliminationEvent {
    long t = 0;
    int rep = 0;
};

/// Plays the arm maximizing the minimum upper confidence bound across the
/// active representations; every representation's state is updated with
/// every observed sample regardless of the active set.
class LeaderState {
public:
    LeaderState(std::vector<RlsState> states, LeaderConfig config);

    struct Decision {
        int arm = 0;
        /// Representation attaining the minimum UCB at the chosen arm.
        int selecting_rep = 0;
    };

    /// features[i] must have the i-th representation's dimension; entries
    /// are required for every representation (active or not).
    Decision select(const FeatureView& features) const;

    /// Upper confidence bound of representation i at one feature row,
    /// using this learner's per-representation confidence split.
    double rep_ucb(int i, const Eigen::VectorXd& phi) const;

    void update(const FeatureView& features, int arm, double reward);

    /// Runs one elimination round (needs at least one sample); returns the
    /// representations removed. No-op unless elimination is enabled.
    std::vector<int> eliminate();

    /// Squared-error statistic of representation i at its current
    /// estimate: (theta' A theta - 2 b' theta + c) / t with A = V - reg I.
    double mse_value(int i) const;

    const std::vector<int>& active() const { return active_; }
    bool is_active(int i) const;
    /// Restricts the active set (testing/replay hook). Must be a nonempty
    /// ordered subset of the representation indices.
    void set_active(std::vector<int> active);

    long t() const;
    int n_reps() const { return static_cast<int>(states_.size()); }
    const RlsState& state(int i) const { return states_[static_cast<size_t>(i)]; }
    const std::vector<EliminationEvent>& events() const { return events_; }
    /// True if an elimination round would have emptied the active set and
    /// the best-error representation was kept instead.
    bool anomaly() const { return anomaly_; }

    /// Threshold added to representation j's best squared error when it
    /// serves as an elimination benchmark after tau samples:
    ///   (20/tau) log(8 m^2 (12 L S tau)^d tau^3 / delta) + 1/tau.
    static double elimination_alpha(long tau, int m_reps, double feature_bound,
                                    double param_bound, int dim, double delta);

    /// Minimizer of theta' A theta - 2 b' theta over ||theta|| <= radius
    /// for symmetric PSD A with b in the image of A.
    static Eigen::VectorXd ball_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                              double radius);

private:
    double rep_delta(int i) const;
    Eigen::VectorXd estimate_for_mse(int i) const;

    std::vector<RlsState> states_;
    LeaderConfig config_;
    std::vector<int> active_;
    std::vector<EliminationEvent> events_;
    bool anomaly_ = false;
};

/// Best-arm-identification stopping check for a finite problem under one
/// representation: passes once every context's empirical gap, measured in
/// the design-matrix norm, clears the confidence radius.
struct GlrResult {
    bool stop = false;
    /// Greedy arm per context under the current estimate.
    std::vector<int> recommended;
    /// Smallest normalized empirical gap over (context, suboptimal arm).
    double min_ratio = 0.0;
};

GlrResult glr_stop(const RlsState& state, const ContextualProblem& problem, int rep_index,
                   double delta);

/// Exponential-weights master over per-representation recommendations with
/// implicit exploration. gamma = sqrt(2 ln(m) / (horizon * n_arms)) and
/// eta = 2 gamma; rewards are mapped to [0,1] losses from the configured
/// reward range.
class Exp4Ix {
public:
    Exp4Ix(int n_experts, int n_arms, long horizon, double reward_min, double reward_max);

    /// Samples an arm from the weighted mixture of expert recommendations.
    int select(const std::vector<int>& expert_arms, Rng& rng);
    /// Consumes the reward for the arm returned by the last select call.
    void observe(double reward);

    double gamma() const { return gamma_; }
    double eta() const { return eta_; }
    const Eigen::VectorXd& log_weights() const { return log_weights_; }

private:
    int n_arms_;
    double gamma_;
    double eta_;
    double reward_min_;
    double reward_max_;
    Eigen::VectorXd log_weights_;
    std::vector<int> last_recs_;
    int last_arm_ = -1;
    double last_prob_ = 0.0;
};

/// Regret-balancing master: plays the base whose pessimistic regret gauge
/// u_i = 4 beta_i(delta) sqrt(t_i log det V_i) is smallest, evaluated on
/// the base's own collected history. By default only the playing base
/// observes the sample; shared_updates feeds every base instead.
class RegBal {
public:
    RegBal(std::vector<RlsState> bases, double delta, bool shared_updates);

    struct Decision {
        int base = 0;
        int arm = 0;
    };

    Decision select(const FeatureView& features);
    void update(const FeatureView& features, int arm, double reward);

    double oracle_value(int i) const;
    int n_bases() const { return static_cast<int>(bases_.size()); }
    const RlsState& base(int i) const { return bases_[static_cast<size_t>(i)]; }

private:
    std::vector<RlsState> bases_;
    double delta_;
    bool shared_updates_;
    int current_ = -1;
};

}  // namespace banditlab
