#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

namespace banditlab {

/// How the confidence level fed to beta evolves with the round index.
enum class ConfidenceSchedule { fixed, cubic };

/// Effective confidence at round t (t >= 1): the configured delta, or 1/t^3
/// under the cubic schedule (capped at the configured delta once smaller).
double schedule_delta(ConfidenceSchedule schedule, double delta, long t);

/// Regularized least-squares state for one representation:
///   V_t = reg * I + sum phi phi',  b_t = sum phi y,  theta_t = V_t^{-1} b_t.
///
/// The inverse and log det V are maintained incrementally (Sherman-Morrison
/// plus a log(1 + phi' V^{-1} phi) accumulator) and refreshed from a dense
/// factorization every kRefactorPeriod updates to keep drift below 1e-8.
class RlsState {
public:
    RlsState(int dim, double reg, double feature_bound, double param_bound, double noise_std);

    void update(const Eigen::VectorXd& phi, double reward);

    /// Exact-determinant confidence radius:
    ///   noise_std * sqrt(2 * (log det V - dim * log(reg)) / 2... see impl)
    ///   + sqrt(reg) * param_bound.
    double beta(double delta) const;

    double mean(const Eigen::VectorXd& phi) const {
        if (phi.size() != dim_) throw std::invalid_argument("RlsState::mean: dimension mismatch");
        return phi.dot(theta_);
    }
    /// ||phi||_{V^{-1}}.
    double bonus(const Eigen::VectorXd& phi) const;
    double ucb(const Eigen::VectorXd& phi, double delta) const {
        return mean(phi) + beta(delta) * bonus(phi);
    }

    /// Recomputes inverse, theta and log det from a fresh factorization.
    void refactor();

    int dim() const { return dim_; }
    double reg() const { return reg_; }
    double feature_bound() const { return feature_bound_; }
    double param_bound() const { return param_bound_; }
    double noise_std() const { return noise_std_; }
    long t() const { return t_; }
    const Eigen::MatrixXd& V() const { return v_; }
    const Eigen::MatrixXd& V_inv() const { return v_inv_; }
    const Eigen::VectorXd& b() const { return b_; }
    /// Sum of squared observed rewards (used by the in-sample MSE
    /// statistic).
    double reward_square_sum() const { return c_; }
    const Eigen::VectorXd& theta() const { return theta_; }
    double log_det() const { return log_det_; }

    static constexpr int kRefactorPeriod = 512;

private:
    int dim_;
    double reg_;
    double feature_bound_;
    double param_bound_;
    double noise_std_;
    long t_ = 0;
    int since_refactor_ = 0;
    Eigen::MatrixXd v_;
    Eigen::MatrixXd v_inv_;
    Eigen::VectorXd b_;
    double c_ = 0.0;
    Eigen::VectorXd theta_;
    double log_det_;
};

}  // namespace banditlab
