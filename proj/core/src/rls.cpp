#include "banditlab/rls.hpp"

#include <cmath>
#include <stdexcept>

namespace banditlab {

double schedule_delta(ConfidenceSchedule schedule, double delta, long t) {
    if (schedule == ConfidenceSchedule::fixed) return delta;
    const double tt = static_cast<double>(t < 1 ? 1 : t);
    return std::min(delta, 1.0 / (tt * tt * tt));
}

RlsState::RlsState(int dim, double reg, double feature_bound, double param_bound,
                   double noise_std)
    : dim_(dim),
      reg_(reg),
      feature_bound_(feature_bound),
      param_bound_(param_bound),
      noise_std_(noise_std) {
    if (dim <= 0) throw std::invalid_argument("RlsState: dim must be positive");
    if (reg <= 0.0) throw std::invalid_argument("RlsState: reg must be positive");
    if (feature_bound <= 0.0) throw std::invalid_argument("RlsState: feature_bound must be positive");
    if (param_bound < 1.0) throw std::invalid_argument("RlsState: param_bound must be >= 1");
    if (noise_std < 0.0) throw std::invalid_argument("RlsState: noise_std must be >= 0");
    v_ = reg * Eigen::MatrixXd::Identity(dim, dim);
    v_inv_ = (1.0 / reg) * Eigen::MatrixXd::Identity(dim, dim);
    b_ = Eigen::VectorXd::Zero(dim);
    theta_ = Eigen::VectorXd::Zero(dim);
    log_det_ = dim * std::log(reg);
}

void RlsState::update(const Eigen::VectorXd& phi, double reward) {
    if (phi.size() != dim_) throw std::invalid_argument("RlsState::update: dimension mismatch");
    const Eigen::VectorXd vphi = v_inv_ * phi;
    const double s = phi.dot(vphi);
    v_inv_.noalias() -= vphi * vphi.transpose() / (1.0 + s);
    log_det_ += std::log1p(s);
    v_.noalias() += phi * phi.transpose();
    b_.noalias() += reward * phi;
    c_ += reward * reward;
    ++t_;
    if (++since_refactor_ >= kRefactorPeriod) refactor();
    theta_.noalias() = v_inv_ * b_;
}

void RlsState::refactor() {
    const Eigen::LLT<Eigen::MatrixXd> llt(v_);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("RlsState::refactor: V lost positive definiteness");
    v_inv_ = llt.solve(Eigen::MatrixXd::Identity(dim_, dim_));
    double ld = 0.0;
    const Eigen::MatrixXd l = llt.matrixL();
    for (int i = 0; i < dim_; ++i) ld += std::log(l(i, i));
    log_det_ = 2.0 * ld;
    theta_.noalias() = v_inv_ * b_;
    since_refactor_ = 0;
}

double RlsState::beta(double delta) const {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("RlsState::beta: delta must lie in (0, 1)");
    // log(det(V)^{1/2} det(reg I)^{-1/2} / delta), nonnegative since V >= reg I.
    const double log_ratio = 0.5 * log_det_ - 0.5 * dim_ * std::log(reg_) - std::log(delta);
    return noise_std_ * std::sqrt(2.0 * std::max(0.0, log_ratio)) +
           std::sqrt(reg_) * param_bound_;
}

double RlsState::bonus(const Eigen::VectorXd& phi) const {
    if (phi.size() != dim_) throw std::invalid_argument("RlsState::bonus: dimension mismatch");
    return std::sqrt(std::max(0.0, phi.dot(v_inv_ * phi)));
}

}  // namespace banditlab
