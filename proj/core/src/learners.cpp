#include "banditlab/learners.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace banditlab {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::vector<RlsState> make_rep_states(const ContextualProblem& problem, double reg) {
    std::vector<RlsState> out;
    if (problem.is_finite()) {
        for (const FiniteRepresentation& rep : problem.reps())
            out.emplace_back(rep.dim(), reg, rep.feature_bound, rep.param_bound,
                             problem.noise_std());
    } else {
        for (const ContinuousRepresentation& rep : problem.cont().reps)
            out.emplace_back(rep.dim(), reg, rep.feature_bound, rep.param_bound,
                             problem.noise_std());
    }
    return out;
}

int linucb_select(const RlsState& state, const Eigen::MatrixXd& arm_features, double delta) {
    require(arm_features.rows() >= 1, "linucb_select: no arms");
    require(arm_features.cols() == state.dim(), "linucb_select: feature dimension mismatch");
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < arm_features.rows(); ++a) {
        const double value = state.ucb(arm_features.row(a).transpose(), delta);
        if (value > best_value) {
            best_value = value;
            best = a;
        }
    }
    return best;
}

LeaderState::LeaderState(std::vector<RlsState> states, LeaderConfig config)
    : states_(std::move(states)), config_(config) {
    require(!states_.empty(), "LeaderState: needs at least one representation");
    require(config_.delta > 0.0 && config_.delta < 1.0, "LeaderState: delta must lie in (0, 1)");
    for (const RlsState& s : states_)
        require(s.t() == states_[0].t(), "LeaderState: states must share the sample count");
    active_.resize(states_.size());
    for (size_t i = 0; i < states_.size(); ++i) active_[i] = static_cast<int>(i);
}

double LeaderState::rep_delta(int) const {
    const double split = config_.delta / static_cast<double>(states_.size());
    return schedule_delta(config_.schedule, split, t() + 1);
}

double LeaderState::rep_ucb(int i, const Eigen::VectorXd& phi) const {
    return states_[static_cast<size_t>(i)].ucb(phi, rep_delta(i));
}

LeaderState::Decision LeaderState::select(const FeatureView& features) const {
    require(features.size() == states_.size(), "LeaderState: one feature block per representation");
    const int n_arms = static_cast<int>(features[0]->rows());

    Decision best;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < n_arms; ++a) {
        double min_value = std::numeric_limits<double>::infinity();
        int min_rep = active_.front();
        for (int i : active_) {
            const double value =
                rep_ucb(i, features[static_cast<size_t>(i)]->row(a).transpose());
            if (value < min_value) {
                min_value = value;
                min_rep = i;
            }
        }
        if (min_value > best_value) {
            best_value = min_value;
            best = {a, min_rep};
        }
    }
    return best;
}

void LeaderState::update(const FeatureView& features, int arm, double reward) {
    require(features.size() == states_.size(), "LeaderState: one feature block per representation");
    for (size_t i = 0; i < states_.size(); ++i)
        states_[i].update(features[i]->row(arm).transpose(), reward);
}

double LeaderState::elimination_alpha(long tau, int m_reps, double feature_bound,
                                      double param_bound, int dim, double delta) {
    require(tau >= 1, "elimination_alpha: needs at least one sample");
    require(m_reps >= 1 && dim >= 1, "elimination_alpha: bad sizes");
    require(feature_bound > 0.0 && param_bound > 0.0, "elimination_alpha: bad bounds");
    require(delta > 0.0 && delta < 1.0, "elimination_alpha: delta must lie in (0, 1)");
    const double ta = static_cast<double>(tau);
    const double log_arg = std::log(8.0) + 2.0 * std::log(static_cast<double>(m_reps)) +
                           static_cast<double>(dim) * std::log(12.0 * feature_bound *
                                                               param_bound * ta) +
                           3.0 * std::log(ta) - std::log(delta);
    return 20.0 / ta * log_arg + 1.0 / ta;
}

Eigen::VectorXd LeaderState::ball_least_squares(const Eigen::MatrixXd& a,
                                                const Eigen::VectorXd& b, double radius) {
    require(a.rows() == a.cols() && a.rows() == b.size(), "ball_least_squares: shape mismatch");
    require(radius > 0.0, "ball_least_squares: radius must be positive");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    require(eig.info() == Eigen::Success, "ball_least_squares: eigendecomposition failed");
    const Eigen::VectorXd& lam = eig.eigenvalues();
    const double lam_max = std::max(0.0, lam[lam.size() - 1]);
    const double tol = 1e-9 * std::max(1.0, lam_max);

    // b lies in the image of A (it is a combination of the update features),
    // so components along null directions are numerical noise.
    Eigen::VectorXd q = eig.eigenvectors().transpose() * b;
    for (Eigen::Index i = 0; i < q.size(); ++i)
        if (lam[i] <= tol) q[i] = 0.0;

    auto solution = [&](double nu) {
        Eigen::VectorXd scaled(q.size());
        for (Eigen::Index i = 0; i < q.size(); ++i) {
            const double denom = std::max(lam[i], 0.0) + nu;
            scaled[i] = denom > 0.0 ? q[i] / denom : 0.0;
        }
        return scaled;
    };
    auto norm_at = [&](double nu) { return solution(nu).norm(); };

    if (norm_at(0.0) <= radius) return eig.eigenvectors() * solution(0.0);

    double lo = 0.0;
    double hi = q.norm() / radius;  // ||theta(hi)|| <= ||q|| / hi = radius
    for (int iter = 0; iter < 50 && hi - lo > 1e-10 * std::max(1.0, hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        (norm_at(mid) > radius ? lo : hi) = mid;
    }
    return eig.eigenvectors() * solution(hi);
}

Eigen::VectorXd LeaderState::estimate_for_mse(int i) const {
    const RlsState& s = states_[static_cast<size_t>(i)];
    if (!config_.constrained_mse) return s.theta();
    const Eigen::MatrixXd a =
        s.V() - s.reg() * Eigen::MatrixXd::Identity(s.dim(), s.dim());
    return ball_least_squares(a, s.b(), s.param_bound());
}

double LeaderState::mse_value(int i) const {
    const RlsState& s = states_[static_cast<size_t>(i)];
    require(s.t() >= 1, "mse_value: needs at least one sample");
    const Eigen::VectorXd theta = estimate_for_mse(i);
    const Eigen::MatrixXd a =
        s.V() - s.reg() * Eigen::MatrixXd::Identity(s.dim(), s.dim());
    const double value =
        theta.dot(a * theta) - 2.0 * theta.dot(s.b()) + s.reward_square_sum();
    return value / static_cast<double>(s.t());
}

std::vector<int> LeaderState::eliminate() {
    if (!config_.elimination || t() < 1) return {};
    const long tau = t();
    const int m = n_reps();

    // Benchmark over all representations, not only the active ones: an
    // eliminated representation keeps receiving data, so its error stays a
    // valid lower reference.
    double benchmark = std::numeric_limits<double>::infinity();
    std::vector<double> errors(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
        const RlsState& s = states_[static_cast<size_t>(j)];
        errors[static_cast<size_t>(j)] = mse_value(j);
        const double alpha = elimination_alpha(tau, m, s.feature_bound(), s.param_bound(),
                                               s.dim(), config_.delta);
        benchmark = std::min(benchmark, errors[static_cast<size_t>(j)] + alpha);
    }

    std::vector<int> kept;
    std::vector<int> removed;
    for (int i : active_)
        (errors[static_cast<size_t>(i)] <= benchmark ? kept : removed).push_back(i);

    if (kept.empty()) {
        anomaly_ = true;
        int best = active_.front();
        for (int i : active_)
            if (errors[static_cast<size_t>(i)] < errors[static_cast<size_t>(best)]) best = i;
        kept = {best};
        removed.clear();
        for (int i : active_)
            if (i != best) removed.push_back(i);
    }

    for (int i : removed) events_.push_back({tau + 1, i});
    active_ = std::move(kept);
    return removed;
}

bool LeaderState::is_active(int i) const {
    return std::find(active_.begin(), active_.end(), i) != active_.end();
}

void LeaderState::set_active(std::vector<int> active) {
    require(!active.empty(), "set_active: active set must stay nonempty");
    std::sort(active.begin(), active.end());
    require(std::unique(active.begin(), active.end()) == active.end(),
            "set_active: duplicate representation index");
    require(active.front() >= 0 && active.back() < n_reps(), "set_active: index out of range");
    active_ = std::move(active);
}

long LeaderState::t() const { return states_[0].t(); }

GlrResult glr_stop(const RlsState& state, const ContextualProblem& problem, int rep_index,
                   double delta) {
    require(problem.is_finite(), "glr_stop: needs a finite problem");
    const FiniteRepresentation& rep = problem.rep(rep_index);
    require(state.dim() == rep.dim(), "glr_stop: state dimension mismatch");

    const Eigen::VectorXd& theta = state.theta();
    GlrResult out;
    out.recommended.resize(static_cast<size_t>(problem.n_contexts()));
    bool tied = false;
    std::vector<Eigen::VectorXd> values(static_cast<size_t>(problem.n_contexts()));
    for (int x = 0; x < problem.n_contexts(); ++x) {
        const Eigen::VectorXd vals = rep.features[static_cast<size_t>(x)] * theta;
        int greedy = 0;
        for (int a = 1; a < vals.size(); ++a)
            if (vals[a] > vals[greedy]) greedy = a;
        int near = 0;
        for (int a = 0; a < vals.size(); ++a)
            if (vals[a] >= vals[greedy] - kTieTolerance) ++near;
        if (near > 1) tied = true;
        out.recommended[static_cast<size_t>(x)] = greedy;
        values[static_cast<size_t>(x)] = vals;
    }
    if (tied) return out;

    double min_ratio = std::numeric_limits<double>::infinity();
    for (int x = 0; x < problem.n_contexts(); ++x) {
        if (problem.rho()[x] <= 0.0) continue;
        const int g = out.recommended[static_cast<size_t>(x)];
        const Eigen::MatrixXd& block = rep.features[static_cast<size_t>(x)];
        for (int a = 0; a < problem.n_arms(); ++a) {
            if (a == g) continue;
            const Eigen::VectorXd diff = (block.row(g) - block.row(a)).transpose();
            const double gap = values[static_cast<size_t>(x)][g] -
                               values[static_cast<size_t>(x)][a];
            const double norm = std::sqrt(std::max(0.0, diff.dot(state.V_inv() * diff)));
            min_ratio = std::min(min_ratio, norm > 0.0 ? gap / norm : 0.0);
        }
    }
    if (!std::isfinite(min_ratio)) min_ratio = 0.0;

    out.min_ratio = min_ratio;
    out.stop = min_ratio > state.beta(delta);
    return out;
}

Exp4Ix::Exp4Ix(int n_experts, int n_arms, long horizon, double reward_min, double reward_max)
    : n_arms_(n_arms) {
    require(n_experts >= 1 && n_arms >= 1 && horizon >= 1, "Exp4Ix: bad sizes");
    require(reward_max > reward_min, "Exp4Ix: empty reward range");
    gamma_ = std::sqrt(2.0 * std::log(static_cast<double>(n_experts)) /
                       (static_cast<double>(horizon) * static_cast<double>(n_arms)));
    eta_ = 2.0 * gamma_;
    reward_min_ = reward_min;
    reward_max_ = reward_max;
    log_weights_ = Eigen::VectorXd::Zero(n_experts);
}

int Exp4Ix::select(const std::vector<int>& expert_arms, Rng& rng) {
    require(static_cast<Eigen::Index>(expert_arms.size()) == log_weights_.size(),
            "Exp4Ix: one recommendation per expert");
    const Eigen::VectorXd shifted =
        (log_weights_.array() - log_weights_.maxCoeff()).exp();
    const Eigen::VectorXd q = shifted / shifted.sum();

    std::vector<double> p(static_cast<size_t>(n_arms_), 0.0);
    for (size_t i = 0; i < expert_arms.size(); ++i) {
        const int a = expert_arms[i];
        require(a >= 0 && a < n_arms_, "Exp4Ix: recommendation out of range");
        p[static_cast<size_t>(a)] += q[static_cast<Eigen::Index>(i)];
    }

    last_arm_ = static_cast<int>(rng.categorical(p));
    last_prob_ = p[static_cast<size_t>(last_arm_)];
    last_recs_ = expert_arms;
    return last_arm_;
}

void Exp4Ix::observe(double reward) {
    require(last_arm_ >= 0, "Exp4Ix: observe before select");
    const double loss =
        std::clamp((reward_max_ - reward) / (reward_max_ - reward_min_), 0.0, 1.0);
    const double scaled = loss / (last_prob_ + gamma_);
    for (size_t i = 0; i < last_recs_.size(); ++i)
        if (last_recs_[i] == last_arm_)
            log_weights_[static_cast<Eigen::Index>(i)] -= eta_ * scaled;
    log_weights_.array() -= log_weights_.maxCoeff();
    last_arm_ = -1;
}

RegBal::RegBal(std::vector<RlsState> bases, double delta, bool shared_updates)
    : bases_(std::move(bases)), delta_(delta), shared_updates_(shared_updates) {
    require(!bases_.empty(), "RegBal: needs at least one base");
    require(delta_ > 0.0 && delta_ < 1.0, "RegBal: delta must lie in (0, 1)");
}

double RegBal::oracle_value(int i) const {
    const RlsState& s = bases_[static_cast<size_t>(i)];
    const double mass = static_cast<double>(s.t()) * s.log_det();
    return 4.0 * s.beta(delta_) * std::sqrt(std::max(0.0, mass));
}

RegBal::Decision RegBal::select(const FeatureView& features) {
    require(features.size() == bases_.size(), "RegBal: one feature block per base");
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_bases(); ++i) {
        const double value = oracle_value(i);
        if (value < best_value) {
            best_value = value;
            best = i;
        }
    }
    current_ = best;
    return {best, linucb_select(bases_[static_cast<size_t>(best)],
                                *features[static_cast<size_t>(best)], delta_)};
}

void RegBal::update(const FeatureView& features, int arm, double reward) {
    require(features.size() == bases_.size(), "RegBal: one feature block per base");
    if (shared_updates_) {
        for (size_t i = 0; i < bases_.size(); ++i)
            bases_[i].update(features[i]->row(arm).transpose(), reward);
        return;
    }
    require(current_ >= 0, "RegBal: update before select");
    bases_[static_cast<size_t>(current_)].update(
        features[static_cast<size_t>(current_)]->row(arm).transpose(), reward);
}

}  // namespace banditlab
