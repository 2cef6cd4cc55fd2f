#include "banditlab/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace banditlab {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void FiniteRepresentation::fit_feature_bound() {
    double max_norm = 0.0;
    for (const auto& mat : features) max_norm = std::max(max_norm, mat.rowwise().norm().maxCoeff());
    feature_bound = max_norm;
}

void FiniteRepresentation::fit_param_bound() {
    param_bound = std::max(1.0, param.norm());
}

void FiniteRepresentation::validate() const {
    require(!features.empty(), "representation '" + label + "': no contexts");
    const int k = static_cast<int>(features[0].rows());
    const int d = static_cast<int>(param.size());
    require(k > 0, "representation '" + label + "': no arms");
    require(d > 0, "representation '" + label + "': empty parameter");
    for (std::size_t x = 0; x < features.size(); ++x) {
        require(features[x].rows() == k && features[x].cols() == d,
                "representation '" + label + "': inconsistent feature shape at context " +
                    std::to_string(x));
        require(features[x].allFinite(),
                "representation '" + label + "': non-finite feature at context " + std::to_string(x));
    }
    require(param.allFinite(), "representation '" + label + "': non-finite parameter");
    require(feature_bound > 0.0, "representation '" + label + "': feature_bound must be positive");
    for (const auto& mat : features) {
        const double max_norm = mat.rowwise().norm().maxCoeff();
        require(max_norm <= feature_bound + 1e-12,
                "representation '" + label + "': feature norm " + std::to_string(max_norm) +
                    " exceeds bound " + std::to_string(feature_bound));
    }
    require(param_bound >= 1.0, "representation '" + label + "': param_bound must be >= 1");
    require(param.norm() <= param_bound + 1e-12,
            "representation '" + label + "': ||param|| exceeds param_bound");
    if (has_misspec()) {
        require(misspec.rows() == static_cast<int>(features.size()) && misspec.cols() == k,
                "representation '" + label + "': misspec table shape mismatch");
        require(misspec.allFinite(), "representation '" + label + "': non-finite misspec entry");
    }
}

ContextualProblem ContextualProblem::finite(Eigen::VectorXd rho,
                                            Eigen::MatrixXd mean_reward,
                                            double noise_std,
                                            std::vector<FiniteRepresentation> reps) {
    require(rho.size() > 0, "problem: empty context distribution");
    require(mean_reward.rows() == rho.size(), "problem: mu rows must match |contexts|");
    require(mean_reward.cols() > 0, "problem: mu needs at least one arm");
    require(mean_reward.allFinite(), "problem: non-finite mean reward");
    require(noise_std >= 0.0, "problem: noise_std must be >= 0");
    double total = 0.0;
    for (Eigen::Index i = 0; i < rho.size(); ++i) {
        require(rho[i] >= 0.0 && std::isfinite(rho[i]), "problem: rho entries must be >= 0");
        total += rho[i];
    }
    require(std::abs(total - 1.0) <= 1e-9, "problem: rho must sum to 1");

    ContextualProblem p;
    p.rho_ = std::move(rho);
    p.mean_reward_ = std::move(mean_reward);
    p.noise_std_ = noise_std;
    for (auto& rep : reps) p.add_rep(std::move(rep));
    return p;
}

ContextualProblem ContextualProblem::continuous(ContinuousSpec spec, double noise_std) {
    require(static_cast<bool>(spec.sample_context), "continuous problem: missing context sampler");
    require(static_cast<bool>(spec.mean_reward), "continuous problem: missing mean reward");
    require(spec.n_arms > 0, "continuous problem: needs at least one arm");
    require(spec.mc_samples > 0, "continuous problem: Monte Carlo budget must be positive");
    require(noise_std >= 0.0, "problem: noise_std must be >= 0");
    for (const auto& rep : spec.reps) {
        require(static_cast<bool>(rep.features), "continuous representation '" + rep.label +
                                                     "': missing feature map");
        require(rep.param.size() > 0, "continuous representation '" + rep.label +
                                          "': empty parameter");
    }

    ContextualProblem p;
    p.noise_std_ = noise_std;
    p.continuous_ = std::move(spec);

    // Spot-check realizability of the closed-form maps on a fixed stream.
    Rng rng(0x5eedULL);
    const auto& c = *p.continuous_;
    for (const auto& rep : c.reps) {
        for (int i = 0; i < 128; ++i) {
            const Eigen::VectorXd x = c.sample_context(rng);
            for (int a = 0; a < c.n_arms; ++a) {
                const double predicted = rep.features(x, a).dot(rep.param);
                const double expected = c.mean_reward(x, a);
                require(std::abs(predicted - expected) <= kRealizabilityTolerance,
                        "continuous representation '" + rep.label +
                            "': feature map does not reproduce the mean reward");
            }
        }
    }
    return p;
}

int ContextualProblem::n_contexts() const {
    require(is_finite(), "n_contexts: continuous problems have no finite context set");
    return static_cast<int>(rho_.size());
}

int ContextualProblem::n_arms() const {
    return is_finite() ? static_cast<int>(mean_reward_.cols()) : continuous_->n_arms;
}

int ContextualProblem::n_reps() const {
    return is_finite() ? static_cast<int>(reps_.size())
                       : static_cast<int>(continuous_->reps.size());
}

const Eigen::VectorXd& ContextualProblem::rho() const {
    require(is_finite(), "rho: not available for continuous problems");
    return rho_;
}

const Eigen::MatrixXd& ContextualProblem::mean_reward() const {
    require(is_finite(), "mean_reward: not available for continuous problems");
    return mean_reward_;
}

const std::vector<FiniteRepresentation>& ContextualProblem::reps() const {
    require(is_finite(), "reps: not available for continuous problems");
    return reps_;
}

std::vector<FiniteRepresentation>& ContextualProblem::mutable_reps() {
    require(is_finite(), "reps: not available for continuous problems");
    return reps_;
}

const FiniteRepresentation& ContextualProblem::rep(int i) const {
    require(is_finite(), "rep: not available for continuous problems");
    require(i >= 0 && i < static_cast<int>(reps_.size()), "rep: index out of range");
    return reps_[static_cast<std::size_t>(i)];
}

const ContinuousSpec& ContextualProblem::cont() const {
    require(!is_finite(), "cont: problem is finite");
    return *continuous_;
}

void ContextualProblem::set_noise_std(double s) {
    require(s >= 0.0, "noise_std must be >= 0");
    noise_std_ = s;
}

void ContextualProblem::validate_rep_against_rewards(const FiniteRepresentation& rep) const {
    rep.validate();
    require(rep.n_contexts() == static_cast<int>(rho_.size()),
            "representation '" + rep.label + "': context count mismatch");
    require(rep.n_arms() == static_cast<int>(mean_reward_.cols()),
            "representation '" + rep.label + "': arm count mismatch");
    for (int x = 0; x < rep.n_contexts(); ++x) {
        for (int a = 0; a < rep.n_arms(); ++a) {
            const double predicted = rep.features[x].row(a).dot(rep.param) + rep.misspec_at(x, a);
            const double err = std::abs(predicted - mean_reward_(x, a));
            if (err > kRealizabilityTolerance) {
                std::ostringstream msg;
                msg << "representation '" << rep.label << "': |phi'theta + f - mu| = " << err
                    << " at (" << x << ", " << a << ") exceeds " << kRealizabilityTolerance;
                throw std::invalid_argument(msg.str());
            }
        }
    }
}

void ContextualProblem::set_reps(std::vector<FiniteRepresentation> reps) {
    require(is_finite(), "set_reps: not available for continuous problems");
    reps_.clear();
    for (auto& rep : reps) add_rep(std::move(rep));
}

void ContextualProblem::add_rep(FiniteRepresentation rep) {
    require(is_finite(), "add_rep: not available for continuous problems");
    validate_rep_against_rewards(rep);
    reps_.push_back(std::move(rep));
}

GapProfile gap_profile(const ContextualProblem& problem) {
    if (!problem.is_finite())
        throw std::invalid_argument("gap_profile: only defined for finite problems");
    const auto& mu = problem.mean_reward();
    const auto& rho = problem.rho();
    const int n = static_cast<int>(mu.rows());
    const int k = static_cast<int>(mu.cols());

    GapProfile g;
    g.gaps.resize(n, k);
    g.optimal_arm.resize(static_cast<std::size_t>(n));
    double min_gap = std::numeric_limits<double>::infinity();
    double max_gap = 0.0;
    for (int x = 0; x < n; ++x) {
        const double best = mu.row(x).maxCoeff();
        int canonical = -1;
        int n_tied = 0;
        for (int a = 0; a < k; ++a) {
            const double gap = best - mu(x, a);
            g.gaps(x, a) = gap;
            if (gap <= kTieTolerance) {
                ++n_tied;
                if (canonical < 0) canonical = a;
            }
        }
        g.optimal_arm[static_cast<std::size_t>(x)] = canonical;
        if (n_tied > 1) g.has_ties = true;
        if (rho[x] > 0.0) {
            for (int a = 0; a < k; ++a) {
                const double gap = g.gaps(x, a);
                if (gap > kTieTolerance) min_gap = std::min(min_gap, gap);
                max_gap = std::max(max_gap, gap);
            }
        }
    }
    g.min_gap = std::isfinite(min_gap) ? min_gap : 0.0;
    g.max_gap = max_gap;
    return g;
}

}  // namespace banditlab
