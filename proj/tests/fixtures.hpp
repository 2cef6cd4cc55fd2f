#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "banditlab/problem.hpp"

namespace banditlab::fixtures {

/// Builds a finite problem from per-context arm-feature matrices and a
/// parameter vector, with uniform context weights and rewards implied by
/// the single attached representation.
inline ContextualProblem linear_problem(const std::vector<Eigen::MatrixXd>& features,
                                        const Eigen::VectorXd& param, double noise_std = 0.0) {
    const int n = static_cast<int>(features.size());
    const int k = static_cast<int>(features[0].rows());
    Eigen::VectorXd rho = Eigen::VectorXd::Constant(n, 1.0 / n);
    Eigen::MatrixXd mu(n, k);
    for (int x = 0; x < n; ++x) mu.row(x) = (features[static_cast<size_t>(x)] * param).transpose();

    FiniteRepresentation rep;
    rep.features = features;
    rep.param = param;
    rep.fit_feature_bound();
    rep.fit_param_bound();
    rep.label = "fixture";
    return ContextualProblem::finite(rho, mu, noise_std, {rep});
}

inline Eigen::MatrixXd arm_block(std::initializer_list<std::initializer_list<double>> rows) {
    const int k = static_cast<int>(rows.size());
    const int d = static_cast<int>(rows.begin()->size());
    Eigen::MatrixXd m(k, d);
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (double v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

/// The two-dimensional classification catalogue: nine single-representation
/// problems with theta = [1, 1] and uniform contexts, each exercising one
/// combination of the span conditions.
inline ContextualProblem classification_case(int index) {
    const Eigen::VectorXd theta = (Eigen::VectorXd(2) << 1.0, 1.0).finished();
    switch (index) {
        case 1:
        case 2:
            // Non-redundant but neither per-arm spanning nor optimal
            // spanning: optimal features {[1,1]} only.
            return linear_problem(
                {arm_block({{1, 1}, {0.5, 0.5}}), arm_block({{0, 1}, {1, 1}})}, theta);
        case 3:
            // Per-arm spanning holds, optimal features all equal [1,1].
            return linear_problem({arm_block({{1, 1}, {1, 0}}), arm_block({{0, 1}, {1, 1}})},
                                  theta);
        case 4:
            // Optimal features span (eigenvalue 2), arm 2's moment is rank 1.
            return linear_problem(
                {arm_block({{2, 0}, {0.5, 0.5}}), arm_block({{0, 2}, {0.5, 0.5}})}, theta);
        case 5:
            // Optimal and per-arm spanning, but arm 2 never optimal on its
            // own optimal region.
            return linear_problem({arm_block({{2, 0}, {1, 0}}), arm_block({{0, 2}, {0, 1}})},
                                  theta);
        case 6:
            // Every halfspace of every arm spans, yet optimal features stay
            // on one axis.
            return linear_problem(
                {arm_block({{2, 0}, {0, 1}}), arm_block({{0, 1}, {2, 0}}),
                 arm_block({{-1, 0}, {0, -2}}), arm_block({{0, -2}, {-1, 0}})},
                theta);
        case 7:
            // Optimal spanning plus halfspace spanning, without per-optimal
            // region spanning.
            return linear_problem(
                {arm_block({{2, 0}, {1, 0}}), arm_block({{0, 2}, {0, 1}}),
                 arm_block({{-1, 0}, {-2, 0}}), arm_block({{0, -1}, {0, -2}})},
                theta);
        case 8:
            // Each arm spans on its own optimal region, halfspaces of arm 1
            // do not all span.
            return linear_problem(
                {arm_block({{2, 0}, {1, 0}}), arm_block({{0, 2}, {0, 1}}),
                 arm_block({{1, 0}, {2, 0}}), arm_block({{0, 1}, {0, 2}})},
                theta);
        case 9:
            // Everything holds at once.
            return linear_problem(
                {arm_block({{2, 0}, {1, 0}}), arm_block({{0, 2}, {0, 1}}),
                 arm_block({{-2, 0}, {-1, 0}}), arm_block({{0, -2}, {0, -1}})},
                theta);
        default:
            throw std::invalid_argument("classification_case: index must be 1..9");
    }
}

/// Two representations of one problem whose optimal-feature images each
/// miss one (context, arm) pair but jointly cover everything.
inline ContextualProblem mixed_pair_problem() {
    const Eigen::VectorXd theta = (Eigen::VectorXd(2) << 1.0, 1.0).finished();
    FiniteRepresentation first;
    first.features = {arm_block({{2, 0}, {1, 0}}), arm_block({{2, 0}, {0, 1}})};
    first.param = theta;
    first.fit_feature_bound();
    first.fit_param_bound();
    first.label = "covers_first";

    FiniteRepresentation second;
    second.features = {arm_block({{2, 0}, {0, 1}}), arm_block({{2, 0}, {1, 0}})};
    second.param = theta;
    second.fit_feature_bound();
    second.fit_param_bound();
    second.label = "covers_second";

    Eigen::VectorXd rho = Eigen::VectorXd::Constant(2, 0.5);
    Eigen::MatrixXd mu(2, 2);
    mu << 2, 1, 2, 1;
    return ContextualProblem::finite(rho, mu, 0.0, {first, second});
}

/// One redundant representation whose span nonetheless contains every
/// feature: the union condition holds with a single member.
inline ContextualProblem mixed_single_problem() {
    const Eigen::VectorXd theta = (Eigen::VectorXd(2) << 1.0, 1.0).finished();
    FiniteRepresentation rep;
    rep.features = {arm_block({{2, 0}, {1, 0}}), arm_block({{2, 0}, {1, 0}})};
    rep.param = theta;
    rep.fit_feature_bound();
    rep.fit_param_bound();
    rep.label = "one_axis";

    Eigen::VectorXd rho = Eigen::VectorXd::Constant(2, 0.5);
    Eigen::MatrixXd mu(2, 2);
    mu << 2, 1, 2, 1;
    return ContextualProblem::finite(rho, mu, 0.0, {rep});
}

}  // namespace banditlab::fixtures
