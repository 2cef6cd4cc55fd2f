#include "banditlab/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace banditlab {

namespace {

// Canonical optimal arm per context plus the tie-inclusive optimal set.
struct OptimalArms {
    std::vector<int> canonical;
    Eigen::MatrixXi is_optimal;  // N x K, 1 when within tie tolerance of max
};

OptimalArms optimal_arms(const Eigen::MatrixXd& mu) {
    OptimalArms out;
    const int n = static_cast<int>(mu.rows());
    const int k = static_cast<int>(mu.cols());
    out.canonical.resize(static_cast<std::size_t>(n), -1);
    out.is_optimal.setZero(n, k);
    for (int x = 0; x < n; ++x) {
        const double best = mu.row(x).maxCoeff();
        for (int a = 0; a < k; ++a) {
            if (best - mu(x, a) <= kTieTolerance) {
                out.is_optimal(x, a) = 1;
                if (out.canonical[static_cast<std::size_t>(x)] < 0)
                    out.canonical[static_cast<std::size_t>(x)] = a;
            }
        }
    }
    return out;
}

void check_kind_args(MomentKind kind, int arm, int n_arms) {
    const bool needs_arm = kind == MomentKind::arm || kind == MomentKind::optimal_restricted;
    if (needs_arm && (arm < 0 || arm >= n_arms))
        throw std::invalid_argument("moment_matrix: kind requires a valid arm index");
}

}  // namespace

Eigen::MatrixXd MomentMatrix::image_basis() const {
    const int d = dim();
    Eigen::MatrixXd basis(d, rank);
    // Eigenvalues ascend, so the image vectors sit in the trailing columns.
    for (int j = 0; j < rank; ++j) basis.col(j) = eigenvectors.col(d - rank + j);
    return basis;
}

MomentMatrix analyze_moment(Eigen::MatrixXd m, MomentEstimation estimation, long mc_samples) {
    MomentMatrix out;
    // Symmetrize away accumulation round-off before decomposing.
    out.matrix = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(out.matrix);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("analyze_moment: eigendecomposition failed");
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    const int d = static_cast<int>(out.eigenvalues.size());
    const double lambda_max = out.eigenvalues[d - 1];
    const double tol = 1e-9 * std::max(1.0, lambda_max);
    out.rank = 0;
    for (int i = 0; i < d; ++i)
        if (out.eigenvalues[i] > tol) ++out.rank;
    out.lambda_min = out.eigenvalues[0];
    out.lambda_min_pos = out.rank > 0 ? out.eigenvalues[d - out.rank] : 0.0;
    out.estimation = estimation;
    out.mc_samples = mc_samples;
    return out;
}

MomentMatrix moment_matrix(const ContextualProblem& problem, int rep_index, MomentKind kind,
                           int arm) {
    if (!problem.is_finite())
        throw std::invalid_argument(
            "moment_matrix: exact moments need a finite problem; use moment_matrix_mc");
    const FiniteRepresentation& rep = problem.rep(rep_index);
    const auto& rho = problem.rho();
    const int n = rep.n_contexts();
    const int k = rep.n_arms();
    const int d = rep.dim();
    check_kind_args(kind, arm, k);

    const OptimalArms opt = optimal_arms(problem.mean_reward());

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int x = 0; x < n; ++x) {
        if (rho[x] <= 0.0) continue;
        switch (kind) {
            case MomentKind::all_arms:
                for (int a = 0; a < k; ++a) {
                    const auto phi = rep.features[x].row(a);
                    m.noalias() += (rho[x] / k) * phi.transpose() * phi;
                }
                break;
            case MomentKind::arm: {
                const auto phi = rep.features[x].row(arm);
                m.noalias() += rho[x] * phi.transpose() * phi;
                break;
            }
            case MomentKind::optimal: {
                const auto phi = rep.features[x].row(opt.canonical[static_cast<std::size_t>(x)]);
                m.noalias() += rho[x] * phi.transpose() * phi;
                break;
            }
            case MomentKind::optimal_restricted:
                if (opt.is_optimal(x, arm)) {
                    const auto phi = rep.features[x].row(arm);
                    m.noalias() += rho[x] * phi.transpose() * phi;
                }
                break;
        }
    }
    return analyze_moment(std::move(m), MomentEstimation::exact, 0);
}

MomentMatrix moment_matrix_mc(const ContextualProblem& problem, int rep_index, MomentKind kind,
                              int arm, long n_samples, Rng& rng) {
    if (n_samples <= 0) throw std::invalid_argument("moment_matrix_mc: n_samples must be positive");

    if (problem.is_finite()) {
        const FiniteRepresentation& rep = problem.rep(rep_index);
        const int k = rep.n_arms();
        const int d = rep.dim();
        check_kind_args(kind, arm, k);
        const OptimalArms opt = optimal_arms(problem.mean_reward());
        std::vector<double> weights(problem.rho().data(),
                                    problem.rho().data() + problem.rho().size());
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
        for (long s = 0; s < n_samples; ++s) {
            const int x = static_cast<int>(rng.categorical(weights));
            switch (kind) {
                case MomentKind::all_arms:
                    for (int a = 0; a < k; ++a) {
                        const auto phi = rep.features[x].row(a);
                        m.noalias() += (1.0 / k) * phi.transpose() * phi;
                    }
                    break;
                case MomentKind::arm: {
                    const auto phi = rep.features[x].row(arm);
                    m.noalias() += phi.transpose() * phi;
                    break;
                }
                case MomentKind::optimal: {
                    const auto phi =
                        rep.features[x].row(opt.canonical[static_cast<std::size_t>(x)]);
                    m.noalias() += phi.transpose() * phi;
                    break;
                }
                case MomentKind::optimal_restricted:
                    if (opt.is_optimal(x, arm)) {
                        const auto phi = rep.features[x].row(arm);
                        m.noalias() += phi.transpose() * phi;
                    }
                    break;
            }
        }
        m /= static_cast<double>(n_samples);
        return analyze_moment(std::move(m), MomentEstimation::monte_carlo, n_samples);
    }

    const ContinuousSpec& c = problem.cont();
    if (rep_index < 0 || rep_index >= static_cast<int>(c.reps.size()))
        throw std::invalid_argument("moment_matrix_mc: representation index out of range");
    const ContinuousRepresentation& rep = c.reps[static_cast<std::size_t>(rep_index)];
    const int k = c.n_arms;
    const int d = rep.dim();
    check_kind_args(kind, arm, k);

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (long s = 0; s < n_samples; ++s) {
        const Eigen::VectorXd x = c.sample_context(rng);
        double best = c.mean_reward(x, 0);
        for (int a = 1; a < k; ++a) best = std::max(best, c.mean_reward(x, a));
        int best_arm = 0;
        for (int a = 0; a < k; ++a) {
            if (best - c.mean_reward(x, a) <= kTieTolerance) {
                best_arm = a;
                break;
            }
        }
        switch (kind) {
            case MomentKind::all_arms:
                for (int a = 0; a < k; ++a) {
                    const Eigen::VectorXd phi = rep.features(x, a);
                    m.noalias() += (1.0 / k) * phi * phi.transpose();
                }
                break;
            case MomentKind::arm: {
                const Eigen::VectorXd phi = rep.features(x, arm);
                m.noalias() += phi * phi.transpose();
                break;
            }
            case MomentKind::optimal: {
                const Eigen::VectorXd phi = rep.features(x, best_arm);
                m.noalias() += phi * phi.transpose();
                break;
            }
            case MomentKind::optimal_restricted: {
                const double gap = best - c.mean_reward(x, arm);
                if (gap <= kTieTolerance) {
                    const Eigen::VectorXd phi = rep.features(x, arm);
                    m.noalias() += phi * phi.transpose();
                }
                break;
            }
        }
    }
    m /= static_cast<double>(n_samples);
    return analyze_moment(std::move(m), MomentEstimation::monte_carlo, n_samples);
}

double min_nonzero_eig(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("min_nonzero_eig: matrix must be square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("min_nonzero_eig: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("min_nonzero_eig: eigendecomposition failed");
    const auto& ev = solver.eigenvalues();
    const double lambda_max = ev[ev.size() - 1];
    if (lambda_max <= 0.0) return 0.0;
    const double threshold = tol * lambda_max;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev[i] > threshold) return ev[i];
    return 0.0;
}

}  // namespace banditlab
