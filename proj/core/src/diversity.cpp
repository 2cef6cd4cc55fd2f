#include "banditlab/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace banditlab {

namespace {

bool full_rank(const MomentMatrix& m) { return m.rank == m.dim(); }

// ---------------------------------------------------------------------------
// BBK: lambda_min(E[phi phi' 1{phi'u >= 0}]) > 0 for every direction u.
//
// The indicator is piecewise constant on the cells of the central hyperplane
// arrangement {u : phi_j'u = 0}. For dim <= 3 the check enumerates one
// representative direction per cell (and per boundary stratum): plane
// normals, pairwise edge directions, and their +/- epsilon perturbations
// into the adjacent cells, plus the zero direction for the all-inclusive
// boundary case.
// ---------------------------------------------------------------------------

std::vector<Eigen::VectorXd> distinct_plane_normals(const std::vector<Eigen::VectorXd>& features) {
    std::vector<Eigen::VectorXd> normals;
    for (const auto& phi : features) {
        const double norm = phi.norm();
        if (norm <= 1e-14) continue;
        Eigen::VectorXd n = phi / norm;
        // Canonical sign so that +/- duplicates collapse.
        for (Eigen::Index i = 0; i < n.size(); ++i) {
            if (std::abs(n[i]) > 1e-12) {
                if (n[i] < 0) n = -n;
                break;
            }
        }
        bool seen = false;
        for (const auto& m : normals) {
            if ((m - n).norm() <= 1e-10) {
                seen = true;
                break;
            }
        }
        if (!seen) normals.push_back(std::move(n));
    }
    return normals;
}

std::vector<Eigen::VectorXd> bbk_directions_1d() {
    std::vector<Eigen::VectorXd> dirs;
    Eigen::VectorXd u(1);
    u[0] = 1.0;
    dirs.push_back(u);
    u[0] = -1.0;
    dirs.push_back(u);
    u[0] = 0.0;
    dirs.push_back(u);
    return dirs;
}

std::vector<Eigen::VectorXd> bbk_directions_2d(const std::vector<Eigen::VectorXd>& features) {
    const auto normals = distinct_plane_normals(features);
    std::vector<double> angles;
    for (const auto& n : normals) {
        // Both boundary rays of the line {u : n'u = 0}.
        const double a = std::atan2(n[0], -n[1]);
        angles.push_back(a);
        angles.push_back(a > 0 ? a - Rng::pi() : a + Rng::pi());
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 angles.end());

    std::vector<Eigen::VectorXd> dirs;
    auto push_angle = [&dirs](double a) {
        Eigen::VectorXd u(2);
        u[0] = std::cos(a);
        u[1] = std::sin(a);
        dirs.push_back(std::move(u));
    };
    if (angles.empty()) {
        push_angle(0.0);
    } else {
        for (std::size_t i = 0; i < angles.size(); ++i) {
            push_angle(angles[i]);  // boundary ray itself
            const double next = i + 1 < angles.size() ? angles[i + 1] : angles[0] + 2 * Rng::pi();
            push_angle(0.5 * (angles[i] + next));  // sector interior
        }
    }
    dirs.push_back(Eigen::VectorXd::Zero(2));
    return dirs;
}

std::vector<Eigen::VectorXd> bbk_directions_3d(const std::vector<Eigen::VectorXd>& features) {
    const auto normals = distinct_plane_normals(features);
    const double eps = 1e-5;
    std::vector<Eigen::VectorXd> dirs;
    auto push_signed = [&dirs](const Eigen::Vector3d& v) {
        if (v.norm() <= 1e-14) return;
        dirs.push_back(v.normalized());
        dirs.push_back(-v.normalized());
    };

    for (std::size_t j = 0; j < normals.size(); ++j) {
        const Eigen::Vector3d nj = normals[j];
        push_signed(nj);
        for (std::size_t k = 0; k < normals.size(); ++k) {
            if (k == j) continue;
            const Eigen::Vector3d nk = normals[k];
            push_signed(nj + eps * nk);
            push_signed(nj - eps * nk);
        }
    }
    for (std::size_t j = 0; j < normals.size(); ++j) {
        for (std::size_t k = j + 1; k < normals.size(); ++k) {
            const Eigen::Vector3d nj = normals[j];
            const Eigen::Vector3d nk = normals[k];
            const Eigen::Vector3d e = nj.cross(nk);
            if (e.norm() <= 1e-12) continue;
            push_signed(e);
            for (int s1 : {-1, 1}) {
                for (int s2 : {-1, 1}) {
                    push_signed(e.normalized() + s1 * eps * nj + s2 * eps * nk);
                }
            }
        }
    }
    // Deterministic spherical net as insurance against degenerate incidences
    // (three planes sharing an edge, etc.).
    const int net = 800;
    for (int i = 0; i < net; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / net;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double a = 2.399963229728653 * i;  // golden angle
        Eigen::Vector3d v(r * std::cos(a), r * std::sin(a), z);
        dirs.push_back(v);
    }
    dirs.push_back(Eigen::VectorXd::Zero(3));
    return dirs;
}

// Features (and sampling weights) of one arm across positive-probability
// contexts; the unit both BBK and the randomized fallback operate on.
struct ArmSample {
    std::vector<Eigen::VectorXd> phis;
    std::vector<double> weights;
    int dim = 0;
};

bool bbk_holds_for_directions(const ArmSample& arm, const std::vector<Eigen::VectorXd>& dirs) {
    const int d = arm.dim;
    for (const auto& u : dirs) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
        for (std::size_t i = 0; i < arm.phis.size(); ++i) {
            if (arm.phis[i].dot(u) >= 0.0)
                m.noalias() += arm.weights[i] * arm.phis[i] * arm.phis[i].transpose();
        }
        if (!full_rank(analyze_moment(std::move(m), MomentEstimation::exact, 0))) return false;
    }
    return true;
}

std::vector<Eigen::VectorXd> random_unit_directions(int d, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Eigen::VectorXd> dirs;
    dirs.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(dirs.size()) < count) {
        Eigen::VectorXd u(d);
        for (int i = 0; i < d; ++i) u[i] = rng.gaussian();
        const double norm = u.norm();
        if (norm > 1e-12) dirs.push_back(u / norm);
    }
    return dirs;
}

}  // namespace

DiversityReport check_diversity(const ContextualProblem& problem, int rep_index,
                                const DiversityOptions& options) {
    DiversityReport report;

    // Continuous problems get Monte Carlo moments and randomized BBK.
    if (!problem.is_finite()) {
        const ContinuousSpec& c = problem.cont();
        if (rep_index < 0 || rep_index >= static_cast<int>(c.reps.size()))
            throw std::invalid_argument("check_diversity: representation index out of range");
        const ContinuousRepresentation& rep = c.reps[static_cast<std::size_t>(rep_index)];
        const long budget = options.mc_samples > 0 ? options.mc_samples : c.mc_samples;
        const int k = c.n_arms;
        const int d = rep.dim();
        Rng rng(options.mc_seed);

        report.estimation = MomentEstimation::monte_carlo;
        report.mc_samples = budget;

        const MomentMatrix all = moment_matrix_mc(problem, rep_index, MomentKind::all_arms, -1,
                                                  budget, rng);
        report.non_redundant = full_rank(all);
        report.cmb = true;
        for (int a = 0; a < k && report.cmb; ++a) {
            report.cmb = full_rank(
                moment_matrix_mc(problem, rep_index, MomentKind::arm, a, budget, rng));
        }
        const MomentMatrix opt =
            moment_matrix_mc(problem, rep_index, MomentKind::optimal, -1, budget, rng);
        report.hls = full_rank(opt);
        report.lambda_hls = report.hls ? opt.lambda_min : 0.0;
        report.lambda_min_pos = opt.lambda_min_pos;
        report.wys = true;
        for (int a = 0; a < k && report.wys; ++a) {
            report.wys = full_rank(moment_matrix_mc(problem, rep_index,
                                                    MomentKind::optimal_restricted, a, budget,
                                                    rng));
        }

        // Randomized BBK over a cached sample of features per arm.
        report.bbk_method = BbkMethod::randomized;
        report.bbk_fell_back = options.prefer_exact_bbk;
        const int n_dirs = std::min(options.bbk_directions, 500);
        report.bbk_directions = n_dirs;
        const long bbk_budget = std::min<long>(budget, 20000);
        report.bbk = true;
        for (int a = 0; a < k && report.bbk; ++a) {
            ArmSample sample;
            sample.dim = d;
            Rng srng(options.mc_seed + 17 * (a + 1));
            for (long s = 0; s < bbk_budget; ++s) {
                const Eigen::VectorXd x = c.sample_context(srng);
                sample.phis.push_back(rep.features(x, a));
                sample.weights.push_back(1.0 / static_cast<double>(bbk_budget));
            }
            report.bbk =
                bbk_holds_for_directions(sample, random_unit_directions(d, n_dirs, options.bbk_seed));
        }
        return report;
    }

    const FiniteRepresentation& rep = problem.rep(rep_index);
    const int k = rep.n_arms();
    const int d = rep.dim();
    report.estimation = MomentEstimation::exact;

    report.non_redundant = full_rank(moment_matrix(problem, rep_index, MomentKind::all_arms));
    report.cmb = true;
    for (int a = 0; a < k && report.cmb; ++a)
        report.cmb = full_rank(moment_matrix(problem, rep_index, MomentKind::arm, a));
    const MomentMatrix opt = moment_matrix(problem, rep_index, MomentKind::optimal);
    report.hls = full_rank(opt);
    report.lambda_hls = report.hls ? opt.lambda_min : 0.0;
    report.lambda_min_pos = opt.lambda_min_pos;
    report.wys = true;
    for (int a = 0; a < k && report.wys; ++a)
        report.wys =
            full_rank(moment_matrix(problem, rep_index, MomentKind::optimal_restricted, a));

    const bool exact_feasible = d <= 3;
    const bool use_exact = options.prefer_exact_bbk && exact_feasible;
    report.bbk_method = use_exact ? BbkMethod::exact : BbkMethod::randomized;
    report.bbk_fell_back = options.prefer_exact_bbk && !exact_feasible;

    report.bbk = true;
    for (int a = 0; a < k && report.bbk; ++a) {
        ArmSample sample;
        sample.dim = d;
        for (int x = 0; x < rep.n_contexts(); ++x) {
            if (problem.rho()[x] <= 0.0) continue;
            sample.phis.push_back(rep.features[x].row(a).transpose());
            sample.weights.push_back(problem.rho()[x]);
        }
        std::vector<Eigen::VectorXd> dirs;
        if (use_exact) {
            if (d == 1)
                dirs = bbk_directions_1d();
            else if (d == 2)
                dirs = bbk_directions_2d(sample.phis);
            else
                dirs = bbk_directions_3d(sample.phis);
            report.bbk_directions = static_cast<int>(dirs.size());
        } else {
            dirs = random_unit_directions(d, options.bbk_directions, options.bbk_seed);
            dirs.push_back(Eigen::VectorXd::Zero(d));
            report.bbk_directions = options.bbk_directions;
        }
        report.bbk = bbk_holds_for_directions(sample, dirs);
    }
    return report;
}

MixedHlsReport check_mixed_hls(const ContextualProblem& problem) {
    if (!problem.is_finite())
        throw std::invalid_argument("check_mixed_hls: only defined for finite problems");
    if (problem.n_reps() == 0)
        throw std::invalid_argument("check_mixed_hls: problem has no representations");

    const int n = problem.n_contexts();
    const int k = problem.n_arms();
    const int m = problem.n_reps();

    MixedHlsReport report;
    report.covered.reserve(static_cast<std::size_t>(m));
    report.lambda_min_pos.reserve(static_cast<std::size_t>(m));

    for (int i = 0; i < m; ++i) {
        const MomentMatrix opt = moment_matrix(problem, i, MomentKind::optimal);
        report.lambda_min_pos.push_back(opt.lambda_min_pos);
        const Eigen::MatrixXd basis = opt.image_basis();
        const FiniteRepresentation& rep = problem.rep(i);
        Eigen::MatrixXi mask(n, k);
        for (int x = 0; x < n; ++x) {
            for (int a = 0; a < k; ++a) {
                const Eigen::VectorXd phi = rep.features[x].row(a).transpose();
                const Eigen::VectorXd residual = phi - basis * (basis.transpose() * phi);
                mask(x, a) = residual.norm() <= kMixedHlsTolerance * phi.norm() ? 1 : 0;
            }
        }
        report.covered.push_back(std::move(mask));
    }

    report.mixed_hls = true;
    for (int x = 0; x < n; ++x) {
        for (int a = 0; a < k; ++a) {
            bool covered = false;
            for (int i = 0; i < m && !covered; ++i) covered = report.covered[i](x, a) != 0;
            if (!covered) {
                report.mixed_hls = false;
                report.uncovered.emplace_back(x, a);
            }
        }
    }
    return report;
}

}  // namespace banditlab
