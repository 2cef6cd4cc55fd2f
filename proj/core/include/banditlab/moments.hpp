#pragma once

#include <Eigen/Dense>

#include "banditlab/problem.hpp"
#include "banditlab/rng.hpp"

namespace banditlab {

/// Which second-moment matrix of a representation to form.
enum class MomentKind {
    /// (1/K) sum_a E[phi(x,a) phi(x,a)'].
    all_arms,
    /// E[phi(x,a) phi(x,a)'] for one fixed arm a.
    arm,
    /// E[phi(x, a*_x) phi(x, a*_x)'] over the canonical optimal arm.
    optimal,
    /// E[phi(x,a) phi(x,a)' 1{a is optimal for x}] for one fixed arm a
    /// (ties within 1e-12 count as optimal).
    optimal_restricted,
};

enum class MomentEstimation { exact, monte_carlo };

/// Second-moment matrix together with its eigendecomposition.
struct MomentMatrix {
    Eigen::MatrixXd matrix;
    /// Ascending.
    Eigen::VectorXd eigenvalues;
    /// Orthonormal columns matching eigenvalues.
    Eigen::MatrixXd eigenvectors;
    /// Number of eigenvalues above the rank tolerance
    /// 1e-9 * max(1, lambda_max).
    int rank = 0;
    double lambda_min = 0.0;
    /// Smallest eigenvalue above the rank tolerance; 0 when rank == 0.
    double lambda_min_pos = 0.0;
    MomentEstimation estimation = MomentEstimation::exact;
    long mc_samples = 0;

    int dim() const { return static_cast<int>(matrix.rows()); }
    /// Orthonormal basis of the image (eigenvectors above tolerance).
    Eigen::MatrixXd image_basis() const;
};

/// Exact moment matrix of representation rep_index of a finite problem.
/// arm is required for MomentKind::arm / optimal_restricted.
MomentMatrix moment_matrix(const ContextualProblem& problem, int rep_index, MomentKind kind,
                           int arm = -1);

/// Monte Carlo estimate with n_samples context draws. Works for finite and
/// continuous problems; the only option for continuous ones.
MomentMatrix moment_matrix_mc(const ContextualProblem& problem, int rep_index, MomentKind kind,
                              int arm, long n_samples, Rng& rng);

/// Smallest eigenvalue strictly above tol * lambda_max of a symmetric PSD
/// matrix; 0 for the zero matrix (or when nothing clears the threshold).
/// Throws if the matrix is asymmetric beyond 1e-10 * max(1, |M|_inf).
double min_nonzero_eig(const Eigen::MatrixXd& m, double tol = 1e-9);

/// Assembles eigenstructure fields from a raw symmetric matrix.
MomentMatrix analyze_moment(Eigen::MatrixXd m, MomentEstimation estimation, long mc_samples);

}  // namespace banditlab
