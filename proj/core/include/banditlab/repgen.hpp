#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "banditlab/problem.hpp"
#include "banditlab/rng.hpp"

namespace banditlab {

/// Builds a representation whose optimal-feature moment is full rank from
/// the reward table alone: the first coordinate is the reward itself and
/// each remaining coordinate is a scaled indicator of one anchor context.
/// Anchor contexts are the highest-probability ones (descending rho, then
/// index), reordered so the first anchor has a nonzero optimal reward.
/// Throws if fewer than `dim` contexts have positive probability or if
/// every optimal reward is zero.
FiniteRepresentation build_hls_from_reward(const ContextualProblem& problem, int dim);

/// phi -> A^T phi with theta -> A^{-1} theta; |det A| must exceed 1e-9.
struct InvertibleLinear {
    Eigen::MatrixXd matrix;
};

/// Collapses the optimal features of the most likely contexts onto a
/// single shared direction so the optimal-feature moment has rank at most
/// `target_rank`, while keeping every reward exactly realizable.
struct Derank {
    int target_rank = 1;
};

/// Replaces each index group by one coordinate equal to the theta-weighted
/// sum of the group's features; the new parameter entry is 1. Groups must
/// be disjoint subsets of the coordinate range; the merged coordinate sits
/// at the position of the group's smallest index.
struct MergeFeatures {
    std::vector<std::vector<int>> groups;
};

/// Rescales features by ||theta|| and normalizes theta to unit norm.
struct Normalize {};

/// Averages one designated coordinate pair (theta-weighted, so rewards are
/// preserved) on every optimal row and on every non-optimal row not listed
/// in keep_original. The listed rows keep their original features; they
/// are the rows this copy leaves for other copies of a mixed set to cover.
struct MixSplit {
    int first = 0;
    int second = 0;
    std::vector<std::pair<int, int>> keep_original;
};

using TransformSpec = std::variant<InvertibleLinear, Derank, MergeFeatures, Normalize, MixSplit>;

/// Applies one transform to a representation of `problem` (the problem
/// supplies context probabilities and the reward table, which determine
/// optimal arms). Every transform yields a representation reproducing the
/// same rewards; bounds are refit on the output.
FiniteRepresentation apply_transform(const FiniteRepresentation& rep,
                                     const ContextualProblem& problem, const TransformSpec& spec);

/// Square matrix with i.i.d. standard normal entries, redrawn until
/// |det| >= 1e-6.
Eigen::MatrixXd random_invertible(int dim, Rng& rng);

/// Random finite problem: i.i.d. standard normal features, parameter
/// uniform on [-1,1]^dim then normalized, uniform context distribution,
/// rewards given by the dot product, noise_std 0.3. The single attached
/// representation is verified to have a full-rank optimal-feature moment
/// (redrawn on the measure-zero failure).
ContextualProblem random_problem(int n_contexts, int n_arms, int dim, Rng& rng);

/// Names accepted by preset_problem.
std::vector<std::string> preset_names();

/// Deterministically generates one of the bundled experiment problems:
///   fig1        six reps with optimal-moment ranks 6..1 (only rank 6 full)
///   vardim      full-rank 6-dim rep plus five rank-1 reps of dims 2..6
///   mixing      six rank-5 reps that jointly cover every context-arm pair
///   continuous  half-disc problem with a 2-dim and a 3-dim feature map
///   misspec_toy vardim plus four misspecified reps with recorded error
/// Throws on an unknown name.
ContextualProblem preset_problem(const std::string& name, std::uint64_t seed);

}  // namespace banditlab
