#pragma once

#include "sef/types.hpp"

#include <functional>
#include <optional>

namespace sef {

// A target similarity matrix T together with its optimization mask M.
// Both are N x N with entries in [0,1]; T is symmetric and ||M||_1 > 0.
struct TargetPair {
    Matrix T;
    Matrix M;

    // Throws when the pair violates the invariants above.
    void validate() const;
};

// T = 0, M = 1: minimizing the masked loss spreads the embedding, which
// maximizes variance. Pair with a strong orthonormality weight.
TargetPair target_pca(int n);

// T_ij = 1 for same-class pairs, 0 otherwise; off-class mask entries are
// 1/(n_classes - 1) so pulling classes together and pushing them apart
// carry equal total weight.
TargetPair target_lda(const Labels& labels);

// Neighbor pairs (k-NN, symmetrized with OR) get target similarity 1;
// non-neighbors keep their input-space heat-kernel similarity at sigma_le.
TargetPair target_le(const Matrix& X, int k, double sigma_le);

// Neighbor pairs get 1, everything else 0. The mask weight for the
// non-neighbor (variance-maximizing) part is configurable.
TargetPair target_lap_pca(const Matrix& X, int k, double non_neighbor_weight = 1.0);

// Clone an embedding G produced by any other method:
// T_ij = exp(-||g_i - g_j||^2 / sigma_copy). Passing nullopt picks
// sigma_copy by the histogram-spread line search over `grid`.
TargetPair target_clone(const Matrix& G, std::optional<double> sigma_copy,
                        const std::vector<double>& grid, double* sigma_used = nullptr);

// Decision value of the one-vs-one model separating class_a from class_b,
// evaluated on training sample `index`. Must be defined for every
// unordered pair of distinct classes; throws Error(MissingModel) otherwise.
using PairwiseDecisionFn = std::function<double(int class_a, int class_b, int index)>;

// How D_svm is defined for same-class pairs, where no (c,c) model exists.
enum class SameClassRule {
    MinOverClassModels,  // smallest |decision difference| over models involving the class
    MeanOverClassModels,
};

// T = exp(-D_svm / sigma_svm) where
// D_svm[i][j] = |dec_(c(i),c(j))(x_i) - dec_(c(i),c(j))(x_j)|.
// Passing nullopt for sigma_svm uses the histogram-spread line search.
TargetPair target_svm(const PairwiseDecisionFn& decisions, const Labels& labels,
                      std::optional<double> sigma_svm, const std::vector<double>& grid,
                      SameClassRule rule = SameClassRule::MinOverClassModels,
                      double* sigma_used = nullptr);

// Symmetrized k-nearest-neighbor indicator (OR rule, self excluded,
// distance ties broken by ascending index). Shared by the LE and LapPCA
// targets and exposed for tests.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> knn_adjacency(const Matrix& X, int k);

} // namespace sef
