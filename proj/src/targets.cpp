#include "sef/targets.hpp"

#include "sef/error.hpp"
#include "sef/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sef {

void TargetPair::validate() const {
    if (T.rows() != T.cols() || M.rows() != M.cols() || T.rows() != M.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "target and mask must be square and equal-sized");
    }
    require_finite(T, "target matrix");
    require_finite(M, "mask matrix");
    if ((T.array() < 0.0).any() || (T.array() > 1.0).any()) {
        throw Error(ErrorKind::InvalidData, "target entries must lie in [0,1]");
    }
    if ((M.array() < 0.0).any() || (M.array() > 1.0).any()) {
        throw Error(ErrorKind::InvalidMask, "mask entries must lie in [0,1]");
    }
    if (!T.isApprox(T.transpose(), 0.0)) {
        throw Error(ErrorKind::InvalidData, "target matrix must be symmetric");
    }
    if (M.array().abs().sum() <= 0.0) {
        throw Error(ErrorKind::InvalidMask, "mask must have a positive 1-norm");
    }
}

TargetPair target_pca(int n) {
    if (n < 2) {
        throw Error(ErrorKind::InvalidParameter, "a pairwise target needs at least 2 samples");
    }
    return {Matrix::Zero(n, n), Matrix::Ones(n, n)};
}

TargetPair target_lda(const Labels& labels) {
    const int n = static_cast<int>(labels.size());
    if (n < 2) {
        throw Error(ErrorKind::InvalidParameter, "a pairwise target needs at least 2 samples");
    }
    const int n_classes = count_classes(labels);
    if (n_classes < 2) {
        throw Error(ErrorKind::InvalidLabels, "LDA target needs at least 2 classes");
    }
    const double off_class_weight = 1.0 / (n_classes - 1);
    TargetPair pair{Matrix::Zero(n, n), Matrix::Zero(n, n)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const bool same = labels[i] == labels[j];
            pair.T(i, j) = same ? 1.0 : 0.0;
            pair.M(i, j) = same ? 1.0 : off_class_weight;
        }
    }
    return pair;
}

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> knn_adjacency(const Matrix& X, int k) {
    const Eigen::Index n = X.rows();
    if (k < 1 || k >= n) {
        throw Error(ErrorKind::InvalidParameter,
                    "neighbor count must satisfy 1 <= k < n, got k=" + std::to_string(k));
    }
    const Matrix D = pairwise_sq_distances(X);
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> adj(n, n);
    adj.setConstant(false);
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        // neighbors of j by distance, ties by ascending index, self excluded
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index a, Eigen::Index b) { return D(a, j) < D(b, j); });
        int taken = 0;
        for (Eigen::Index idx : order) {
            if (idx == j) continue;
            adj(idx, j) = true;
            if (++taken == k) break;
        }
    }
    // symmetrize: i~j when either is among the other's k nearest
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const bool linked = adj(i, j) || adj(j, i);
            adj(i, j) = linked;
            adj(j, i) = linked;
        }
    }
    return adj;
}

TargetPair target_le(const Matrix& X, int k, double sigma_le) {
    if (!(sigma_le > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "sigma_le must be positive");
    }
    const auto adj = knn_adjacency(X, k);
    const Eigen::Index n = X.rows();
    Matrix base = gaussian_similarity(pairwise_sq_distances(X), sigma_le);
    TargetPair pair{std::move(base), Matrix::Ones(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        pair.T(i, i) = 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (adj(i, j)) pair.T(i, j) = 1.0;
        }
    }
    return pair;
}

TargetPair target_lap_pca(const Matrix& X, int k, double non_neighbor_weight) {
    if (non_neighbor_weight < 0.0 || non_neighbor_weight > 1.0) {
        throw Error(ErrorKind::InvalidMask, "non-neighbor weight must lie in [0,1]");
    }
    const auto adj = knn_adjacency(X, k);
    const Eigen::Index n = X.rows();
    TargetPair pair{Matrix::Zero(n, n), Matrix::Ones(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        pair.T(i, i) = 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (adj(i, j)) {
                pair.T(i, j) = 1.0;
            } else if (i != j) {
                pair.M(i, j) = non_neighbor_weight;
            }
        }
    }
    return pair;
}

TargetPair target_clone(const Matrix& G, std::optional<double> sigma_copy,
                        const std::vector<double>& grid, double* sigma_used) {
    if (G.rows() < 2) {
        throw Error(ErrorKind::InvalidParameter, "a pairwise target needs at least 2 samples");
    }
    const Matrix D = pairwise_sq_distances(G);
    const double sigma = sigma_copy ? *sigma_copy : estimate_scaling_factor(D, grid);
    if (!(sigma > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "sigma_copy must be positive");
    }
    if (sigma_used) *sigma_used = sigma;
    return {gaussian_similarity(D, sigma), Matrix::Ones(G.rows(), G.rows())};
}

namespace {

double same_class_distance(const PairwiseDecisionFn& decisions, int cls, int n_classes,
                           int i, int j, SameClassRule rule) {
    double best = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    int count = 0;
    for (int other = 0; other < n_classes; ++other) {
        if (other == cls) continue;
        const double d = std::abs(decisions(cls, other, i) - decisions(cls, other, j));
        best = std::min(best, d);
        sum += d;
        ++count;
    }
    return rule == SameClassRule::MinOverClassModels ? best : sum / count;
}

} // namespace

TargetPair target_svm(const PairwiseDecisionFn& decisions, const Labels& labels,
                      std::optional<double> sigma_svm, const std::vector<double>& grid,
                      SameClassRule rule, double* sigma_used) {
    const int n = static_cast<int>(labels.size());
    if (n < 2) {
        throw Error(ErrorKind::InvalidParameter, "a pairwise target needs at least 2 samples");
    }
    const int n_classes = count_classes(labels);
    if (n_classes < 2) {
        throw Error(ErrorKind::InvalidLabels, "SVM target needs at least 2 classes");
    }
    Matrix D(n, n);
    for (int i = 0; i < n; ++i) {
        D(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            double d;
            if (labels[i] != labels[j]) {
                d = std::abs(decisions(labels[i], labels[j], i) -
                             decisions(labels[i], labels[j], j));
            } else {
                d = same_class_distance(decisions, labels[i], n_classes, i, j, rule);
            }
            D(i, j) = d;
            D(j, i) = d;
        }
    }
    require_finite(D, "SVM decision distances");
    const double sigma = sigma_svm ? *sigma_svm : estimate_scaling_factor(D, grid);
    if (!(sigma > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "sigma_svm must be positive");
    }
    if (sigma_used) *sigma_used = sigma;
    return {gaussian_similarity(D, sigma), Matrix::Ones(n, n)};
}

} // namespace sef
