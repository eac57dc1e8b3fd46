#pragma once

#include "sef/types.hpp"

#include <cstdint>

namespace sef {

// Eigenvalues sorted descending, unit-norm column eigenvectors, and a
// deterministic sign convention (largest-magnitude component positive).
struct EigenDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;
};

EigenDecomposition sym_eigh(const Matrix& S);

// Top-m covariance eigenvectors (columns, orthonormal). X is centered
// internally; m must not exceed the feature count.
Matrix pca_fit(const Matrix& X, int m);

// Top-m eigenvectors of the (uncentered) kernel matrix, rescaled so that
// a_k^T K a_k = 1. Throws Error(DegenerateKernel) when a leading
// eigenvalue is at or below 1e-12.
Matrix kpca_fit(const Matrix& K, int m);

// All-pairs geodesic distances over the symmetrized k-NN graph with
// Euclidean edge weights (Dijkstra per source). Throws
// Error(DisconnectedGraph) when the graph is not connected.
Matrix geodesic_distances(const Matrix& X, int k);

// Classical MDS of the geodesic distances: double-center the squared
// distances, take the top-m eigenpairs, clamp negative eigenvalues to zero.
Matrix isomap(const Matrix& X, int k, int m);

// One-vs-one linear SVMs trained with a deterministic Pegasos-style
// subgradient loop (lr_t = 1/(lambda t), lambda = 1/(C n_pair)).
struct OvoSvmModel {
    int class_a = 0;
    int class_b = 0; // decision > 0 favors class_a, < 0 favors class_b
    Vector w;
    double b = 0.0;
};

struct OvoSvmSet {
    std::vector<OvoSvmModel> models; // one per unordered class pair, a < b

    // Throws Error(MissingModel) when the pair was not trained.
    const OvoSvmModel& find(int class_a, int class_b) const;
};

OvoSvmSet svm_ovo_fit(const Matrix& X, const Labels& labels, double C = 1.0,
                      int epochs = 200, std::uint64_t seed = 42);

double svm_decision(const OvoSvmModel& model, const Vector& x);

// Majority vote over all pair models; ties go to the lowest class id.
int svm_ovo_predict(const OvoSvmSet& set, const Vector& x);

// Nearest class centroid classifier.
struct NccModel {
    Matrix centroids; // n_classes x d
};

NccModel ncc_fit(const Matrix& X, const Labels& labels);
int ncc_predict(const NccModel& model, const Vector& x);
Labels ncc_predict_all(const NccModel& model, const Matrix& X);

} // namespace sef
