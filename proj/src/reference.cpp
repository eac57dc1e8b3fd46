#include "sef/reference.hpp"

#include "sef/error.hpp"
#include "sef/pairwise.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <string>

namespace sef {

EigenDecomposition sym_eigh(const Matrix& S) {
    require_finite(S, "eigendecomposition input");
    if (S.rows() != S.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "eigendecomposition needs a square matrix");
    }
    const Matrix sym = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::InvalidData, "eigendecomposition failed to converge");
    }
    const Eigen::Index n = sym.rows();
    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    // Eigen returns ascending order; flip to descending and fix signs so
    // the largest-magnitude component of each vector is positive.
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
        Vector v = solver.eigenvectors().col(n - 1 - k);
        Eigen::Index peak = 0;
        v.cwiseAbs().maxCoeff(&peak);
        if (v(peak) < 0.0) v = -v;
        out.eigenvectors.col(k) = v;
    }
    return out;
}

Matrix pca_fit(const Matrix& X, int m) {
    const Eigen::Index d = X.cols();
    if (m < 1 || m > d) {
        throw Error(ErrorKind::InvalidParameter,
                    "PCA dimensionality must satisfy 1 <= m <= " + std::to_string(d));
    }
    require_finite(X, "PCA input");
    Matrix centered = X.rowwise() - X.colwise().mean();
    const double denom = std::max<double>(1.0, static_cast<double>(X.rows()) - 1.0);
    const Matrix cov = (centered.transpose() * centered) / denom;
    return sym_eigh(cov).eigenvectors.leftCols(m);
}

Matrix kpca_fit(const Matrix& K, int m) {
    const Eigen::Index n = K.rows();
    if (m < 1 || m > n) {
        throw Error(ErrorKind::InvalidParameter,
                    "KPCA dimensionality must satisfy 1 <= m <= " + std::to_string(n));
    }
    const EigenDecomposition eig = sym_eigh(K);
    Matrix A(n, m);
    for (int k = 0; k < m; ++k) {
        const double lambda = eig.eigenvalues(k);
        if (lambda <= 1e-12) {
            throw Error(ErrorKind::DegenerateKernel,
                        "kernel eigenvalue " + std::to_string(k) +
                            " is too small to renormalize");
        }
        // v^T K v = lambda for a unit eigenvector, so a = v/sqrt(lambda)
        // gives a^T K a = 1.
        A.col(k) = eig.eigenvectors.col(k) / std::sqrt(lambda);
    }
    return A;
}

Matrix geodesic_distances(const Matrix& X, int k) {
    const Eigen::Index n = X.rows();
    if (k < 1 || k >= n) {
        throw Error(ErrorKind::InvalidParameter,
                    "neighbor count must satisfy 1 <= k < n, got k=" + std::to_string(k));
    }
    const Matrix Dsq = pairwise_sq_distances(X);

    // symmetrized k-NN adjacency with Euclidean edge weights
    std::vector<std::vector<std::pair<Eigen::Index, double>>> adjacency(n);
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index a, Eigen::Index b) { return Dsq(a, j) < Dsq(b, j); });
        int taken = 0;
        for (Eigen::Index idx : order) {
            if (idx == j) continue;
            const double w = std::sqrt(Dsq(idx, j));
            adjacency[j].emplace_back(idx, w);
            adjacency[idx].emplace_back(j, w);
            if (++taken == k) break;
        }
    }

    const double inf = std::numeric_limits<double>::infinity();
    Matrix G(n, n);
    using QueueItem = std::pair<double, Eigen::Index>;
    for (Eigen::Index source = 0; source < n; ++source) {
        std::vector<double> dist(static_cast<size_t>(n), inf);
        dist[source] = 0.0;
        std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue;
        queue.emplace(0.0, source);
        while (!queue.empty()) {
            auto [d, u] = queue.top();
            queue.pop();
            if (d > dist[u]) continue;
            for (const auto& [v, w] : adjacency[u]) {
                if (d + w < dist[v]) {
                    dist[v] = d + w;
                    queue.emplace(dist[v], v);
                }
            }
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!std::isfinite(dist[j])) {
                throw Error(ErrorKind::DisconnectedGraph,
                            "k-NN graph is disconnected (k=" + std::to_string(k) + ")");
            }
            G(source, j) = dist[j];
        }
    }
    // Dijkstra from each endpoint can differ in the last ulp; mirror.
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = std::min(G(i, j), G(j, i));
            G(i, j) = v;
            G(j, i) = v;
        }
    }
    return G;
}

Matrix isomap(const Matrix& X, int k, int m) {
    const Eigen::Index n = X.rows();
    if (m < 1 || m > n) {
        throw Error(ErrorKind::InvalidParameter, "embedding dimensionality out of range");
    }
    const Matrix G = geodesic_distances(X, k);
    // classical MDS: B = -1/2 J G^2 J with J = I - 11^T/n
    Matrix B = G.array().square();
    Vector row_means = B.rowwise().mean();
    const double grand_mean = row_means.mean();
    B.colwise() -= row_means;
    B.rowwise() -= row_means.transpose();
    B.array() += grand_mean;
    B *= -0.5;
    const EigenDecomposition eig = sym_eigh(B);
    Matrix Y(n, m);
    for (int c = 0; c < m; ++c) {
        const double lambda = std::max(eig.eigenvalues(c), 0.0);
        Y.col(c) = eig.eigenvectors.col(c) * std::sqrt(lambda);
    }
    return Y;
}

const OvoSvmModel& OvoSvmSet::find(int class_a, int class_b) const {
    const int lo = std::min(class_a, class_b);
    const int hi = std::max(class_a, class_b);
    for (const auto& model : models) {
        if (model.class_a == lo && model.class_b == hi) return model;
    }
    throw Error(ErrorKind::MissingModel,
                "no model for class pair (" + std::to_string(lo) + "," + std::to_string(hi) + ")");
}

namespace {

// Pegasos: hinge subgradient steps at lr_t = 1/(lambda t) with the
// projection onto the 1/sqrt(lambda) ball. The bias rides along as an
// augmented constant feature, so it is (mildly) regularized too.
OvoSvmModel train_pair(const Matrix& X, const std::vector<Eigen::Index>& rows,
                       const std::vector<double>& y, int class_a, int class_b,
                       double C, int epochs, std::uint64_t seed) {
    const Eigen::Index d = X.cols();
    const size_t n = rows.size();
    const double lambda = 1.0 / (C * static_cast<double>(n));
    const double radius = 1.0 / std::sqrt(lambda);
    Vector w = Vector::Zero(d + 1); // last component is the bias
    std::mt19937_64 rng(seed);
    std::vector<size_t> visit(n);
    std::iota(visit.begin(), visit.end(), size_t{0});
    long t = 0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        std::shuffle(visit.begin(), visit.end(), rng);
        for (size_t pos : visit) {
            ++t;
            const double lr = 1.0 / (lambda * static_cast<double>(t));
            const auto row = X.row(rows[pos]);
            const double margin = y[pos] * (row.dot(w.head(d)) + w(d));
            w *= (1.0 - lr * lambda);
            if (margin < 1.0) {
                w.head(d) += (lr * y[pos]) * row.transpose();
                w(d) += lr * y[pos];
            }
            const double norm = w.norm();
            if (norm > radius) w *= radius / norm;
        }
    }
    return {class_a, class_b, w.head(d), w(d)};
}

} // namespace

OvoSvmSet svm_ovo_fit(const Matrix& X, const Labels& labels, double C, int epochs,
                      std::uint64_t seed) {
    if (static_cast<Eigen::Index>(labels.size()) != X.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "label count must match the sample count");
    }
    if (!(C > 0.0) || epochs < 1) {
        throw Error(ErrorKind::InvalidParameter, "SVM needs C > 0 and epochs >= 1");
    }
    const int n_classes = count_classes(labels);
    if (n_classes < 2) {
        throw Error(ErrorKind::InvalidLabels, "SVM training needs at least 2 classes");
    }
    OvoSvmSet set;
    for (int a = 0; a < n_classes; ++a) {
        for (int b = a + 1; b < n_classes; ++b) {
            std::vector<Eigen::Index> rows;
            std::vector<double> y;
            for (size_t i = 0; i < labels.size(); ++i) {
                if (labels[i] == a || labels[i] == b) {
                    rows.push_back(static_cast<Eigen::Index>(i));
                    y.push_back(labels[i] == a ? 1.0 : -1.0);
                }
            }
            const std::uint64_t pair_seed =
                seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(a) * 1024 + b + 1));
            set.models.push_back(train_pair(X, rows, y, a, b, C, epochs, pair_seed));
        }
    }
    return set;
}

double svm_decision(const OvoSvmModel& model, const Vector& x) {
    if (x.size() != model.w.size()) {
        throw Error(ErrorKind::DimensionMismatch, "sample dimensionality mismatch");
    }
    return model.w.dot(x) + model.b;
}

int svm_ovo_predict(const OvoSvmSet& set, const Vector& x) {
    if (set.models.empty()) {
        throw Error(ErrorKind::MissingModel, "empty one-vs-one model set");
    }
    int max_class = 0;
    for (const auto& model : set.models) {
        max_class = std::max({max_class, model.class_a, model.class_b});
    }
    std::vector<int> votes(static_cast<size_t>(max_class) + 1, 0);
    for (const auto& model : set.models) {
        const int winner = svm_decision(model, x) >= 0.0 ? model.class_a : model.class_b;
        votes[static_cast<size_t>(winner)]++;
    }
    return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

NccModel ncc_fit(const Matrix& X, const Labels& labels) {
    if (static_cast<Eigen::Index>(labels.size()) != X.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "label count must match the sample count");
    }
    const int n_classes = count_classes(labels);
    NccModel model;
    model.centroids = Matrix::Zero(n_classes, X.cols());
    std::vector<long> counts(static_cast<size_t>(n_classes), 0);
    for (size_t i = 0; i < labels.size(); ++i) {
        model.centroids.row(labels[i]) += X.row(static_cast<Eigen::Index>(i));
        counts[static_cast<size_t>(labels[i])]++;
    }
    for (int c = 0; c < n_classes; ++c) {
        model.centroids.row(c) /= static_cast<double>(counts[static_cast<size_t>(c)]);
    }
    return model;
}

int ncc_predict(const NccModel& model, const Vector& x) {
    if (x.size() != model.centroids.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "sample dimensionality mismatch");
    }
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < model.centroids.rows(); ++c) {
        const double dist = (model.centroids.row(c).transpose() - x).squaredNorm();
        if (dist < best_dist) { // strict: ties keep the lowest class id
            best_dist = dist;
            best = static_cast<int>(c);
        }
    }
    return best;
}

Labels ncc_predict_all(const NccModel& model, const Matrix& X) {
    Labels out(static_cast<size_t>(X.rows()));
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        out[static_cast<size_t>(i)] = ncc_predict(model, X.row(i).transpose());
    }
    return out;
}

} // namespace sef
