#include "sef/pairwise.hpp"

#include "sef/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace sef {

Matrix pairwise_sq_distances(const Matrix& Y) {
    require_finite(Y, "distance input");
    const Eigen::Index n = Y.rows();
    Vector sq_norms = Y.rowwise().squaredNorm();
    Matrix D = -2.0 * (Y * Y.transpose());
    D.colwise() += sq_norms;
    D.rowwise() += sq_norms.transpose();
    // Rounding can leave tiny negatives and an asymmetric drift; mirror the
    // upper triangle so the result is symmetric by construction.
    for (Eigen::Index i = 0; i < n; ++i) {
        D(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double v = std::max(D(i, j), 0.0);
            D(i, j) = v;
            D(j, i) = v;
        }
    }
    return D;
}

Matrix gaussian_similarity(const Matrix& D, double sigma) {
    if (!(sigma > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "sigma must be positive");
    }
    return (-D / sigma).array().exp();
}

long histogram_max_count(const Matrix& S) {
    long bins[100] = {0};
    const Eigen::Index n = S.rows();
    for (Eigen::Index j = 0; j < S.cols(); ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == j) continue;
            double v = S(i, j);
            int bin = std::min(99, static_cast<int>(v * 100.0));
            bins[std::max(bin, 0)]++;
        }
    }
    long best = 0;
    for (long b : bins) best = std::max(best, b);
    return best;
}

namespace {

// Shared line search: minimize the max histogram bin over the grid,
// smallest candidate wins ties.
double spread_line_search(const std::vector<double>& grid,
                          const std::function<Matrix(double)>& similarity_of) {
    if (grid.empty()) {
        throw Error(ErrorKind::InvalidParameter, "empty candidate grid");
    }
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    if (!(sorted.front() > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "grid candidates must be positive");
    }
    double best_value = sorted.front();
    long best_count = std::numeric_limits<long>::max();
    for (double candidate : sorted) {
        long count = histogram_max_count(similarity_of(candidate));
        if (count < best_count) {
            best_count = count;
            best_value = candidate;
        }
    }
    return best_value;
}

} // namespace

double estimate_scaling_factor(const Matrix& D, const std::vector<double>& grid) {
    return spread_line_search(
        grid, [&](double sigma) { return gaussian_similarity(D, sigma); });
}

double estimate_rbf_gamma(const Matrix& D, const std::vector<double>& grid) {
    return spread_line_search(
        grid, [&](double gamma) { return gaussian_similarity(D, gamma * gamma); });
}

std::vector<double> default_sigma_grid() {
    std::vector<double> grid;
    grid.reserve(41);
    for (int k = 0; k <= 40; ++k) {
        grid.push_back(std::pow(10.0, -5.0 + 0.25 * k));
    }
    return grid;
}

} // namespace sef
