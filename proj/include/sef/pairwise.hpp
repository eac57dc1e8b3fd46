#pragma once

#include "sef/types.hpp"

namespace sef {

// Squared Euclidean distances between all row pairs of Y.
// The result is exactly symmetric with a zero diagonal.
Matrix pairwise_sq_distances(const Matrix& Y);

// Heat-kernel similarity S_ij = exp(-D_ij / sigma) applied element-wise to a
// squared-distance matrix. sigma must be positive.
Matrix gaussian_similarity(const Matrix& D, double sigma);

// Largest count among the 100 equal-width bins over [0,1] of the
// off-diagonal entries of a similarity matrix (last bin right-inclusive).
long histogram_max_count(const Matrix& S);

// Scaling-factor line search: returns the grid value sigma that minimizes
// histogram_max_count(gaussian_similarity(D, sigma)). Ties go to the
// smallest sigma.
double estimate_scaling_factor(const Matrix& D, const std::vector<double>& grid);

// Same line search for the RBF kernel bandwidth, whose exponent uses
// gamma^2: picks gamma minimizing the max histogram bin of exp(-D/gamma^2).
double estimate_rbf_gamma(const Matrix& D, const std::vector<double>& grid);

// 41 logarithmically uniform candidates covering 1e-5..1e5 (4 per decade).
std::vector<double> default_sigma_grid();

} // namespace sef
