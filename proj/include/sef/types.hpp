#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace sef {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dense class ids 0..n_classes-1.
using Labels = std::vector<int>;

bool is_finite(const Matrix& m);

// Throws Error(InvalidData) when m contains NaN or Inf.
void require_finite(const Matrix& m, const std::string& what);

// Number of distinct classes; validates that ids are dense and every
// class 0..max is non-empty. Throws Error(InvalidLabels) otherwise.
int count_classes(const Labels& labels);

} // namespace sef
