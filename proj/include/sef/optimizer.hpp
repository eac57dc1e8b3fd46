#pragma once

#include "sef/types.hpp"

namespace sef {

// Adam with the usual bias correction; defaults follow the published
// recommendation (beta1 0.9, beta2 0.999, eps 1e-8).
struct AdamState {
    Matrix m; // first moment
    Matrix v; // second moment
    long t = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    explicit AdamState(Eigen::Index rows = 0, Eigen::Index cols = 0)
        : m(Matrix::Zero(rows, cols)), v(Matrix::Zero(rows, cols)) {}
};

// One in-place update of params. Deterministic; throws on shape mismatch.
void adam_step(Matrix& params, const Matrix& grad, AdamState& state, double lr);

} // namespace sef
