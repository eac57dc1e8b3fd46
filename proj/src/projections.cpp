#include "sef/projections.hpp"

#include "sef/error.hpp"
#include "sef/pairwise.hpp"

#include <cmath>
#include <string>

namespace sef {

void KernelSpec::validate() const {
    if (kind == KernelKind::Rbf && !(gamma > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "RBF kernel needs gamma > 0");
    }
    if (kind == KernelKind::Polynomial && degree < 1) {
        throw Error(ErrorKind::InvalidParameter, "polynomial kernel needs degree >= 1");
    }
}

Matrix linear_project(const Matrix& X, const Matrix& W) {
    if (X.cols() != W.rows()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "cannot project " + std::to_string(X.cols()) + "-dim data with a " +
                        std::to_string(W.rows()) + "-row projection matrix");
    }
    return X * W;
}

namespace {

// Cross squared distances, clamped at zero.
Matrix cross_sq_distances(const Matrix& Xa, const Matrix& Xb) {
    Matrix D = -2.0 * (Xa * Xb.transpose());
    D.colwise() += Xa.rowwise().squaredNorm();
    D.rowwise() += Xb.rowwise().squaredNorm().transpose();
    return D.cwiseMax(0.0);
}

} // namespace

Matrix kernel_matrix(const Matrix& Xa, const Matrix& Xb, const KernelSpec& spec) {
    spec.validate();
    if (Xa.cols() != Xb.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "kernel inputs must share the feature count");
    }
    switch (spec.kind) {
        case KernelKind::Rbf:
            // The RBF exponent uses gamma^2, unlike the embedded-space
            // similarity whose sigma_p enters unsquared.
            return (-cross_sq_distances(Xa, Xb) / (spec.gamma * spec.gamma)).array().exp();
        case KernelKind::Linear:
            return Xa * Xb.transpose();
        case KernelKind::Polynomial:
            return ((Xa * Xb.transpose()).array() + spec.coef).pow(spec.degree);
    }
    throw Error(ErrorKind::InvalidParameter, "unknown kernel kind");
}

Matrix kernel_gram(const Matrix& X, const KernelSpec& spec) {
    Matrix K = kernel_matrix(X, X, spec);
    const Eigen::Index n = K.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (spec.kind == KernelKind::Rbf) K(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            K(j, i) = K(i, j);
        }
    }
    return K;
}

Matrix kernel_project(const Matrix& A, const KernelSpec& spec,
                      const Matrix& X_train, const Matrix& X_new) {
    if (A.rows() != X_train.rows()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "coefficient rows must match the training sample count");
    }
    return kernel_matrix(X_new, X_train, spec) * A;
}

namespace {

double mask_norm(const Matrix& M) {
    const double norm = M.array().abs().sum();
    if (!(norm > 0.0)) {
        throw Error(ErrorKind::InvalidMask, "mask must have a positive 1-norm");
    }
    return norm;
}

void require_conformable(const Matrix& P, const Matrix& T, const Matrix& M) {
    if (P.rows() != T.rows() || P.cols() != T.cols() || P.rows() != M.rows() ||
        P.cols() != M.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "P, T and M must be equal-sized");
    }
}

} // namespace

double sef_loss(const Matrix& P, const Matrix& T, const Matrix& M) {
    require_conformable(P, T, M);
    const double norm = mask_norm(M);
    return (M.array() * (P - T).array().square()).sum() / (2.0 * norm);
}

double ortho_penalty_linear(const Matrix& W) {
    const double m = static_cast<double>(W.cols());
    Matrix G = W.transpose() * W;
    G.diagonal().array() -= 1.0;
    return G.squaredNorm() / (2.0 * m * m);
}

double ortho_penalty_kernel(const Matrix& A, const Matrix& K) {
    if (K.rows() != A.rows() || K.cols() != A.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "kernel matrix must be n x n for n coefficients");
    }
    const double m = static_cast<double>(A.cols());
    Matrix G = A.transpose() * K * A;
    G.diagonal().array() -= 1.0;
    return G.squaredNorm() / (2.0 * m * m);
}

namespace {

// Contracted form of the pairwise-similarity gradient. With
// C = M o (P - T) o P and r = C 1:
//   sum_ij C_ij (x_i - x_j)(y_i - y_j)^T = 2 X^T (diag(r) - C) Y
// so dJs/dX-side = -4/(sigma ||M||_1) X^T (diag(r) - C) Y.
Matrix similarity_grad(const Matrix& Xlike, const Matrix& Y, const Matrix& P,
                       const Matrix& T, const Matrix& M, double sigma_p) {
    if (!(sigma_p > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "sigma_p must be positive");
    }
    require_conformable(P, T, M);
    if (Xlike.rows() != P.rows() || Y.rows() != P.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "row counts must match the similarity size");
    }
    const double norm = mask_norm(M);
    Matrix C = M.array() * (P - T).array() * P.array();
    Matrix L = -C;
    L.diagonal() += C.rowwise().sum();
    return (-4.0 / (sigma_p * norm)) * (Xlike.transpose() * (L * Y));
}

} // namespace

Matrix grad_linear(const Matrix& X, const Matrix& Y, const Matrix& P,
                   const Matrix& T, const Matrix& M, double sigma_p) {
    return similarity_grad(X, Y, P, T, M, sigma_p);
}

Matrix grad_kernel(const Matrix& K, const Matrix& Y, const Matrix& P,
                   const Matrix& T, const Matrix& M, double sigma_p) {
    return similarity_grad(K, Y, P, T, M, sigma_p);
}

Matrix grad_ortho_linear(const Matrix& W) {
    const double m = static_cast<double>(W.cols());
    Matrix G = W.transpose() * W;
    G.diagonal().array() -= 1.0;
    return (2.0 / (m * m)) * (W * G);
}

Matrix grad_ortho_kernel(const Matrix& A, const Matrix& K) {
    if (K.rows() != A.rows() || K.cols() != A.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "kernel matrix must be n x n for n coefficients");
    }
    const double m = static_cast<double>(A.cols());
    Matrix KA = K * A;
    Matrix G = A.transpose() * KA;
    G.diagonal().array() -= 1.0;
    return (2.0 / (m * m)) * (KA * G);
}

namespace {

void require_alpha(double alpha_p) {
    if (!(alpha_p >= 0.0 && alpha_p <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "alpha_p must lie in [0,1]");
    }
}

} // namespace

ObjectiveResult linear_objective(const Matrix& X, const Matrix& W, const Matrix& T,
                                 const Matrix& M, double sigma_p, double alpha_p) {
    require_alpha(alpha_p);
    const Matrix Y = linear_project(X, W);
    const Matrix P = gaussian_similarity(pairwise_sq_distances(Y), sigma_p);
    ObjectiveResult result;
    result.loss_similarity = sef_loss(P, T, M);
    result.loss_ortho = ortho_penalty_linear(W);
    result.loss = (2.0 - alpha_p) * result.loss_similarity + alpha_p * result.loss_ortho;
    result.grad = (2.0 - alpha_p) * grad_linear(X, Y, P, T, M, sigma_p);
    if (alpha_p != 0.0) {
        result.grad += alpha_p * grad_ortho_linear(W);
    }
    return result;
}

ObjectiveResult kernel_objective(const Matrix& K, const Matrix& A, const Matrix& T,
                                 const Matrix& M, double sigma_p, double alpha_p) {
    require_alpha(alpha_p);
    const Matrix Y = K * A;
    const Matrix P = gaussian_similarity(pairwise_sq_distances(Y), sigma_p);
    ObjectiveResult result;
    result.loss_similarity = sef_loss(P, T, M);
    result.loss_ortho = ortho_penalty_kernel(A, K);
    result.loss = (2.0 - alpha_p) * result.loss_similarity + alpha_p * result.loss_ortho;
    result.grad = (2.0 - alpha_p) * grad_kernel(K, Y, P, T, M, sigma_p);
    if (alpha_p != 0.0) {
        result.grad += alpha_p * grad_ortho_kernel(A, K);
    }
    return result;
}

} // namespace sef
