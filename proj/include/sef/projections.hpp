#pragma once

#include "sef/preprocess.hpp"
#include "sef/types.hpp"

namespace sef {

enum class KernelKind { Rbf, Linear, Polynomial };

struct KernelSpec {
    KernelKind kind = KernelKind::Rbf;
    double gamma = 1.0;  // RBF: K_ij = exp(-||a_i - b_j||^2 / gamma^2)
    int degree = 2;      // Polynomial: (a_i . b_j + coef)^degree
    double coef = 1.0;

    void validate() const;
};

struct LinearModel {
    Matrix W; // d x m
    PreprocessStats stats;
};

struct KernelModel {
    Matrix A; // n_train x m
    KernelSpec kernel;
    Matrix X_train; // preprocessed training data, n_train x d
    PreprocessStats stats;
};

// Y = X * W (rows are samples).
Matrix linear_project(const Matrix& X, const Matrix& W);

// Cross-kernel matrix K_ij = k(a_i, b_j).
Matrix kernel_matrix(const Matrix& Xa, const Matrix& Xb, const KernelSpec& spec);

// Kernel matrix of X with itself, exactly symmetric (unit diagonal for RBF).
Matrix kernel_gram(const Matrix& X, const KernelSpec& spec);

// Y = K(X_new, X_train) * A.
Matrix kernel_project(const Matrix& A, const KernelSpec& spec,
                      const Matrix& X_train, const Matrix& X_new);

// Masked squared-error between achieved and target similarities:
// J_s = 1/(2||M||_1) * sum_ij M_ij (P_ij - T_ij)^2.
double sef_loss(const Matrix& P, const Matrix& T, const Matrix& M);

// Orthonormality penalties, 1/(2 m^2) ||W^T W - I||_F^2 and the kernel
// analog with K-inner products.
double ortho_penalty_linear(const Matrix& W);
double ortho_penalty_kernel(const Matrix& A, const Matrix& K);

// Analytic gradient of J_s with respect to W, where Y = X*W and
// P = exp(-pairwise_sq_distances(Y)/sigma_p):
//   dJs/dW_kt = 1/||M||_1 sum_ij M_ij (P_ij - T_ij)
//               * (-2/sigma_p) P_ij (Y_it - Y_jt)(X_ik - X_jk)
// Evaluated in the equivalent contracted form
//   -4/(sigma_p ||M||_1) X^T (diag(C 1) - C) Y,  C = M o (P - T) o P.
Matrix grad_linear(const Matrix& X, const Matrix& Y, const Matrix& P,
                   const Matrix& T, const Matrix& M, double sigma_p);

// Same with K in place of X; gradient is with respect to A, where Y = K*A.
Matrix grad_kernel(const Matrix& K, const Matrix& Y, const Matrix& P,
                   const Matrix& T, const Matrix& M, double sigma_p);

// Gradients of the orthonormality penalties: (2/m^2) W (W^T W - I) and
// (2/m^2) K A (A^T K A - I).
Matrix grad_ortho_linear(const Matrix& W);
Matrix grad_ortho_kernel(const Matrix& A, const Matrix& K);

struct ObjectiveResult {
    double loss = 0.0;
    double loss_similarity = 0.0;
    double loss_ortho = 0.0;
    Matrix grad;
};

// Combined objective J = (2 - alpha_p) J_s + alpha_p J_p and its gradient,
// evaluated at W (linear) or A (kernel). alpha_p must lie in [0,1].
ObjectiveResult linear_objective(const Matrix& X, const Matrix& W, const Matrix& T,
                                 const Matrix& M, double sigma_p, double alpha_p);
ObjectiveResult kernel_objective(const Matrix& K, const Matrix& A, const Matrix& T,
                                 const Matrix& M, double sigma_p, double alpha_p);

} // namespace sef
