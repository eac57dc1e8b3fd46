#include "sef/trainer.hpp"

#include "sef/error.hpp"
#include "sef/optimizer.hpp"
#include "sef/pairwise.hpp"
#include "sef/reference.hpp"

#include <cmath>
#include <random>
#include <string>

namespace sef {

void TrainConfig::validate() const {
    if (dims < 1) throw Error(ErrorKind::InvalidParameter, "dims must be >= 1");
    if (n_iters < 1) throw Error(ErrorKind::InvalidParameter, "n_iters must be >= 1");
    if (!(lr > 0.0)) throw Error(ErrorKind::InvalidParameter, "learning rate must be positive");
    if (!(alpha_p >= 0.0 && alpha_p <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "alpha_p must lie in [0,1]");
    }
    if (mode == ProjectionMode::Kernel && !gamma_auto) kernel.validate();
}

Eigen::Index ProjectionModel::input_dims() const {
    return stats.mean.size();
}

namespace {

Matrix random_init_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(rows)));
    Matrix W(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            W(i, j) = normal(rng);
        }
    }
    return W;
}

// Shared Adam loop over either objective.
template <typename Objective>
FitReport run_adam(Matrix& params, const Objective& objective, const TrainConfig& config,
                   double sigma_p) {
    FitReport report;
    report.sigma_p = sigma_p;
    AdamState state(params.rows(), params.cols());
    for (int iter = 0; iter < config.n_iters; ++iter) {
        const ObjectiveResult result = objective(params);
        if (iter == 0) report.initial_loss = result.loss;
        if (config.record_loss) report.loss_trace.push_back(result.loss);
        adam_step(params, result.grad, state, config.lr);
    }
    report.final_loss = objective(params).loss;
    if (config.record_loss) report.loss_trace.push_back(report.final_loss);
    report.diverged = report.final_loss > report.initial_loss;
    return report;
}

} // namespace

std::pair<ProjectionModel, FitReport> fit(const Matrix& X, const TargetPair& target,
                                          const TrainConfig& config) {
    config.validate();
    target.validate();
    if (target.T.rows() != X.rows()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "target size " + std::to_string(target.T.rows()) + " does not match " +
                        std::to_string(X.rows()) + " samples");
    }
    if (X.rows() < 2) {
        throw Error(ErrorKind::InvalidData, "training needs at least 2 samples");
    }
    const std::vector<double> grid =
        config.sigma_grid.empty() ? default_sigma_grid() : config.sigma_grid;

    ProjectionModel model;
    model.mode = config.mode;
    model.dims = config.dims;
    FitReport report;

    if (config.mode == ProjectionMode::Linear) {
        model.stats = preprocess_fit(X, PreprocessMode::ZNormalize);
        const Matrix Xp = preprocess_apply(X, model.stats);
        model.W = config.random_init
                      ? random_init_matrix(Xp.cols(), config.dims, config.seed)
                      : pca_fit(Xp, config.dims);
        const double sigma_p =
            estimate_scaling_factor(pairwise_sq_distances(Xp * model.W), grid);
        report = run_adam(
            model.W,
            [&](const Matrix& W) {
                return linear_objective(Xp, W, target.T, target.M, sigma_p, config.alpha_p);
            },
            config, sigma_p);
        model.sigma_p = sigma_p;
    } else {
        if (config.dims > X.rows()) {
            throw Error(ErrorKind::InvalidParameter,
                        "kernel mode cannot learn more dimensions than training samples");
        }
        model.stats = preprocess_fit(X, PreprocessMode::CenterOnly);
        model.X_train = preprocess_apply(X, model.stats);
        model.kernel = config.kernel;
        if (config.gamma_auto) {
            if (config.kernel.kind != KernelKind::Rbf) {
                throw Error(ErrorKind::InvalidParameter, "gamma AUTO applies to the RBF kernel");
            }
            model.kernel.gamma =
                estimate_rbf_gamma(pairwise_sq_distances(model.X_train), grid);
        }
        const Matrix K = kernel_gram(model.X_train, model.kernel);
        model.A = config.random_init
                      ? random_init_matrix(K.rows(), config.dims, config.seed)
                      : kpca_fit(K, config.dims);
        const double sigma_p = estimate_scaling_factor(pairwise_sq_distances(K * model.A), grid);
        report = run_adam(
            model.A,
            [&](const Matrix& A) {
                return kernel_objective(K, A, target.T, target.M, sigma_p, config.alpha_p);
            },
            config, sigma_p);
        model.sigma_p = sigma_p;
        report.gamma = model.kernel.gamma;
    }
    return {std::move(model), std::move(report)};
}

Matrix transform(const ProjectionModel& model, const Matrix& X_new) {
    const Matrix Xp = preprocess_apply(X_new, model.stats);
    if (model.mode == ProjectionMode::Linear) {
        return linear_project(Xp, model.W);
    }
    return kernel_project(model.A, model.kernel, model.X_train, Xp);
}

} // namespace sef
