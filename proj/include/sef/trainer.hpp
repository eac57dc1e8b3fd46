#pragma once

#include "sef/projections.hpp"
#include "sef/targets.hpp"

#include <cstdint>
#include <optional>

namespace sef {

enum class ProjectionMode { Linear, Kernel };

struct TrainConfig {
    ProjectionMode mode = ProjectionMode::Linear;
    int dims = 2;
    int n_iters = 500;   // 1000 is the usual choice for kernel runs
    double lr = 1e-3;    // 1e-5 for kernel runs
    double alpha_p = 1.0;
    std::vector<double> sigma_grid; // empty -> default_sigma_grid()
    std::uint64_t seed = 42;
    KernelSpec kernel;              // kernel mode only
    bool gamma_auto = false;        // pick RBF gamma by the spread heuristic
    bool record_loss = false;
    bool random_init = false;       // PCA/KPCA init is the default

    void validate() const;
};

struct FitReport {
    double initial_loss = 0.0;
    double final_loss = 0.0;
    double sigma_p = 0.0;
    double gamma = 0.0;    // resolved RBF bandwidth (kernel mode)
    bool diverged = false; // final_loss > initial_loss
    std::vector<double> loss_trace; // when record_loss: per-iteration + final
};

// A fitted projection: linear holds W, kernel holds A plus a copy of the
// preprocessed training data needed to evaluate the kernel on new points.
struct ProjectionModel {
    ProjectionMode mode = ProjectionMode::Linear;
    PreprocessStats stats;
    Matrix W;       // linear
    Matrix A;       // kernel
    KernelSpec kernel;
    Matrix X_train; // kernel, preprocessed
    double sigma_p = 0.0;
    int dims = 0;

    Eigen::Index input_dims() const;
};

// The end-to-end learning pipeline: preprocess, PCA/KPCA init, scaling
// factor selection on the initial embedding, then Adam on the combined
// objective. Returns the fitted model with its loss report.
std::pair<ProjectionModel, FitReport> fit(const Matrix& X, const TargetPair& target,
                                          const TrainConfig& config);

// Preprocess with the stored stats, then project.
Matrix transform(const ProjectionModel& model, const Matrix& X_new);

} // namespace sef
