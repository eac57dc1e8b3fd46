#include "sef/commands.hpp"

#include "sef/dataset.hpp"
#include "sef/error.hpp"
#include "sef/pairwise.hpp"
#include "sef/reference.hpp"
#include "sef/serialize.hpp"
#include "sef/trainer.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <random>

namespace sef::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Labels require_labels(const Dataset& ds, const std::string& what) {
    if (!ds.labels) {
        throw Error(ErrorKind::UsageError, what + " requires a 'label' column");
    }
    return *ds.labels;
}

} // namespace

void cmd_make_target(const MakeTargetArgs& args, std::ostream& out) {
    const Dataset ds = load_dataset_csv(args.input_csv);
    const auto n = ds.rows();
    const std::vector<double> grid = default_sigma_grid();

    TargetFile file;
    file.metadata["kind"] = args.kind;
    double sigma_used = 0.0;

    if (args.kind == "pca") {
        file.pair = target_pca(static_cast<int>(n));
    } else if (args.kind == "lda") {
        file.pair = target_lda(require_labels(ds, "lda target"));
    } else if (args.kind == "le") {
        const double sigma_le =
            args.sigma_le ? *args.sigma_le
                          : estimate_scaling_factor(pairwise_sq_distances(ds.features), grid);
        file.pair = target_le(ds.features, args.k, sigma_le);
        file.metadata["k"] = std::to_string(args.k);
        file.metadata["sigma_le"] = format_double(sigma_le);
    } else if (args.kind == "lap-pca") {
        file.pair = target_lap_pca(ds.features, args.k, args.non_neighbor_weight);
        file.metadata["k"] = std::to_string(args.k);
        file.metadata["non_neighbor_weight"] = format_double(args.non_neighbor_weight);
    } else if (args.kind == "clone") {
        if (args.embedding_csv.empty()) {
            throw Error(ErrorKind::UsageError, "clone target requires --embedding");
        }
        const Matrix G = load_matrix_csv(args.embedding_csv);
        if (G.rows() != n) {
            throw Error(ErrorKind::DimensionMismatch,
                        "embedding rows do not match the dataset");
        }
        file.pair = target_clone(G, args.sigma, grid, &sigma_used);
        file.metadata["sigma"] = format_double(sigma_used);
    } else if (args.kind == "svm") {
        const Labels labels = require_labels(ds, "svm target");
        const OvoSvmSet svms =
            svm_ovo_fit(ds.features, labels, args.svm_c, args.svm_epochs, args.seed);
        const auto decisions = [&](int a, int b, int index) {
            return svm_decision(svms.find(a, b),
                                ds.features.row(index).transpose());
        };
        file.pair = target_svm(decisions, labels, args.sigma, grid,
                               SameClassRule::MinOverClassModels, &sigma_used);
        file.metadata["sigma"] = format_double(sigma_used);
        file.metadata["svm_c"] = format_double(args.svm_c);
        file.metadata["svm_epochs"] = std::to_string(args.svm_epochs);
    } else {
        throw Error(ErrorKind::UsageError, "unknown target kind '" + args.kind + "'");
    }

    save_target(args.output_path, file);
    out << "wrote " << args.kind << " target for " << n << " samples to " << args.output_path
        << "\n";
}

void cmd_fit(const FitArgs& args, std::ostream& out) {
    const auto start = Clock::now();
    const Dataset ds = load_dataset_csv(args.input_csv);
    const TargetFile target = load_target(args.target_path);

    TrainConfig config;
    if (args.mode == "linear") {
        config.mode = ProjectionMode::Linear;
        config.n_iters = args.iters.value_or(500);
        config.lr = args.lr.value_or(1e-3);
    } else if (args.mode == "kernel") {
        config.mode = ProjectionMode::Kernel;
        config.n_iters = args.iters.value_or(1000);
        config.lr = args.lr.value_or(1e-5);
    } else {
        throw Error(ErrorKind::UsageError, "unknown mode '" + args.mode + "'");
    }
    config.dims = args.dims;
    config.alpha_p = args.alpha_p;
    config.seed = args.seed;
    config.record_loss = args.record_loss;
    config.random_init = args.random_init;
    if (args.kernel == "rbf") {
        config.kernel.kind = KernelKind::Rbf;
        if (args.gamma) {
            config.kernel.gamma = *args.gamma;
        } else {
            config.gamma_auto = true;
        }
    } else if (args.kernel == "linear") {
        config.kernel.kind = KernelKind::Linear;
    } else if (args.kernel == "poly") {
        config.kernel.kind = KernelKind::Polynomial;
        config.kernel.degree = args.degree;
        config.kernel.coef = args.coef;
    } else {
        throw Error(ErrorKind::UsageError, "unknown kernel '" + args.kernel + "'");
    }

    auto [model, report] = fit(ds.features, target.pair, config);

    std::map<std::string, std::string> echo;
    echo["mode"] = args.mode;
    echo["dims"] = std::to_string(config.dims);
    echo["iters"] = std::to_string(config.n_iters);
    echo["lr"] = format_double(config.lr);
    echo["alpha_p"] = format_double(config.alpha_p);
    echo["seed"] = std::to_string(config.seed);
    save_model(args.model_path, model, echo);

    out << "initial loss: " << format_double(report.initial_loss) << "\n";
    out << "final loss:   " << format_double(report.final_loss) << "\n";
    out << "sigma_p:      " << format_double(report.sigma_p) << "\n";
    if (config.mode == ProjectionMode::Kernel) {
        out << "gamma:        " << format_double(model.kernel.gamma) << "\n";
    }
    if (report.diverged) {
        out << "warning: loss did not decrease; consider a smaller learning rate\n";
    }
    out << "wall time:    " << seconds_since(start) << " s\n";
    out << "wrote model to " << args.model_path << "\n";
}

void cmd_transform(const TransformArgs& args, std::ostream& out) {
    const ProjectionModel model = load_model(args.model_path);
    const Dataset ds = load_dataset_csv(args.input_csv);
    const Matrix Y = transform(model, ds.features);
    save_embedding_csv(args.output_csv, Y, ds.labels, ds.label_names);
    out << "wrote " << Y.rows() << "x" << Y.cols() << " embedding to " << args.output_csv
        << "\n";
}

void cmd_eval(const EvalArgs& args, std::ostream& out) {
    if (args.classifier != "ncc") {
        throw Error(ErrorKind::UsageError, "unknown classifier '" + args.classifier + "'");
    }
    const ProjectionModel model = load_model(args.model_path);
    const Dataset train = load_dataset_csv(args.train_csv);
    const Dataset test = load_dataset_csv(args.test_csv);
    const Labels train_labels = require_labels(train, "eval");
    require_labels(test, "eval");

    // test label ids are file-local; remap through the training label names
    Labels test_labels(test.labels->size(), -1);
    for (size_t i = 0; i < test.labels->size(); ++i) {
        const std::string& name = test.label_names[static_cast<size_t>((*test.labels)[i])];
        for (size_t id = 0; id < train.label_names.size(); ++id) {
            if (train.label_names[id] == name) {
                test_labels[i] = static_cast<int>(id);
                break;
            }
        }
    }

    const NccModel ncc = ncc_fit(transform(model, train.features), train_labels);

    const auto start = Clock::now();
    const Matrix Y_test = transform(model, test.features);
    long correct = 0;
    for (Eigen::Index i = 0; i < Y_test.rows(); ++i) {
        if (ncc_predict(ncc, Y_test.row(i).transpose()) == test_labels[static_cast<size_t>(i)]) {
            ++correct;
        }
    }
    const double elapsed = seconds_since(start);
    const double accuracy = static_cast<double>(correct) / static_cast<double>(Y_test.rows());

    char acc_buf[32];
    std::snprintf(acc_buf, sizeof(acc_buf), "%.4f", accuracy);
    out << "accuracy: " << acc_buf << "\n";
    out << "mean transform+classify time per sample: "
        << elapsed / static_cast<double>(Y_test.rows()) * 1e6 << " us\n";
}

namespace {

// Central finite differences of a scalar function of a matrix.
template <typename F>
Matrix finite_difference(Matrix params, const F& f, double h = 1e-5) {
    Matrix grad(params.rows(), params.cols());
    for (Eigen::Index j = 0; j < params.cols(); ++j) {
        for (Eigen::Index i = 0; i < params.rows(); ++i) {
            const double saved = params(i, j);
            params(i, j) = saved + h;
            const double up = f(params);
            params(i, j) = saved - h;
            const double down = f(params);
            params(i, j) = saved;
            grad(i, j) = (up - down) / (2.0 * h);
        }
    }
    return grad;
}

double relative_error(const Matrix& a, const Matrix& b) {
    const double scale = std::max({a.norm(), b.norm(), 1e-12});
    return (a - b).norm() / scale;
}

} // namespace

void cmd_gradcheck(const GradCheckArgs& args, std::ostream& out) {
    if (args.instances < 1 || args.max_n < 2 || args.max_d < 1 || args.max_m < 1) {
        throw Error(ErrorKind::UsageError, "gradcheck sizes must be positive (n >= 2)");
    }
    std::mt19937_64 rng(args.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double worst_linear = 0.0, worst_kernel = 0.0;
    double worst_ortho_linear = 0.0, worst_ortho_kernel = 0.0;
    out << "checked shapes (n,d,m):";

    for (int instance = 0; instance < args.instances; ++instance) {
        const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(args.max_n - 1));
        const int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(args.max_d));
        const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(args.max_m));
        out << " (" << n << "," << d << "," << m << ")";

        Matrix X(n, d), W(d, m), A(n, m), Gt(n, 3);
        for (auto* mat : {&X, &W, &A, &Gt}) {
            for (Eigen::Index j = 0; j < mat->cols(); ++j) {
                for (Eigen::Index i = 0; i < mat->rows(); ++i) {
                    (*mat)(i, j) = normal(rng);
                }
            }
        }
        X = preprocess_apply(X, preprocess_fit(X, PreprocessMode::ZNormalize));
        // a random-embedding similarity makes a valid target matrix
        const Matrix T = gaussian_similarity(pairwise_sq_distances(Gt), 2.0);
        Matrix M(n, n);
        for (int i = 0; i < n; ++i) {
            M(i, i) = 1.0;
            for (int j = i + 1; j < n; ++j) {
                M(i, j) = M(j, i) = 0.2 + 0.8 * unit(rng);
            }
        }
        KernelSpec rbf{KernelKind::Rbf, 1.0 + unit(rng), 2, 1.0};
        const Matrix K = kernel_gram(X, rbf);

        // sigma per embedding via the product's own line search, so the
        // similarities stay spread out and the gradients stay well-scaled
        const Matrix Yl = linear_project(X, W);
        const double sigma_p =
            estimate_scaling_factor(pairwise_sq_distances(Yl), default_sigma_grid());
        const Matrix Pl = gaussian_similarity(pairwise_sq_distances(Yl), sigma_p);
        worst_linear = std::max(
            worst_linear,
            relative_error(grad_linear(X, Yl, Pl, T, M, sigma_p),
                           finite_difference(W, [&](const Matrix& Wx) {
                               const Matrix Y = linear_project(X, Wx);
                               return sef_loss(
                                   gaussian_similarity(pairwise_sq_distances(Y), sigma_p), T, M);
                           })));
        worst_ortho_linear = std::max(
            worst_ortho_linear,
            relative_error(grad_ortho_linear(W),
                           finite_difference(W, [&](const Matrix& Wx) {
                               return ortho_penalty_linear(Wx);
                           })));

        const Matrix Yk = K * A;
        const double sigma_k =
            estimate_scaling_factor(pairwise_sq_distances(Yk), default_sigma_grid());
        const Matrix Pk = gaussian_similarity(pairwise_sq_distances(Yk), sigma_k);
        worst_kernel = std::max(
            worst_kernel,
            relative_error(grad_kernel(K, Yk, Pk, T, M, sigma_k),
                           finite_difference(A, [&](const Matrix& Ax) {
                               const Matrix Y = K * Ax;
                               return sef_loss(
                                   gaussian_similarity(pairwise_sq_distances(Y), sigma_k), T, M);
                           })));
        worst_ortho_kernel = std::max(
            worst_ortho_kernel,
            relative_error(grad_ortho_kernel(A, K),
                           finite_difference(A, [&](const Matrix& Ax) {
                               return ortho_penalty_kernel(Ax, K);
                           })));
    }
    out << "\n";

    const struct {
        const char* name;
        double error;
    } rows[] = {
        {"similarity gradient, linear", worst_linear},
        {"similarity gradient, kernel", worst_kernel},
        {"orthonormality gradient, linear", worst_ortho_linear},
        {"orthonormality gradient, kernel", worst_ortho_kernel},
    };
    bool all_ok = true;
    for (const auto& row : rows) {
        const bool ok = row.error < args.tolerance;
        all_ok = all_ok && ok;
        out << (ok ? "PASS " : "FAIL ") << row.name << ": max relative error "
            << format_double(row.error) << " (tolerance " << format_double(args.tolerance)
            << ")\n";
    }
    if (!all_ok) {
        throw Error(ErrorKind::NumericFailure, "gradient check failed");
    }
}

int exit_code_for(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        switch (err->kind()) {
            case ErrorKind::UsageError:
            case ErrorKind::InvalidParameter:
                return 2;
            case ErrorKind::InvalidData:
            case ErrorKind::DimensionMismatch:
            case ErrorKind::InvalidLabels:
            case ErrorKind::InvalidMask:
            case ErrorKind::IoError:
            case ErrorKind::FormatError:
            case ErrorKind::MissingModel:
                return 3;
            case ErrorKind::DegenerateKernel:
            case ErrorKind::DisconnectedGraph:
            case ErrorKind::NumericFailure:
                return 4;
        }
    }
    return 4;
}

} // namespace sef::cli
