#include "sef/commands.hpp"
#include "sef/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

// CLI11 treats "auto" as a sentinel for the line-search heuristics.
void add_auto_or_value(CLI::App* cmd, const std::string& flag, std::optional<double>& slot,
                       const std::string& help) {
    cmd->add_option_function<std::string>(
           flag,
           [&slot, flag](const std::string& text) {
               if (text == "auto") {
                   slot.reset();
                   return;
               }
               try {
                   slot = std::stod(text);
               } catch (const std::exception&) {
                   throw CLI::ValidationError(flag, "expected a number or 'auto'");
               }
           },
           help)
        ->default_str("auto");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Similarity embedding toolkit: learn projections whose pairwise "
                 "similarities match a chosen target"};
    app.require_subcommand(1);

    sef::cli::MakeTargetArgs target_args;
    auto* make_target = app.add_subcommand(
        "make-target", "Build a target similarity matrix and mask from a dataset");
    make_target->add_option("--input", target_args.input_csv, "dataset CSV")->required();
    make_target
        ->add_option("--kind", target_args.kind, "pca | lda | le | lap-pca | clone | svm")
        ->required();
    make_target->add_option("--output", target_args.output_path, "target file to write")
        ->required();
    make_target->add_option("--k", target_args.k, "neighbor count (le, lap-pca)");
    add_auto_or_value(make_target, "--sigma-le", target_args.sigma_le,
                      "input-space bandwidth for le targets");
    make_target->add_option("--non-neighbor-weight", target_args.non_neighbor_weight,
                            "mask weight for non-neighbor pairs (lap-pca)");
    make_target->add_option("--embedding", target_args.embedding_csv,
                            "embedding CSV to clone");
    add_auto_or_value(make_target, "--sigma", target_args.sigma,
                      "similarity bandwidth (clone, svm)");
    make_target->add_option("--svm-c", target_args.svm_c, "SVM regularization constant");
    make_target->add_option("--svm-epochs", target_args.svm_epochs, "SVM training epochs");
    make_target->add_option("--seed", target_args.seed, "RNG seed");

    sef::cli::FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "Learn a projection matching a target");
    fit->add_option("--input", fit_args.input_csv, "dataset CSV")->required();
    fit->add_option("--target", fit_args.target_path, "target file")->required();
    fit->add_option("--output", fit_args.model_path, "model file to write")->required();
    fit->add_option("--mode", fit_args.mode, "linear | kernel");
    fit->add_option("--dims", fit_args.dims, "embedding dimensionality");
    fit->add_option("--iters", fit_args.iters, "iterations (default 500 linear, 1000 kernel)");
    fit->add_option("--lr", fit_args.lr, "learning rate (default 1e-3 linear, 1e-5 kernel)");
    fit->add_option("--alpha-p", fit_args.alpha_p, "orthonormality weight in [0,1]");
    fit->add_option("--kernel", fit_args.kernel, "rbf | linear | poly");
    add_auto_or_value(fit, "--gamma", fit_args.gamma, "RBF bandwidth");
    fit->add_option("--degree", fit_args.degree, "polynomial degree");
    fit->add_option("--coef", fit_args.coef, "polynomial offset");
    fit->add_option("--seed", fit_args.seed, "RNG seed");
    fit->add_flag("--record-loss", fit_args.record_loss, "keep the per-iteration loss trace");
    fit->add_flag("--random-init", fit_args.random_init,
                  "random parameter init instead of PCA/KPCA");

    sef::cli::TransformArgs transform_args;
    auto* transform = app.add_subcommand("transform", "Project a dataset with a fitted model");
    transform->add_option("--model", transform_args.model_path, "model file")->required();
    transform->add_option("--input", transform_args.input_csv, "dataset CSV")->required();
    transform->add_option("--output", transform_args.output_csv, "embedding CSV to write")
        ->required();

    sef::cli::EvalArgs eval_args;
    auto* eval = app.add_subcommand(
        "eval", "Nearest-centroid accuracy of a model on a train/test split");
    eval->add_option("--model", eval_args.model_path, "model file")->required();
    eval->add_option("--train", eval_args.train_csv, "training CSV with labels")->required();
    eval->add_option("--test", eval_args.test_csv, "test CSV with labels")->required();
    eval->add_option("--classifier", eval_args.classifier, "ncc");

    sef::cli::GradCheckArgs grad_args;
    auto* gradcheck = app.add_subcommand(
        "gradcheck", "Verify analytic gradients against central finite differences");
    gradcheck->add_option("--seed", grad_args.seed, "RNG seed");
    gradcheck->add_option("--instances", grad_args.instances, "random instances to test");
    gradcheck
        ->add_option_function<std::string>(
            "--sizes",
            [&grad_args](const std::string& text) {
                int n = 0, d = 0, m = 0;
                if (std::sscanf(text.c_str(), "%d,%d,%d", &n, &d, &m) != 3) {
                    throw CLI::ValidationError("--sizes", "expected N,d,m");
                }
                grad_args.max_n = n;
                grad_args.max_d = d;
                grad_args.max_m = m;
            },
            "maximum N,d,m per instance")
        ->default_str("10,6,3");
    gradcheck->add_option("--tolerance", grad_args.tolerance, "max relative error allowed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // usage errors exit 2, --help exits 0
    }

    try {
        if (*make_target) sef::cli::cmd_make_target(target_args, std::cout);
        if (*fit) sef::cli::cmd_fit(fit_args, std::cout);
        if (*transform) sef::cli::cmd_transform(transform_args, std::cout);
        if (*eval) sef::cli::cmd_eval(eval_args, std::cout);
        if (*gradcheck) sef::cli::cmd_gradcheck(grad_args, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sef::cli::exit_code_for(e);
    }
    return 0;
}
