#pragma once

#include "sef/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

// Command implementations behind the CLI front end, kept in the library so
// they can be driven directly from tests. Each throws sef::Error on
// failure; run_cli_command maps error kinds to process exit codes
// (0 success, 2 usage, 3 data, 4 numeric).

namespace sef::cli {

struct MakeTargetArgs {
    std::string input_csv;
    std::string kind; // pca | lda | le | lap-pca | clone | svm
    std::string output_path;
    int k = 5;                        // le, lap-pca
    std::optional<double> sigma_le;   // le; defaults to AUTO on input distances
    double non_neighbor_weight = 1.0; // lap-pca
    std::string embedding_csv;        // clone
    std::optional<double> sigma;      // clone, svm; nullopt = AUTO
    double svm_c = 1.0;
    int svm_epochs = 200;
    std::uint64_t seed = 42;
};

struct FitArgs {
    std::string input_csv;
    std::string target_path;
    std::string model_path;
    std::string mode = "linear"; // linear | kernel
    int dims = 2;
    std::optional<int> iters;    // default 500 linear / 1000 kernel
    std::optional<double> lr;    // default 1e-3 linear / 1e-5 kernel
    double alpha_p = 1.0;
    std::string kernel = "rbf";  // rbf | linear | poly
    std::optional<double> gamma; // nullopt = AUTO for rbf
    int degree = 2;
    double coef = 1.0;
    std::uint64_t seed = 42;
    bool record_loss = false;
    bool random_init = false;
};

struct TransformArgs {
    std::string model_path;
    std::string input_csv;
    std::string output_csv;
};

struct EvalArgs {
    std::string model_path;
    std::string train_csv;
    std::string test_csv;
    std::string classifier = "ncc";
};

struct GradCheckArgs {
    std::uint64_t seed = 42;
    int instances = 20;
    int max_n = 10, max_d = 6, max_m = 3; // --sizes N,d,m
    double tolerance = 1e-4;
};

void cmd_make_target(const MakeTargetArgs& args, std::ostream& out);
void cmd_fit(const FitArgs& args, std::ostream& out);
void cmd_transform(const TransformArgs& args, std::ostream& out);
void cmd_eval(const EvalArgs& args, std::ostream& out);

// Throws Error(InvalidData/numeric) when a gradient misses the tolerance;
// prints the max relative error per gradient either way.
void cmd_gradcheck(const GradCheckArgs& args, std::ostream& out);

// Exit-code mapping used by the CLI main.
int exit_code_for(const std::exception& e);

} // namespace sef::cli
