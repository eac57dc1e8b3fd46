#pragma once

#include "sef/types.hpp"

#include <optional>
#include <string>

namespace sef {

// A feature matrix with an optional label column. Label values (string or
// integer) are mapped to dense ids in first-appearance order; the original
// strings are kept for pass-through output.
struct Dataset {
    Matrix features;
    std::optional<Labels> labels;
    std::vector<std::string> feature_names;
    std::vector<std::string> label_names; // id -> original label text

    Eigen::Index rows() const { return features.rows(); }
    Eigen::Index cols() const { return features.cols(); }
};

// CSV with a mandatory header row; a column named "label" becomes the
// label vector. Values use '.' as decimal separator.
Dataset load_dataset_csv(const std::string& path);

// Embedding writer: header dim_0..dim_{m-1} plus a trailing label column
// when labels are given. Doubles are emitted with 17 significant digits.
void save_embedding_csv(const std::string& path, const Matrix& Y,
                        const std::optional<Labels>& labels = std::nullopt,
                        const std::vector<std::string>& label_names = {});

Matrix load_matrix_csv(const std::string& path);

std::string format_double(double v); // %.17g

} // namespace sef
