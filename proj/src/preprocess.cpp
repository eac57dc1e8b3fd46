#include "sef/preprocess.hpp"

#include "sef/error.hpp"

#include <cmath>

namespace sef {

PreprocessStats preprocess_fit(const Matrix& X, PreprocessMode mode) {
    require_finite(X, "preprocess input");
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    PreprocessStats stats;
    stats.mode = mode;
    stats.mean = X.colwise().mean();
    stats.std = Vector::Ones(d);
    if (mode == PreprocessMode::ZNormalize) {
        for (Eigen::Index j = 0; j < d; ++j) {
            double var = (X.col(j).array() - stats.mean(j)).square().sum() /
                         static_cast<double>(n);
            stats.std(j) = std::max(std::sqrt(var), PreprocessStats::kStdFloor);
        }
    }
    return stats;
}

Matrix preprocess_apply(const Matrix& X, const PreprocessStats& stats) {
    if (X.cols() != stats.mean.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "preprocess stats were fitted on " + std::to_string(stats.mean.size()) +
                        " columns, data has " + std::to_string(X.cols()));
    }
    require_finite(X, "preprocess input");
    Matrix out = X;
    out.rowwise() -= stats.mean.transpose();
    out.array().rowwise() /= stats.std.transpose().array();
    return out;
}

} // namespace sef
