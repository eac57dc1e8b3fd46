#pragma once

#include "sef/types.hpp"

namespace sef {

enum class PreprocessMode { ZNormalize, CenterOnly };

// Per-column statistics fitted on the training set and reused on new data.
// Standard deviations are clamped at kStdFloor so constant columns map to
// zero instead of NaN.
struct PreprocessStats {
    PreprocessMode mode = PreprocessMode::ZNormalize;
    Vector mean;
    Vector std; // all ones in CenterOnly mode

    static constexpr double kStdFloor = 1e-12;
};

PreprocessStats preprocess_fit(const Matrix& X, PreprocessMode mode);

Matrix preprocess_apply(const Matrix& X, const PreprocessStats& stats);

} // namespace sef
