#include "sef/types.hpp"

#include "sef/error.hpp"

#include <algorithm>

namespace sef {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidData: return "InvalidData";
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidLabels: return "InvalidLabels";
        case ErrorKind::InvalidMask: return "InvalidMask";
        case ErrorKind::MissingModel: return "MissingModel";
        case ErrorKind::DegenerateKernel: return "DegenerateKernel";
        case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
        case ErrorKind::NumericFailure: return "NumericFailure";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::FormatError: return "FormatError";
        case ErrorKind::UsageError: return "UsageError";
    }
    return "Error";
}

bool is_finite(const Matrix& m) {
    return m.allFinite();
}

void require_finite(const Matrix& m, const std::string& what) {
    if (!m.allFinite()) {
        throw Error(ErrorKind::InvalidData, what + " contains non-finite values");
    }
}

int count_classes(const Labels& labels) {
    if (labels.empty()) {
        throw Error(ErrorKind::InvalidLabels, "empty label vector");
    }
    int max_id = *std::max_element(labels.begin(), labels.end());
    int min_id = *std::min_element(labels.begin(), labels.end());
    if (min_id < 0) {
        throw Error(ErrorKind::InvalidLabels, "negative class id");
    }
    std::vector<long> counts(static_cast<size_t>(max_id) + 1, 0);
    for (int c : labels) counts[static_cast<size_t>(c)]++;
    for (size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] == 0) {
            throw Error(ErrorKind::InvalidLabels,
                        "class " + std::to_string(c) + " has no samples");
        }
    }
    return max_id + 1;
}

} // namespace sef
