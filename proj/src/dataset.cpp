#include "sef/dataset.hpp"

#include "sef/error.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace sef {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// One CSV record; handles quoted fields with doubled quotes. Multiline
// quoted fields are not supported.
std::vector<std::string> split_csv_line(const std::string& line, const std::string& path) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    if (quoted) {
        throw Error(ErrorKind::FormatError, path + ": unterminated quote in CSV record");
    }
    fields.push_back(std::move(current));
    return fields;
}

double parse_double(const std::string& field, size_t line_no, const std::string& path) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    while (ptr < end && (*ptr == ' ' || *ptr == '\t')) ++ptr;
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorKind::FormatError, path + ":" + std::to_string(line_no) +
                                                ": cannot parse number '" + field + "'");
    }
    return value;
}

} // namespace

Dataset load_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorKind::FormatError, path + ": empty file, expected a header row");
    }
    const std::vector<std::string> header = split_csv_line(line, path);
    long label_col = -1;
    Dataset ds;
    for (size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "label") {
            if (label_col >= 0) {
                throw Error(ErrorKind::FormatError, path + ": duplicate label column");
            }
            label_col = static_cast<long>(c);
        } else {
            ds.feature_names.push_back(header[c]);
        }
    }
    const size_t n_features = ds.feature_names.size();
    if (n_features == 0) {
        throw Error(ErrorKind::FormatError, path + ": no feature columns");
    }

    std::vector<double> values;
    std::map<std::string, int> label_ids;
    Labels labels;
    size_t n_rows = 0;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(line, path);
        if (fields.size() != header.size()) {
            throw Error(ErrorKind::FormatError,
                        path + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        }
        for (size_t c = 0; c < fields.size(); ++c) {
            if (static_cast<long>(c) == label_col) {
                auto [it, inserted] =
                    label_ids.emplace(fields[c], static_cast<int>(ds.label_names.size()));
                if (inserted) ds.label_names.push_back(fields[c]);
                labels.push_back(it->second);
            } else {
                values.push_back(parse_double(fields[c], line_no, path));
            }
        }
        ++n_rows;
    }
    if (n_rows == 0) {
        throw Error(ErrorKind::FormatError, path + ": no data rows");
    }
    ds.features.resize(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_features));
    for (size_t i = 0; i < n_rows; ++i) {
        for (size_t j = 0; j < n_features; ++j) {
            ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                values[i * n_features + j];
        }
    }
    if (label_col >= 0) ds.labels = std::move(labels);
    return ds;
}

void save_embedding_csv(const std::string& path, const Matrix& Y,
                        const std::optional<Labels>& labels,
                        const std::vector<std::string>& label_names) {
    if (labels && static_cast<Eigen::Index>(labels->size()) != Y.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "label count must match the row count");
    }
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path);
    }
    for (Eigen::Index j = 0; j < Y.cols(); ++j) {
        if (j) out << ',';
        out << "dim_" << j;
    }
    if (labels) out << ",label";
    out << '\n';
    for (Eigen::Index i = 0; i < Y.rows(); ++i) {
        for (Eigen::Index j = 0; j < Y.cols(); ++j) {
            if (j) out << ',';
            out << format_double(Y(i, j));
        }
        if (labels) {
            const int id = (*labels)[static_cast<size_t>(i)];
            out << ',';
            if (static_cast<size_t>(id) < label_names.size()) {
                out << label_names[static_cast<size_t>(id)];
            } else {
                out << id;
            }
        }
        out << '\n';
    }
    if (!out) {
        throw Error(ErrorKind::IoError, "failed while writing " + path);
    }
}

Matrix load_matrix_csv(const std::string& path) {
    const Dataset ds = load_dataset_csv(path);
    return ds.features;
}

} // namespace sef
