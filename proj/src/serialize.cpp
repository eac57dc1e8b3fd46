#include "sef/serialize.hpp"

#include "sef/error.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstring>
#include <fstream>

namespace sef {

namespace {

using nlohmann::json;

constexpr char kTargetMagic[8] = {'S', 'E', 'F', 'T', 'A', 'R', 'G', '1'};
constexpr char kModelMagic[8] = {'S', 'E', 'F', 'M', 'O', 'D', 'L', '1'};

void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t read_u64(std::istream& in, const std::string& path) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw Error(ErrorKind::FormatError, path + ": truncated file");
    return v;
}

// Row-major float64 payloads, independent of Eigen's storage order.
void write_matrix(std::ostream& out, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            out.write(reinterpret_cast<const char*>(&v), sizeof(v));
        }
    }
}

Matrix read_matrix(std::istream& in, Eigen::Index rows, Eigen::Index cols,
                   const std::string& path) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            double v = 0.0;
            in.read(reinterpret_cast<char*>(&v), sizeof(v));
            m(i, j) = v;
        }
    }
    if (!in) throw Error(ErrorKind::FormatError, path + ": truncated matrix payload");
    return m;
}

void write_json_block(std::ostream& out, const json& doc) {
    const std::string text = doc.dump();
    write_u64(out, text.size());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

json read_json_block(std::istream& in, const std::string& path) {
    const std::uint64_t len = read_u64(in, path);
    if (len > (1u << 20)) throw Error(ErrorKind::FormatError, path + ": oversized header");
    std::string text(len, '\0');
    in.read(text.data(), static_cast<std::streamsize>(len));
    if (!in) throw Error(ErrorKind::FormatError, path + ": truncated header");
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw Error(ErrorKind::FormatError, path + ": bad header JSON");
    return doc;
}

void check_magic(std::istream& in, const char (&magic)[8], const std::string& path) {
    char buf[8] = {};
    in.read(buf, 8);
    if (!in || std::memcmp(buf, magic, 8) != 0) {
        throw Error(ErrorKind::FormatError, path + ": not a recognized file (bad magic)");
    }
}

std::string kernel_kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::Rbf: return "rbf";
        case KernelKind::Linear: return "linear";
        case KernelKind::Polynomial: return "poly";
    }
    return "rbf";
}

KernelKind kernel_kind_from(const std::string& name, const std::string& path) {
    if (name == "rbf") return KernelKind::Rbf;
    if (name == "linear") return KernelKind::Linear;
    if (name == "poly") return KernelKind::Polynomial;
    throw Error(ErrorKind::FormatError, path + ": unknown kernel kind '" + name + "'");
}

} // namespace

void save_target(const std::string& path, const TargetFile& target) {
    target.pair.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    out.write(kTargetMagic, 8);
    json header;
    header["version"] = 1;
    header["n"] = target.pair.T.rows();
    header["meta"] = target.metadata;
    write_json_block(out, header);
    write_matrix(out, target.pair.T);
    write_matrix(out, target.pair.M);
    if (!out) throw Error(ErrorKind::IoError, "failed while writing " + path);
}

TargetFile load_target(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
    check_magic(in, kTargetMagic, path);
    const json header = read_json_block(in, path);
    if (!header.contains("version") || header["version"].get<int>() != 1) {
        throw Error(ErrorKind::FormatError, path + ": unsupported target file version");
    }
    const auto n = header.at("n").get<Eigen::Index>();
    TargetFile target;
    if (header.contains("meta")) {
        target.metadata = header["meta"].get<std::map<std::string, std::string>>();
    }
    target.pair.T = read_matrix(in, n, n, path);
    target.pair.M = read_matrix(in, n, n, path);
    target.pair.validate();
    return target;
}

void save_model(const std::string& path, const ProjectionModel& model,
                const std::map<std::string, std::string>& config_echo) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    out.write(kModelMagic, 8);
    json header;
    header["version"] = 1;
    header["mode"] = model.mode == ProjectionMode::Linear ? "linear" : "kernel";
    header["dims"] = model.dims;
    header["input_dims"] = model.stats.mean.size();
    header["sigma_p"] = model.sigma_p;
    header["preprocess"] =
        model.stats.mode == PreprocessMode::ZNormalize ? "z-normalize" : "center-only";
    if (model.mode == ProjectionMode::Kernel) {
        header["kernel"] = {{"kind", kernel_kind_name(model.kernel.kind)},
                            {"gamma", model.kernel.gamma},
                            {"degree", model.kernel.degree},
                            {"coef", model.kernel.coef}};
        header["n_train"] = model.X_train.rows();
    }
    header["config"] = config_echo;
    write_json_block(out, header);
    write_matrix(out, model.stats.mean);
    write_matrix(out, model.stats.std);
    if (model.mode == ProjectionMode::Linear) {
        write_matrix(out, model.W);
    } else {
        write_matrix(out, model.A);
        write_matrix(out, model.X_train);
    }
    if (!out) throw Error(ErrorKind::IoError, "failed while writing " + path);
}

ProjectionModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
    check_magic(in, kModelMagic, path);
    const json header = read_json_block(in, path);
    if (!header.contains("version") || header["version"].get<int>() != 1) {
        throw Error(ErrorKind::FormatError, path + ": unsupported model file version");
    }
    ProjectionModel model;
    const std::string mode = header.at("mode").get<std::string>();
    if (mode == "linear") {
        model.mode = ProjectionMode::Linear;
    } else if (mode == "kernel") {
        model.mode = ProjectionMode::Kernel;
    } else {
        throw Error(ErrorKind::FormatError, path + ": unknown mode '" + mode + "'");
    }
    model.dims = header.at("dims").get<int>();
    model.sigma_p = header.at("sigma_p").get<double>();
    const auto d = header.at("input_dims").get<Eigen::Index>();
    model.stats.mode = header.at("preprocess").get<std::string>() == "z-normalize"
                           ? PreprocessMode::ZNormalize
                           : PreprocessMode::CenterOnly;
    model.stats.mean = read_matrix(in, d, 1, path);
    model.stats.std = read_matrix(in, d, 1, path);
    if (model.mode == ProjectionMode::Linear) {
        model.W = read_matrix(in, d, model.dims, path);
    } else {
        const auto& k = header.at("kernel");
        model.kernel.kind = kernel_kind_from(k.at("kind").get<std::string>(), path);
        model.kernel.gamma = k.at("gamma").get<double>();
        model.kernel.degree = k.at("degree").get<int>();
        model.kernel.coef = k.at("coef").get<double>();
        const auto n_train = header.at("n_train").get<Eigen::Index>();
        model.A = read_matrix(in, n_train, model.dims, path);
        model.X_train = read_matrix(in, n_train, d, path);
    }
    return model;
}

} // namespace sef
