#pragma once

#include "sef/targets.hpp"
#include "sef/trainer.hpp"

#include <map>
#include <string>

namespace sef {

// Binary target file: magic "SEFTARG1", a JSON metadata line, then the
// dense T and M matrices as little-endian float64. Layout is documented in
// docs/file-formats.md.
struct TargetFile {
    TargetPair pair;
    std::map<std::string, std::string> metadata; // kind, params, sigma used
};

void save_target(const std::string& path, const TargetFile& target);
TargetFile load_target(const std::string& path);

// Binary model file: magic "SEFMODL1", JSON header (mode, sizes, kernel
// spec, preprocessing mode, sigma_p, config echo), then the raw parameter
// blobs. Kernel models embed their preprocessed training data so the file
// is self-contained. Save -> load -> transform is bit-identical.
void save_model(const std::string& path, const ProjectionModel& model,
                const std::map<std::string, std::string>& config_echo = {});
ProjectionModel load_model(const std::string& path);

} // namespace sef
