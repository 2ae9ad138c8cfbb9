#pragma once

#include <filesystem>
#include <string>

#include "vlcpos/harness.hpp"
#include "vlcpos/scene.hpp"

namespace vlcpos {

/// Thrown for malformed configuration files: bad JSON, unknown keys, wrong
/// types or values that fail validation.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);

/// Relative file references (led.model_file, experiment.ir_cache) resolve
/// against base_dir.
ExperimentConfig experiment_from_json(const std::string& text,
                                      const std::filesystem::path& base_dir = {});
std::string experiment_to_json(const ExperimentConfig& cfg);

ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace vlcpos
