#pragma once

#include "noisemod/engine.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace noisemod {

/// Malformed or invalid configuration; carries every problem found.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Defaults that depend on the command: the sweep axis and grid, and N_e = 100 for eh.
ExperimentConfig default_config(Experiment kind);

/// Overlays a JSON document on default_config(kind). Unknown keys and type
/// mismatches are collected and thrown together as a ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc, Experiment kind);

/// Reads and parses a config file. Parse errors name the file and position.
ExperimentConfig load_config(const std::filesystem::path& path, Experiment kind);

/// Canonical JSON form of a resolved configuration (sorted keys).
nlohmann::json to_json(const ExperimentConfig& cfg);

/// 64-bit FNV-1a of the canonical JSON bytes, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

} // namespace noisemod
