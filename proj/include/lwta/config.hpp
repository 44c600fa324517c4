#pragma once

// Declarative run configuration (JSON). Validation collects every error and
// rejects unknown keys; each message starts with the offending key path.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lwta/attacks.hpp"
#include "lwta/model.hpp"
#include "lwta/train.hpp"

namespace lwta {

struct DataConfig {
    std::string dataset = "mnist";  // mnist | cifar10 | blobs
    std::string dir;                // empty: LWTA_DATA_DIR or "data"
    std::size_t train_limit = 0;    // 0 keeps every example
    std::size_t test_limit = 0;
};

struct RunConfig {
    std::string preset;
    ModelSpec model;
    TrainConfig train;
    std::vector<AttackConfig> attacks;
    DataConfig data;
    std::uint64_t seed = 0;
    std::string output_dir = "runs/default";
};

struct ValidationResult {
    std::optional<RunConfig> config;
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
};

ValidationResult config_validate(const std::string& text);

/// A complete, valid configuration for a named preset over a small MLP.
std::string preset_config_json(const std::string& preset);

struct DatasetPair {
    Dataset train;
    Dataset test;
};

/// Loads the datasets named by the config (MNIST IDX, CIFAR-10 binary, or
/// synthetic blobs drawn from `seed`).
DatasetPair load_datasets(const DataConfig& data, std::uint64_t seed);

}  // namespace lwta
