// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "coughdwt/eval.hpp"
#include "coughdwt/normalize.hpp"
#include "coughdwt/svm.hpp"
#include "coughdwt/wavelet.hpp"
#include "json.hpp"

namespace coughdwt {

struct ExperimentConfig {
    std::string manifest;
    std::string wavelet = "db4";
    int levels = 5;
    Boundary boundary = Boundary::symmetric;
    double duration_ms = 1640.0;
    bool prenorm_signal = false;
    NormMethod norm = NormMethod::zscore;
    bool paper_mode = false;
    KernelKind kernel = KernelKind::rbf;
    std::optional<double> gamma;  // nullopt: derived from the training matrix
    double c = 1.0;
    std::size_t folds = 10;
    SplitMode split = SplitMode::segment_stratified;
    std::uint64_t seed = 0;
    std::string out = ".";
    std::string model;  // evaluate input; empty means <out>/model.json
    double tolerance = 1e-3;
    int max_passes = 100;
    double positive_weight = 1.0;
    double negative_weight = 1.0;

    TrainConfig train_config() const;
    std::string model_path() const;
};

/// Layers defaults <- file <- overrides. Both arguments are JSON objects using
/// the keys of ConfigToJson(); null means "absent". Throws
/// Error(Stage::pipeline_cli) on unknown keys, bad types, invalid enum values
/// or a missing manifest.
ExperimentConfig ResolveConfig(const nlohmann::json& file, const nlohmann::json& overrides);

/// Range checks (levels >= 1, duration > 0, ...). ResolveConfig calls this.
void ValidateConfig(const ExperimentConfig& config);

nlohmann::json ConfigToJson(const ExperimentConfig& config);

}  // namespace coughdwt
