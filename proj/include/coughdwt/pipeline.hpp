// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "coughdwt/config.hpp"
#include "coughdwt/dataset_io.hpp"
#include "coughdwt/features.hpp"
#include "coughdwt/normalize.hpp"
#include "coughdwt/svm.hpp"
#include "json.hpp"

namespace coughdwt {

/// Band list and statistic list, embedded in every artifact.
nlohmann::json FeatureSetJson();

struct Dataset {
    DatasetManifest manifest;
    FeatureMatrix matrix;
    unsigned sample_rate = 0;
    std::vector<std::string> warnings;
};

/// Per-segment (x - mean) / sd with sample sd; constant segments become zeros.
std::vector<double> ZScoreSignal(std::span<const double> samples);

/// Manifest -> WAV -> segments -> (optional signal z-score) -> DWT -> features.
Dataset BuildDataset(const ExperimentConfig& config);
Dataset BuildDataset(const ExperimentConfig& config, const DatasetManifest& manifest);

struct FittedModel {
    NormalizationParams params;
    SvmModel model;
};

/// Fits the normalizer (unless `fixed_params` is given) and trains the SVM on
/// `train`. gamma comes from the config, or from the normalized training rows.
FittedModel FitModel(const ExperimentConfig& config, const FeatureMatrix& train,
                     const NormalizationParams* fixed_params = nullptr);

/// Predicted labels for every row after applying the fitted normalizer.
std::vector<Label> PredictRows(const FittedModel& fitted, const FeatureMatrix& rows);

/// Cross-validation report (config echo, per-fold, pooled). No timestamp.
nlohmann::json RunExperiment(const ExperimentConfig& config, const Dataset& dataset);
nlohmann::json RunExperiment(const ExperimentConfig& config);

enum class Command { extract, train, evaluate, cross_validate, dump_coeffs };

std::string_view CommandName(Command command) noexcept;
Command ParseCommand(std::string_view name);

/// Runs one command and writes its artifacts under config.out. Returns the
/// paths written.
///   extract        -> features.csv
///   train          -> model.json, params.json
///   evaluate       -> metrics.json (model from config.model_path())
///   cross-validate -> report.json
///   dump-coeffs    -> coeffs/coeffs_r<row>_s<segment>.csv
std::vector<std::filesystem::path> Execute(const ExperimentConfig& config, Command command);

/// Drops the top-level "timestamp" key; used to compare report bytes.
std::string StripTimestamp(const std::string& report_text);

}  // namespace coughdwt
