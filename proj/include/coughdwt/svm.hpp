// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coughdwt/dataset_io.hpp"
#include "json.hpp"

namespace coughdwt {

enum class KernelKind { linear, rbf };

std::string_view KernelName(KernelKind kind) noexcept;
KernelKind ParseKernel(std::string_view name);

struct KernelSpec {
    KernelKind kind = KernelKind::rbf;
    double gamma = 1.0;  // rbf only, > 0
};

/// linear: <x, y>; rbf: exp(-gamma * |x - y|^2).
double KernelEval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

struct TrainConfig {
    double C = 1.0;
    double tolerance = 1e-3;  // stop when the maximal KKT violation gap drops below this
    int max_passes = 100;     // iteration cap = max_passes * n pair updates
    std::uint64_t seed = 0;   // fixes the scan order breaking ties in pair selection
    double positive_weight = 1.0;
    double negative_weight = 1.0;
};

struct SvmModel {
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> dual_coeffs;  // alpha_i * y_i, aligned with support_vectors
    double bias = 0.0;
    KernelSpec kernel;
    double C = 1.0;
    double positive_weight = 1.0;
    double negative_weight = 1.0;

    // Training diagnostics; not needed for prediction.
    std::vector<std::size_t> support_indices;
    std::size_t iterations = 0;
    bool converged = false;
    double dual_objective = 0.0;
};

/// Dual SVM training by sequential minimal optimization with
/// maximal-violating-pair selection. labels are +1 / -1.
SvmModel TrainSmo(const std::vector<std::vector<double>>& rows, std::span<const int> labels,
                  const KernelSpec& kernel, const TrainConfig& config);

struct Prediction {
    Label label = Label::positive;
    double decision = 0.0;
};

/// decision = sum_i dual_coeffs[i] K(sv_i, x) + bias; ties (0) go to positive.
Prediction Predict(const SvmModel& model, std::span<const double> x);

/// 1 / (d * mean column sample variance); 1/d when the variance vanishes.
double DefaultGamma(const std::vector<std::vector<double>>& rows);

/// sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij
double DualObjective(std::span<const double> alpha, std::span<const int> labels,
                     const std::vector<std::vector<double>>& gram);

std::vector<std::vector<double>> GramMatrix(const KernelSpec& kernel, const std::vector<std::vector<double>>& rows);

nlohmann::json ModelToJson(const SvmModel& model);
SvmModel ModelFromJson(const nlohmann::json& json);

}  // namespace coughdwt
