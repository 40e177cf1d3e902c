// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coughdwt/dataset_io.hpp"
#include "coughdwt/features.hpp"
#include "json.hpp"

namespace coughdwt {

/// Positive class is COVID19(+).
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
    ConfusionMatrix& operator+=(const ConfusionMatrix& other) noexcept;
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix Confusion(std::span<const Label> truth, std::span<const Label> predicted);

/// Exchanges the roles of the two classes: TP<->TN, FP<->FN.
ConfusionMatrix SwapPolarity(const ConfusionMatrix& cm) noexcept;

/// An exact ratio, or undefined when the denominator is zero.
struct Metric {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 0;

    bool defined() const noexcept { return denominator != 0; }
    std::optional<double> value() const noexcept;
    /// Percentage rounded half-up to one decimal ("99.2"), or "undefined".
    std::string percent() const;
    friend bool operator==(const Metric&, const Metric&) = default;
};

struct MetricsReport {
    Metric acc;
    Metric rec;
    Metric spe;
    Metric pre;
    Metric f1;  // 2TP / (2TP + FP + FN), equal to 2 PRE REC / (PRE + REC); undefined when TP = 0
};

MetricsReport ComputeMetrics(const ConfusionMatrix& cm);

/// "Rec=100.0 Spe=98.6 Acc=99.2 F1=99.0"
std::string FormatSummary(const MetricsReport& report);

nlohmann::json ConfusionToJson(const ConfusionMatrix& cm);
nlohmann::json MetricsToJson(const MetricsReport& report);

enum class SplitMode { segment_stratified, subject_grouped };

std::string_view SplitModeName(SplitMode mode) noexcept;
SplitMode ParseSplitMode(std::string_view name);

struct FoldPlan {
    std::size_t k = 0;
    std::vector<std::size_t> assignments;  // row index -> fold id
    SplitMode mode = SplitMode::segment_stratified;
    std::uint64_t seed = 0;

    std::vector<std::size_t> TrainIndices(std::size_t fold) const;
    std::vector<std::size_t> TestIndices(std::size_t fold) const;
};

FoldPlan MakeFolds(const FeatureMatrix& matrix, std::size_t k, SplitMode mode, std::uint64_t seed);

}  // namespace coughdwt
