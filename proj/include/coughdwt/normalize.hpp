// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coughdwt/features.hpp"
#include "json.hpp"

namespace coughdwt {

enum class NormMethod { zscore, minmax, none };

std::string_view NormMethodName(NormMethod method) noexcept;
NormMethod ParseNormMethod(std::string_view name);

/// Per-column scaling state fitted on a set of rows.
///   zscore: z = (x - mean) / sd, sample (n-1) sd
///   minmax: v' = (v - min) / (max - min), no clipping
/// Columns whose fitted values are all equal are flagged constant and map to 0.
struct NormalizationParams {
    NormMethod method = NormMethod::none;
    std::vector<std::string> names;
    std::vector<double> mean;
    std::vector<double> sd;
    std::vector<double> min;
    std::vector<double> max;
    std::vector<bool> constant_flags;

    std::size_t columns() const noexcept { return names.size(); }
    std::vector<std::string> constant_columns() const;
};

NormalizationParams FitNormalizer(NormMethod method, const FeatureMatrix& matrix);
FeatureMatrix ApplyNormalizer(const NormalizationParams& params, const FeatureMatrix& matrix);

/// {method, columns: [{name, m, sd} | {name, min, max} | {name}], constant_flags}
nlohmann::json ParamsToJson(const NormalizationParams& params);
NormalizationParams ParamsFromJson(const nlohmann::json& json);

}  // namespace coughdwt
