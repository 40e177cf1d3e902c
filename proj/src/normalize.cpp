// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include "coughdwt/normalize.hpp"

#include <cmath>

#include "coughdwt/error.hpp"

namespace coughdwt {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
    throw Error(Stage::normalize, code, message);
}

}  // namespace

std::string_view NormMethodName(NormMethod method) noexcept {
    switch (method) {
        case NormMethod::zscore: return "zscore";
        case NormMethod::minmax: return "minmax";
        case NormMethod::none: return "none";
    }
    return "none";
}

NormMethod ParseNormMethod(std::string_view name) {
    if (name == "zscore") return NormMethod::zscore;
    if (name == "minmax") return NormMethod::minmax;
    if (name == "none") return NormMethod::none;
    Fail(ErrorCode::invalid_argument, "unknown normalizer '" + std::string(name) + "' (expected zscore|minmax|none)");
}

std::vector<std::string> NormalizationParams::constant_columns() const {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < constant_flags.size(); ++j)
        if (constant_flags[j]) out.push_back(names[j]);
    return out;
}

NormalizationParams FitNormalizer(NormMethod method, const FeatureMatrix& matrix) {
    if (matrix.rows.empty()) Fail(ErrorCode::invalid_argument, "cannot fit on an empty matrix");
    CheckMatrix(matrix);
    const std::size_t cols = matrix.columns();
    const auto n = static_cast<double>(matrix.size());

    NormalizationParams params;
    params.method = method;
    params.names = matrix.names;
    params.constant_flags.assign(cols, false);
    if (method == NormMethod::none) return params;

    std::vector<double> lo(cols), hi(cols), mean(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) lo[j] = hi[j] = matrix.rows[0][j];
    for (const auto& row : matrix.rows) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (!std::isfinite(row[j])) Fail(ErrorCode::numeric, "non-finite value in column " + matrix.names[j]);
            lo[j] = std::min(lo[j], row[j]);
            hi[j] = std::max(hi[j], row[j]);
            mean[j] += row[j];
        }
    }
    for (std::size_t j = 0; j < cols; ++j) {
        mean[j] /= n;
        params.constant_flags[j] = (lo[j] == hi[j]);
    }

    if (method == NormMethod::minmax) {
        params.min = std::move(lo);
        params.max = std::move(hi);
        return params;
    }

    std::vector<double> sd(cols, 0.0);
    for (const auto& row : matrix.rows)
        for (std::size_t j = 0; j < cols; ++j) {
            const double d = row[j] - mean[j];
            sd[j] += d * d;
        }
    for (std::size_t j = 0; j < cols; ++j) {
        sd[j] = (matrix.size() > 1 && !params.constant_flags[j]) ? std::sqrt(sd[j] / (n - 1.0)) : 0.0;
        if (params.constant_flags[j]) mean[j] = lo[j];
        if (sd[j] == 0.0) params.constant_flags[j] = true;
    }
    params.mean = std::move(mean);
    params.sd = std::move(sd);
    return params;
}

FeatureMatrix ApplyNormalizer(const NormalizationParams& params, const FeatureMatrix& matrix) {
    CheckMatrix(matrix);
    if (matrix.columns() != params.columns())
        Fail(ErrorCode::invalid_argument, "column-count mismatch: params have " + std::to_string(params.columns()) +
                                              " columns, matrix has " + std::to_string(matrix.columns()));
    FeatureMatrix out = matrix;
    if (params.method == NormMethod::none) return out;

    for (auto& row : out.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (params.constant_flags[j]) {
                row[j] = 0.0;
            } else if (params.method == NormMethod::zscore) {
                row[j] = (row[j] - params.mean[j]) / params.sd[j];
            } else {
                row[j] = (row[j] - params.min[j]) / (params.max[j] - params.min[j]);
            }
        }
    }
    return out;
}

nlohmann::json ParamsToJson(const NormalizationParams& params) {
    nlohmann::json columns = nlohmann::json::array();
    for (std::size_t j = 0; j < params.columns(); ++j) {
        nlohmann::json col = {{"name", params.names[j]}};
        if (params.method == NormMethod::zscore) {
            col["m"] = params.mean[j];
            col["sd"] = params.sd[j];
        } else if (params.method == NormMethod::minmax) {
            col["min"] = params.min[j];
            col["max"] = params.max[j];
        }
        columns.push_back(std::move(col));
    }
    nlohmann::json flags = nlohmann::json::array();
    for (bool f : params.constant_flags) flags.push_back(f);
    return {{"method", NormMethodName(params.method)}, {"columns", std::move(columns)}, {"constant_flags", flags}};
}

NormalizationParams ParamsFromJson(const nlohmann::json& json) {
    try {
        NormalizationParams params;
        params.method = ParseNormMethod(json.at("method").get<std::string>());
        const auto& columns = json.at("columns");
        const auto& flags = json.at("constant_flags");
        if (flags.size() != columns.size()) Fail(ErrorCode::format, "constant_flags length != columns length");
        for (std::size_t j = 0; j < columns.size(); ++j) {
            const auto& col = columns[j];
            params.names.push_back(col.at("name").get<std::string>());
            if (params.method == NormMethod::zscore) {
                params.mean.push_back(col.at("m").get<double>());
                params.sd.push_back(col.at("sd").get<double>());
            } else if (params.method == NormMethod::minmax) {
                params.min.push_back(col.at("min").get<double>());
                params.max.push_back(col.at("max").get<double>());
            }
            params.constant_flags.push_back(flags[j].get<bool>());
        }
        return params;
    } catch (const nlohmann::json::exception& e) {
        Fail(ErrorCode::format, std::string("malformed normalization params: ") + e.what());
    }
}

}  // namespace coughdwt
