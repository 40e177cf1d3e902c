// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "coughdwt/coughdwt.h"
#include "coughdwt/error.hpp"
#include "coughdwt/eval.hpp"
#include "coughdwt/features.hpp"
#include "coughdwt/pipeline.hpp"
#include "coughdwt/wavelet.hpp"

struct cdwt_config {
    coughdwt::ExperimentConfig value;
};

struct cdwt_decomposition {
    coughdwt::WaveletDecomposition value;
};

struct cdwt_model {
    coughdwt::FittedModel value;
};

namespace {

thread_local std::string g_error_message;
thread_local std::string g_error_stage;

cdwt_status MapCode(coughdwt::ErrorCode code) {
    switch (code) {
        case coughdwt::ErrorCode::invalid_argument: return CDWT_ERR_INVALID_ARGUMENT;
        case coughdwt::ErrorCode::io: return CDWT_ERR_IO;
        case coughdwt::ErrorCode::format: return CDWT_ERR_FORMAT;
        case coughdwt::ErrorCode::numeric: return CDWT_ERR_NUMERIC;
        case coughdwt::ErrorCode::state: return CDWT_ERR_STATE;
    }
    return CDWT_ERR_INTERNAL;
}

cdwt_status SetError(cdwt_status status, std::string stage, std::string message) {
    g_error_stage = std::move(stage);
    g_error_message = std::move(message);
    return status;
}

template <typename Fn>
cdwt_status Guard(Fn&& fn) {
    try {
        fn();
        return CDWT_OK;
    } catch (const coughdwt::Error& e) {
        return SetError(MapCode(e.code()), std::string(coughdwt::StageName(e.stage())), e.message());
    } catch (const std::bad_alloc&) {
        return SetError(CDWT_ERR_INTERNAL, "", "out of memory");
    } catch (const std::exception& e) {
        return SetError(CDWT_ERR_INTERNAL, "", e.what());
    } catch (...) {
        return SetError(CDWT_ERR_INTERNAL, "", "unknown exception");
    }
}

cdwt_status NullArgument(const char* name) {
    return SetError(CDWT_ERR_INVALID_ARGUMENT, "", std::string(name) + " must not be NULL");
}

char* CopyString(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

nlohmann::json ParseOptional(const char* text, const char* what) {
    if (text == nullptr || *text == '\0') return nullptr;
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw coughdwt::Error(coughdwt::Stage::pipeline_cli, coughdwt::ErrorCode::format,
                              std::string(what) + " is not valid JSON: " + e.what());
    }
}

void FillMetric(const coughdwt::Metric& m, cdwt_metric& out) {
    out.numerator = m.numerator;
    out.denominator = m.denominator;
    out.defined = m.defined() ? 1 : 0;
    out.value = m.defined() ? *m.value() : std::numeric_limits<double>::quiet_NaN();
    const std::string p = m.percent();
    std::snprintf(out.percent, sizeof out.percent, "%s", p.c_str());
}

}  // namespace

extern "C" {

const char* cdwt_version(void) { return "1.0.0"; }

const char* cdwt_status_name(cdwt_status status) {
    switch (status) {
        case CDWT_OK: return "ok";
        case CDWT_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case CDWT_ERR_IO: return "io";
        case CDWT_ERR_FORMAT: return "format";
        case CDWT_ERR_NUMERIC: return "numeric";
        case CDWT_ERR_STATE: return "state";
        case CDWT_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* cdwt_last_error_message(void) { return g_error_message.c_str(); }
const char* cdwt_last_error_stage(void) { return g_error_stage.c_str(); }

void cdwt_string_free(char* text) { delete[] text; }

cdwt_status cdwt_config_resolve(const char* file_json, const char* overrides_json, cdwt_config** out) {
    if (out == nullptr) return NullArgument("out");
    *out = nullptr;
    return Guard([&] {
        const auto file = ParseOptional(file_json, "config file");
        const auto overrides = ParseOptional(overrides_json, "overrides");
        *out = new cdwt_config{coughdwt::ResolveConfig(file, overrides)};
    });
}

cdwt_status cdwt_config_to_json(const cdwt_config* config, char** out_json) {
    if (config == nullptr) return NullArgument("config");
    if (out_json == nullptr) return NullArgument("out_json");
    return Guard([&] { *out_json = CopyString(coughdwt::ConfigToJson(config->value).dump(2)); });
}

void cdwt_config_free(cdwt_config* config) { delete config; }

cdwt_status cdwt_execute(const cdwt_config* config, const char* command, char** out_paths_json) {
    if (config == nullptr) return NullArgument("config");
    if (command == nullptr) return NullArgument("command");
    return Guard([&] {
        const auto written = coughdwt::Execute(config->value, coughdwt::ParseCommand(command));
        if (out_paths_json != nullptr) {
            nlohmann::json paths = nlohmann::json::array();
            for (const auto& p : written) paths.push_back(p.string());
            *out_paths_json = CopyString(paths.dump());
        }
    });
}

cdwt_status cdwt_cross_validate(const cdwt_config* config, char** out_report_json) {
    if (config == nullptr) return NullArgument("config");
    if (out_report_json == nullptr) return NullArgument("out_report_json");
    return Guard([&] { *out_report_json = CopyString(coughdwt::RunExperiment(config->value).dump(2) + "\n"); });
}

cdwt_status cdwt_compute_metrics(const cdwt_confusion* confusion, cdwt_metrics* out) {
    if (confusion == nullptr) return NullArgument("confusion");
    if (out == nullptr) return NullArgument("out");
    return Guard([&] {
        const coughdwt::ConfusionMatrix cm{confusion->tp, confusion->fp, confusion->tn, confusion->fn};
        const auto report = coughdwt::ComputeMetrics(cm);
        FillMetric(report.acc, out->acc);
        FillMetric(report.rec, out->rec);
        FillMetric(report.spe, out->spe);
        FillMetric(report.pre, out->pre);
        FillMetric(report.f1, out->f1);
    });
}

cdwt_status cdwt_format_summary(const cdwt_confusion* confusion, char* buffer, size_t capacity) {
    if (confusion == nullptr) return NullArgument("confusion");
    if (buffer == nullptr) return NullArgument("buffer");
    return Guard([&] {
        const coughdwt::ConfusionMatrix cm{confusion->tp, confusion->fp, confusion->tn, confusion->fn};
        const std::string text = coughdwt::FormatSummary(coughdwt::ComputeMetrics(cm));
        if (text.size() + 1 > capacity)
            throw coughdwt::Error(coughdwt::Stage::eval, coughdwt::ErrorCode::invalid_argument,
                                  "buffer too small: need " + std::to_string(text.size() + 1) + " bytes");
        std::memcpy(buffer, text.c_str(), text.size() + 1);
    });
}

cdwt_status cdwt_dwt_decompose(const double* signal, size_t length, const char* wavelet, int levels,
                               const char* boundary, cdwt_decomposition** out) {
    if (out == nullptr) return NullArgument("out");
    *out = nullptr;
    if (signal == nullptr && length > 0) return NullArgument("signal");
    if (wavelet == nullptr) return NullArgument("wavelet");
    return Guard([&] {
        const auto mode = boundary ? coughdwt::ParseBoundary(boundary) : coughdwt::Boundary::symmetric;
        auto value = coughdwt::DwtDecompose(std::span<const double>(signal, length), coughdwt::GetWavelet(wavelet),
                                            levels, mode);
        *out = new cdwt_decomposition{std::move(value)};
    });
}

size_t cdwt_decomposition_band_count(const cdwt_decomposition* decomposition) {
    return decomposition ? decomposition->value.bands.size() : 0;
}

cdwt_status cdwt_decomposition_band(const cdwt_decomposition* decomposition, size_t band, const double** data,
                                    size_t* length) {
    if (decomposition == nullptr) return NullArgument("decomposition");
    if (data == nullptr || length == nullptr) return NullArgument("data/length");
    if (band >= decomposition->value.bands.size())
        return SetError(CDWT_ERR_INVALID_ARGUMENT, "wavelet", "band index out of range");
    *data = decomposition->value.bands[band].data();
    *length = decomposition->value.bands[band].size();
    return CDWT_OK;
}

cdwt_status cdwt_idwt_reconstruct(const cdwt_decomposition* decomposition, double* out, size_t capacity,
                                  size_t* written) {
    if (decomposition == nullptr) return NullArgument("decomposition");
    if (out == nullptr) return NullArgument("out");
    return Guard([&] {
        const auto signal = coughdwt::IdwtReconstruct(decomposition->value);
        if (signal.size() > capacity)
            throw coughdwt::Error(coughdwt::Stage::wavelet, coughdwt::ErrorCode::invalid_argument,
                                  "output buffer too small: need " + std::to_string(signal.size()));
        std::copy(signal.begin(), signal.end(), out);
        if (written) *written = signal.size();
    });
}

void cdwt_decomposition_free(cdwt_decomposition* decomposition) { delete decomposition; }

size_t cdwt_feature_count(void) { return coughdwt::kFeatureCount; }

const char* cdwt_feature_name(size_t index) {
    const auto& names = coughdwt::FeatureNames();
    return index < names.size() ? names[index].c_str() : nullptr;
}

cdwt_status cdwt_extract_features(const cdwt_decomposition* decomposition, double* out, size_t capacity) {
    if (decomposition == nullptr) return NullArgument("decomposition");
    if (out == nullptr) return NullArgument("out");
    if (capacity < coughdwt::kFeatureCount)
        return SetError(CDWT_ERR_INVALID_ARGUMENT, "features", "output buffer smaller than the feature count");
    return Guard([&] {
        const auto fv = coughdwt::ExtractFeatures(decomposition->value);
        std::copy(fv.values.begin(), fv.values.end(), out);
    });
}

cdwt_status cdwt_model_load(const char* model_path, cdwt_model** out) {
    if (out == nullptr) return NullArgument("out");
    *out = nullptr;
    if (model_path == nullptr) return NullArgument("model_path");
    return Guard([&] {
        auto read_json = [](const std::filesystem::path& p, coughdwt::Stage stage) {
            std::ifstream in(p, std::ios::binary);
            if (!in)
                throw coughdwt::Error(stage, coughdwt::ErrorCode::io, "missing file: cannot open '" + p.string() + "'");
            try {
                return nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw coughdwt::Error(stage, coughdwt::ErrorCode::format, p.string() + ": " + e.what());
            }
        };
        const std::filesystem::path path(model_path);
        const auto model_json = read_json(path, coughdwt::Stage::svm);
        coughdwt::FittedModel fitted;
        fitted.model = coughdwt::ModelFromJson(model_json);
        const auto ref = model_json.value("normalization_params_ref", std::string("params.json"));
        fitted.params = coughdwt::ParamsFromJson(read_json(path.parent_path() / ref, coughdwt::Stage::normalize));
        *out = new cdwt_model{std::move(fitted)};
    });
}

cdwt_status cdwt_model_predict(const cdwt_model* model, const double* features, size_t length, int* is_positive,
                               double* decision) {
    if (model == nullptr) return NullArgument("model");
    if (features == nullptr) return NullArgument("features");
    return Guard([&] {
        coughdwt::FeatureMatrix one;
        one.names = model->value.params.names;
        one.rows.emplace_back(features, features + length);
        one.labels.push_back(coughdwt::Label::negative);
        one.sources.emplace_back();
        const auto scaled = coughdwt::ApplyNormalizer(model->value.params, one);
        const auto p = coughdwt::Predict(model->value.model, scaled.rows[0]);
        if (is_positive) *is_positive = p.label == coughdwt::Label::positive ? 1 : 0;
        if (decision) *decision = p.decision;
    });
}

void cdwt_model_free(cdwt_model* model) { delete model; }

}  // extern "C"
