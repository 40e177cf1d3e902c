// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include "coughdwt/config.hpp"

#include <filesystem>
#include <set>

#include "coughdwt/error.hpp"

namespace coughdwt {
namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
    throw Error(Stage::pipeline_cli, code, message);
}

const std::set<std::string, std::less<>>& KnownKeys() {
    static const std::set<std::string, std::less<>> keys = {
        "manifest", "wavelet", "levels", "boundary", "duration_ms", "prenorm_signal", "norm",
        "paper_mode", "kernel", "gamma", "c", "folds", "split", "seed", "out", "model",
        "tolerance", "max_passes", "positive_weight", "negative_weight"};
    return keys;
}

void Merge(nlohmann::json& into, const nlohmann::json& layer, std::string_view origin) {
    if (layer.is_null()) return;
    if (!layer.is_object()) Fail(ErrorCode::invalid_argument, std::string(origin) + " must be a JSON object");
    for (const auto& [key, value] : layer.items()) {
        if (!KnownKeys().contains(key))
            Fail(ErrorCode::invalid_argument, "unknown " + std::string(origin) + " key '" + key + "'");
        if (!value.is_null()) into[key] = value;
    }
}

template <typename T>
T Get(const nlohmann::json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        Fail(ErrorCode::invalid_argument, std::string("invalid value for '") + key + "': " + j.at(key).dump());
    }
}

}  // namespace

TrainConfig ExperimentConfig::train_config() const {
    TrainConfig t;
    t.C = c;
    t.tolerance = tolerance;
    t.max_passes = max_passes;
    t.seed = seed;
    t.positive_weight = positive_weight;
    t.negative_weight = negative_weight;
    return t;
}

std::string ExperimentConfig::model_path() const {
    if (!model.empty()) return model;
    return (std::filesystem::path(out) / "model.json").string();
}

void ValidateConfig(const ExperimentConfig& config) {
    if (config.levels < 1) Fail(ErrorCode::invalid_argument, "levels must be ≥ 1");
    if (!(config.duration_ms > 0.0)) Fail(ErrorCode::invalid_argument, "duration_ms must be > 0");
    if (config.folds < 2) Fail(ErrorCode::invalid_argument, "folds must be ≥ 2");
    if (!(config.c > 0.0)) Fail(ErrorCode::invalid_argument, "c must be > 0");
    if (config.gamma && !(*config.gamma > 0.0)) Fail(ErrorCode::invalid_argument, "gamma must be > 0");
    if (!(config.tolerance > 0.0)) Fail(ErrorCode::invalid_argument, "tolerance must be > 0");
    if (config.max_passes < 1) Fail(ErrorCode::invalid_argument, "max_passes must be ≥ 1");
    if (!(config.positive_weight > 0.0) || !(config.negative_weight > 0.0))
        Fail(ErrorCode::invalid_argument, "class weights must be > 0");
    try {
        GetWavelet(config.wavelet);
    } catch (const Error& e) {
        Fail(ErrorCode::invalid_argument, e.message());
    }
    if (config.manifest.empty()) Fail(ErrorCode::invalid_argument, "missing manifest (use --manifest)");
}

nlohmann::json ConfigToJson(const ExperimentConfig& config) {
    nlohmann::json j;
    j["manifest"] = config.manifest;
    j["wavelet"] = config.wavelet;
    j["levels"] = config.levels;
    j["boundary"] = BoundaryName(config.boundary);
    j["duration_ms"] = config.duration_ms;
    j["prenorm_signal"] = config.prenorm_signal;
    j["norm"] = NormMethodName(config.norm);
    j["paper_mode"] = config.paper_mode;
    j["kernel"] = KernelName(config.kernel);
    j["gamma"] = config.gamma ? nlohmann::json(*config.gamma) : nlohmann::json("auto");
    j["c"] = config.c;
    j["folds"] = config.folds;
    j["split"] = SplitModeName(config.split);
    j["seed"] = config.seed;
    j["out"] = config.out;
    j["model"] = config.model;
    j["tolerance"] = config.tolerance;
    j["max_passes"] = config.max_passes;
    j["positive_weight"] = config.positive_weight;
    j["negative_weight"] = config.negative_weight;
    return j;
}

ExperimentConfig ResolveConfig(const nlohmann::json& file, const nlohmann::json& overrides) {
    nlohmann::json merged = ConfigToJson(ExperimentConfig{});
    Merge(merged, file, "config file");
    Merge(merged, overrides, "flag");

    auto parse_enum = [](auto parser, const nlohmann::json& j, const char* key) {
        try {
            return parser(Get<std::string>(j, key));
        } catch (const Error& e) {
            if (e.stage() == Stage::pipeline_cli) throw;
            Fail(ErrorCode::invalid_argument, e.message());
        }
    };

    ExperimentConfig config;
    config.manifest = Get<std::string>(merged, "manifest");
    config.wavelet = Get<std::string>(merged, "wavelet");
    config.levels = Get<int>(merged, "levels");
    config.boundary = parse_enum(ParseBoundary, merged, "boundary");
    config.duration_ms = Get<double>(merged, "duration_ms");
    config.prenorm_signal = Get<bool>(merged, "prenorm_signal");
    config.norm = parse_enum(ParseNormMethod, merged, "norm");
    config.paper_mode = Get<bool>(merged, "paper_mode");
    config.kernel = parse_enum(ParseKernel, merged, "kernel");
    if (merged["gamma"].is_string()) {
        if (merged["gamma"].get<std::string>() != "auto")
            Fail(ErrorCode::invalid_argument, "invalid value for 'gamma': expected a number or \"auto\"");
    } else {
        config.gamma = Get<double>(merged, "gamma");
    }
    config.c = Get<double>(merged, "c");
    const auto folds = Get<long long>(merged, "folds");
    if (folds < 2) Fail(ErrorCode::invalid_argument, "folds must be ≥ 2");
    config.folds = static_cast<std::size_t>(folds);
    config.split = parse_enum(ParseSplitMode, merged, "split");
    config.seed = Get<std::uint64_t>(merged, "seed");
    config.out = Get<std::string>(merged, "out");
    config.model = Get<std::string>(merged, "model");
    config.tolerance = Get<double>(merged, "tolerance");
    config.max_passes = Get<int>(merged, "max_passes");
    config.positive_weight = Get<double>(merged, "positive_weight");
    config.negative_weight = Get<double>(merged, "negative_weight");
    ValidateConfig(config);
    return config;
}

}  // namespace coughdwt
