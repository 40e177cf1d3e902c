// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include "coughdwt/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "coughdwt/error.hpp"
#include "coughdwt/eval.hpp"
#include "coughdwt/wavelet.hpp"

namespace coughdwt {
namespace {

constexpr const char* kVersion = "1.0.0";

Error Annotate(const Error& e, const std::string& context) {
    return Error(e.stage(), e.code(), context + ": " + e.message());
}

std::string UtcTimestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Stage::pipeline_cli, ErrorCode::io, "cannot write '" + path.string() + "'");
    out << text;
}

std::string ReadText(const std::filesystem::path& path, Stage stage) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(stage, ErrorCode::io, "missing file: cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

nlohmann::json ParseJsonFile(const std::filesystem::path& path, Stage stage) {
    try {
        return nlohmann::json::parse(ReadText(path, stage));
    } catch (const nlohmann::json::exception& e) {
        throw Error(stage, ErrorCode::format, "'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

std::vector<int> Signs(const FeatureMatrix& m) {
    std::vector<int> y;
    y.reserve(m.size());
    for (Label l : m.labels) y.push_back(LabelSign(l));
    return y;
}

std::vector<std::string> Preamble(const ExperimentConfig& config, std::string_view artifact) {
    return {"coughdwt " + std::string(artifact), "config: " + ConfigToJson(config).dump(),
            "feature_set: " + FeatureSetJson().dump()};
}

nlohmann::json DatasetJson(const Dataset& dataset, const ExperimentConfig& config) {
    std::size_t pos = 0;
    std::set<std::string> subjects;
    for (std::size_t i = 0; i < dataset.matrix.size(); ++i) {
        if (dataset.matrix.labels[i] == Label::positive) ++pos;
        subjects.insert(dataset.matrix.sources[i].subject_id);
    }
    return {{"recordings", dataset.manifest.entries.size()},
            {"segments", dataset.matrix.size()},
            {"positive", pos},
            {"negative", dataset.matrix.size() - pos},
            {"subjects", subjects.size()},
            {"sample_rate", dataset.sample_rate},
            {"window_samples", dataset.sample_rate ? WindowLength(dataset.sample_rate, config.duration_ms) : 0},
            {"warnings", dataset.warnings}};
}

}  // namespace

nlohmann::json FeatureSetJson() {
    std::vector<std::string> stats(kStatNames.begin(), kStatNames.end());
    std::vector<std::string> bands(kBandNames.begin(), kBandNames.end());
    return {{"bands", bands},
            {"statistics", stats},
            {"count", kFeatureCount},
            {"conventions",
             {{"sd", "sample (n-1)"},
              {"zc", "strict sign changes, zeros skipped"},
              {"skew_kurt", "population moments; excess kurtosis; 0 when m2 < 1e-24"},
              {"entropy", "Shannon, natural log, p_i = c_i^2 / energy"}}}};
}

std::vector<double> ZScoreSignal(std::span<const double> samples) {
    std::vector<double> out(samples.begin(), samples.end());
    if (out.size() < 2) {
        std::fill(out.begin(), out.end(), 0.0);
        return out;
    }
    double mean = 0.0;
    for (double x : out) mean += x;
    mean /= static_cast<double>(out.size());
    double ss = 0.0;
    for (double x : out) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(out.size() - 1));
    for (double& x : out) x = sd > 0.0 ? (x - mean) / sd : 0.0;
    return out;
}

Dataset BuildDataset(const ExperimentConfig& config) { return BuildDataset(config, LoadManifest(config.manifest)); }

Dataset BuildDataset(const ExperimentConfig& config, const DatasetManifest& manifest) {
    Dataset dataset;
    dataset.manifest = manifest;
    LoadedSegments loaded = LoadSegments(manifest, config.duration_ms);
    dataset.sample_rate = loaded.sample_rate;
    dataset.warnings = std::move(loaded.warnings);
    if (loaded.segments.empty())
        throw Error(Stage::dataset_io, ErrorCode::invalid_argument, "manifest yields no segments");

    const WaveletSpec& spec = GetWavelet(config.wavelet);
    dataset.matrix.names = FeatureNames();
    for (auto& segment : loaded.segments) {
        const auto& entry = manifest.entries[segment.source.entry_index];
        try {
            const std::vector<double> signal =
                config.prenorm_signal ? ZScoreSignal(segment.samples) : std::move(segment.samples);
            const WaveletDecomposition decomposition = DwtDecompose(signal, spec, config.levels, config.boundary);
            dataset.matrix.rows.push_back(ExtractFeatures(decomposition).values);
        } catch (const Error& e) {
            throw Annotate(e, entry.path.filename().string() + " segment " +
                                  std::to_string(segment.source.segment_index));
        }
        dataset.matrix.labels.push_back(segment.label);
        dataset.matrix.sources.push_back(segment.source);
    }
    return dataset;
}

FittedModel FitModel(const ExperimentConfig& config, const FeatureMatrix& train,
                     const NormalizationParams* fixed_params) {
    FittedModel fitted;
    fitted.params = fixed_params ? *fixed_params : FitNormalizer(config.norm, train);
    const FeatureMatrix scaled = ApplyNormalizer(fitted.params, train);
    KernelSpec kernel;
    kernel.kind = config.kernel;
    if (kernel.kind == KernelKind::rbf) kernel.gamma = config.gamma ? *config.gamma : DefaultGamma(scaled.rows);
    fitted.model = TrainSmo(scaled.rows, Signs(scaled), kernel, config.train_config());
    return fitted;
}

std::vector<Label> PredictRows(const FittedModel& fitted, const FeatureMatrix& rows) {
    const FeatureMatrix scaled = ApplyNormalizer(fitted.params, rows);
    std::vector<Label> out;
    out.reserve(scaled.size());
    for (const auto& row : scaled.rows) out.push_back(Predict(fitted.model, row).label);
    return out;
}

nlohmann::json RunExperiment(const ExperimentConfig& config) { return RunExperiment(config, BuildDataset(config)); }

nlohmann::json RunExperiment(const ExperimentConfig& config, const Dataset& dataset) {
    const FeatureMatrix& matrix = dataset.matrix;
    const FoldPlan plan = MakeFolds(matrix, config.folds, config.split, config.seed);

    NormalizationParams global;
    if (config.paper_mode) global = FitNormalizer(config.norm, matrix);

    ConfusionMatrix pooled;
    nlohmann::json folds = nlohmann::json::array();
    for (std::size_t f = 0; f < plan.k; ++f) {
        const auto train_idx = plan.TrainIndices(f);
        const auto test_idx = plan.TestIndices(f);
        const FeatureMatrix train = matrix.Subset(train_idx);
        const FeatureMatrix test = matrix.Subset(test_idx);
        try {
            const FittedModel fitted = FitModel(config, train, config.paper_mode ? &global : nullptr);
            const ConfusionMatrix cm = Confusion(test.labels, PredictRows(fitted, test));
            const ConfusionMatrix train_cm = Confusion(train.labels, PredictRows(fitted, train));
            pooled += cm;
            const MetricsReport metrics = ComputeMetrics(cm);
            std::vector<std::size_t> test_rows(test_idx.begin(), test_idx.end());
            folds.push_back({{"fold", f},
                             {"train_size", train.size()},
                             {"test_size", test.size()},
                             {"test_rows", test_rows},
                             {"confusion", ConfusionToJson(cm)},
                             {"metrics", MetricsToJson(metrics)},
                             {"summary", FormatSummary(metrics)},
                             {"train_confusion", ConfusionToJson(train_cm)},
                             {"train_metrics", MetricsToJson(ComputeMetrics(train_cm))},
                             {"gamma", fitted.model.kernel.kind == KernelKind::rbf
                                           ? nlohmann::json(fitted.model.kernel.gamma)
                                           : nlohmann::json(nullptr)},
                             {"support_vectors", fitted.model.support_vectors.size()},
                             {"solver_iterations", fitted.model.iterations},
                             {"solver_converged", fitted.model.converged},
                             {"constant_columns", fitted.params.constant_columns()}});
        } catch (const Error& e) {
            throw Annotate(e, "fold " + std::to_string(f));
        }
    }

    nlohmann::json warnings = nlohmann::json::array();
    if (config.split == SplitMode::segment_stratified)
        warnings.push_back(
            "leakage: segment_stratified split lets segments of one subject fall in both training and test folds");
    if (config.paper_mode)
        warnings.push_back("leakage: paper-mode fits the normalizer on all segments, test folds included");

    const MetricsReport pooled_metrics = ComputeMetrics(pooled);
    nlohmann::json report;
    report["report"] = "cross-validate";
    report["version"] = kVersion;
    report["config"] = ConfigToJson(config);
    report["feature_set"] = FeatureSetJson();
    report["dataset"] = DatasetJson(dataset, config);
    report["protocol"] = {{"validation", "k-fold cross-validation, pooled confusion over held-out folds"},
                          {"k", plan.k},
                          {"split", SplitModeName(plan.mode)},
                          {"seed", plan.seed},
                          {"normalizer", NormMethodName(config.norm)},
                          {"normalizer_fit", config.paper_mode ? "global (paper-mode, before splitting)"
                                                               : "training folds only"},
                          {"signal_prenorm", config.prenorm_signal},
                          {"warnings", warnings}};
    report["folds"] = std::move(folds);
    report["pooled"] = {{"confusion", ConfusionToJson(pooled)},
                        {"metrics", MetricsToJson(pooled_metrics)},
                        {"summary", FormatSummary(pooled_metrics)}};
    return report;
}

std::string_view CommandName(Command command) noexcept {
    switch (command) {
        case Command::extract: return "extract";
        case Command::train: return "train";
        case Command::evaluate: return "evaluate";
        case Command::cross_validate: return "cross-validate";
        case Command::dump_coeffs: return "dump-coeffs";
    }
    return "unknown";
}

Command ParseCommand(std::string_view name) {
    for (Command c : {Command::extract, Command::train, Command::evaluate, Command::cross_validate,
                      Command::dump_coeffs})
        if (CommandName(c) == name) return c;
    throw Error(Stage::pipeline_cli, ErrorCode::invalid_argument,
                "unknown command '" + std::string(name) +
                    "' (expected extract|train|evaluate|cross-validate|dump-coeffs)");
}

std::vector<std::filesystem::path> Execute(const ExperimentConfig& config, Command command) {
    ValidateConfig(config);
    const std::filesystem::path out_dir(config.out);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(Stage::pipeline_cli, ErrorCode::io, "cannot create '" + out_dir.string() + "': " + ec.message());

    std::vector<std::filesystem::path> written;
    switch (command) {
        case Command::extract: {
            const Dataset dataset = BuildDataset(config);
            std::ostringstream csv;
            WriteFeatureCsv(csv, dataset.matrix, Preamble(config, "features"));
            written.push_back(out_dir / "features.csv");
            WriteText(written.back(), csv.str());
            break;
        }
        case Command::train: {
            const Dataset dataset = BuildDataset(config);
            const FittedModel fitted = FitModel(config, dataset.matrix);
            const ConfusionMatrix cm = Confusion(dataset.matrix.labels, PredictRows(fitted, dataset.matrix));

            nlohmann::json params = ParamsToJson(fitted.params);
            params["config"] = ConfigToJson(config);
            params["feature_set"] = FeatureSetJson();

            nlohmann::json model = ModelToJson(fitted.model);
            model["feature_names"] = dataset.matrix.names;
            model["normalization_params_ref"] = "params.json";
            model["config"] = ConfigToJson(config);
            model["feature_set"] = FeatureSetJson();
            model["sample_rate"] = dataset.sample_rate;
            model["train_confusion"] = ConfusionToJson(cm);
            model["train_metrics"] = MetricsToJson(ComputeMetrics(cm));

            written.push_back(out_dir / "model.json");
            WriteText(written.back(), model.dump(2) + "\n");
            written.push_back(out_dir / "params.json");
            WriteText(written.back(), params.dump(2) + "\n");
            break;
        }
        case Command::evaluate: {
            const std::filesystem::path model_path(config.model_path());
            const nlohmann::json model_json = ParseJsonFile(model_path, Stage::svm);
            FittedModel fitted;
            fitted.model = ModelFromJson(model_json);
            const std::string ref = model_json.value("normalization_params_ref", std::string("params.json"));
            fitted.params = ParamsFromJson(ParseJsonFile(model_path.parent_path() / ref, Stage::normalize));

            const Dataset dataset = BuildDataset(config);
            if (model_json.contains("feature_names") &&
                model_json["feature_names"].get<std::vector<std::string>>() != dataset.matrix.names)
                throw Error(Stage::svm, ErrorCode::invalid_argument, "model feature names do not match the feature set");
            const ConfusionMatrix cm = Confusion(dataset.matrix.labels, PredictRows(fitted, dataset.matrix));
            const MetricsReport metrics = ComputeMetrics(cm);

            nlohmann::json report;
            report["report"] = "evaluate";
            report["version"] = kVersion;
            report["timestamp"] = UtcTimestamp();
            report["config"] = ConfigToJson(config);
            report["feature_set"] = FeatureSetJson();
            report["model"] = model_path.string();
            report["dataset"] = DatasetJson(dataset, config);
            report["confusion"] = ConfusionToJson(cm);
            report["metrics"] = MetricsToJson(metrics);
            report["summary"] = FormatSummary(metrics);
            written.push_back(out_dir / "metrics.json");
            WriteText(written.back(), report.dump(2) + "\n");
            break;
        }
        case Command::cross_validate: {
            nlohmann::json report = RunExperiment(config);
            report["timestamp"] = UtcTimestamp();
            written.push_back(out_dir / "report.json");
            WriteText(written.back(), report.dump(2) + "\n");
            break;
        }
        case Command::dump_coeffs: {
            const DatasetManifest manifest = LoadManifest(config.manifest);
            const LoadedSegments loaded = LoadSegments(manifest, config.duration_ms);
            const WaveletSpec& spec = GetWavelet(config.wavelet);
            const auto dir = out_dir / "coeffs";
            std::filesystem::create_directories(dir, ec);
            for (const auto& segment : loaded.segments) {
                const std::vector<double> signal =
                    config.prenorm_signal ? ZScoreSignal(segment.samples) : segment.samples;
                const auto decomposition = DwtDecompose(signal, spec, config.levels, config.boundary);
                std::ostringstream csv;
                auto preamble = Preamble(config, "coefficients");
                preamble.push_back("source: " + nlohmann::json({{"path", manifest.entries[segment.source.entry_index]
                                                                              .path.string()},
                                                                 {"label", LabelName(segment.label)},
                                                                 {"subject_id", segment.source.subject_id},
                                                                 {"segment_index", segment.source.segment_index}})
                                                    .dump());
                for (const auto& line : preamble) csv << "# " << line << '\n';
                WriteCoefficientsCsv(csv, decomposition);
                written.push_back(dir / ("coeffs_r" + std::to_string(segment.source.entry_index) + "_s" +
                                         std::to_string(segment.source.segment_index) + ".csv"));
                WriteText(written.back(), csv.str());
            }
            break;
        }
    }
    return written;
}

std::string StripTimestamp(const std::string& report_text) {
    std::istringstream in(report_text);
    std::string out, line;
    while (std::getline(in, line)) {
        if (line.find("\"timestamp\":") != std::string::npos) continue;
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace coughdwt
