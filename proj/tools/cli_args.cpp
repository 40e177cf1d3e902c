// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include "cli_args.hpp"

#include <algorithm>
#include <cstdint>

#include "CLI11.hpp"

namespace coughdwt::cli {

ParsedArgs ParseArgs(const std::vector<std::string>& argv) {
    CLI::App app{"coughdwt: wavelet features + SVM classification of cough segments", "coughdwt"};
    app.set_help_flag();
    bool help = false;
    app.add_flag("-h,--help", help, "Print this help");

    std::string command;
    app.add_option("command", command, "extract | train | evaluate | cross-validate | dump-coeffs");

    std::string config_file, manifest, wavelet, boundary, norm, kernel, gamma, split, out, model;
    int levels = 0, folds = 0;
    double duration_ms = 0, c = 0;
    std::uint64_t seed = 0;
    bool prenorm = false, paper_mode = false;

    auto* o_config = app.add_option("--config", config_file, "JSON config file (flags override it)");
    auto* o_manifest = app.add_option("--manifest", manifest, "CSV manifest: path,label,subject_id");
    auto* o_wavelet = app.add_option("--wavelet", wavelet, "Mother wavelet (haar, db2..db10; default db4)");
    auto* o_levels = app.add_option("--levels", levels, "Decomposition depth (default 5)");
    auto* o_boundary = app.add_option("--boundary", boundary, "symmetric | periodic");
    auto* o_duration = app.add_option("--duration-ms", duration_ms, "Segment duration in ms (default 1640)");
    auto* o_prenorm = app.add_flag("--prenorm-signal", prenorm, "z-score each segment before the DWT");
    auto* o_norm = app.add_option("--norm", norm, "zscore | minmax | none");
    auto* o_paper = app.add_flag("--paper-mode", paper_mode, "Fit the normalizer on all segments before splitting");
    auto* o_kernel = app.add_option("--kernel", kernel, "rbf | linear");
    auto* o_gamma = app.add_option("--gamma", gamma, "RBF gamma, or 'auto'");
    auto* o_c = app.add_option("--c", c, "SVM box constraint C (default 1)");
    auto* o_folds = app.add_option("--folds", folds, "Cross-validation folds (default 10)");
    auto* o_split = app.add_option("--split", split, "segment_stratified | subject_grouped");
    auto* o_seed = app.add_option("--seed", seed, "Seed for every random choice (default 0)");
    auto* o_out = app.add_option("--out", out, "Output directory (default .)");
    auto* o_model = app.add_option("--model", model, "Model JSON for evaluate (default <out>/model.json)");

    std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    ParsedArgs parsed;
    parsed.help = help;
    parsed.help_text = app.help();
    parsed.command = command;
    if (help) return parsed;
    if (command.empty()) throw UsageError("missing command (extract | train | evaluate | cross-validate | dump-coeffs)");
    if (o_config->count()) parsed.config_file = config_file;

    auto& j = parsed.overrides;
    if (o_manifest->count()) j["manifest"] = manifest;
    if (o_wavelet->count()) j["wavelet"] = wavelet;
    if (o_levels->count()) j["levels"] = levels;
    if (o_boundary->count()) j["boundary"] = boundary;
    if (o_duration->count()) j["duration_ms"] = duration_ms;
    if (o_prenorm->count()) j["prenorm_signal"] = prenorm;
    if (o_norm->count()) j["norm"] = norm;
    if (o_paper->count()) j["paper_mode"] = paper_mode;
    if (o_kernel->count()) j["kernel"] = kernel;
    if (o_gamma->count()) {
        if (gamma == "auto") {
            j["gamma"] = "auto";
        } else {
            try {
                std::size_t used = 0;
                const double g = std::stod(gamma, &used);
                if (used != gamma.size()) throw std::invalid_argument(gamma);
                j["gamma"] = g;
            } catch (const std::exception&) {
                throw UsageError("--gamma: expected a number or 'auto', got '" + gamma + "'");
            }
        }
    }
    if (o_c->count()) j["c"] = c;
    if (o_folds->count()) j["folds"] = folds;
    if (o_split->count()) j["split"] = split;
    if (o_seed->count()) j["seed"] = seed;
    if (o_out->count()) j["out"] = out;
    if (o_model->count()) j["model"] = model;
    return parsed;
}

}  // namespace coughdwt::cli
