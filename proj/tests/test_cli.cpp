// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "support/synthetic.hpp"

using coughdwt::testing::TempDir;

namespace {

struct Run {
    int exit_code = -1;
    std::string output;  // stdout and stderr
};

Run Cli(const std::string& args) {
    const std::string command = std::string("'") + COUGHDWT_CLI_PATH + "' " + args + " 2>&1";
    Run run;
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) run.output.append(buffer.data(), n);
    const int status = ::pclose(pipe);
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

std::string Quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("CLI: help") {
    const Run run = Cli("--help");
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("cross-validate") != std::string::npos);
    CHECK(run.output.find("--paper-mode") != std::string::npos);
}

TEST_CASE("CLI: cross-validate writes a report") {
    TempDir dir("cli_cv");
    const auto manifest = coughdwt::testing::WriteTwoBandDataset(dir.path() / "data", 6, 6, 8, 3);
    const auto out = dir.path() / "out";
    const Run run = Cli("cross-validate --manifest " + Quote(manifest) + " --folds 3 --out " + Quote(out));
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("report.json") != std::string::npos);
    std::ifstream in(out / "report.json");
    const auto report = nlohmann::json::parse(in);
    CHECK(report["pooled"]["confusion"]["total"] == 12);
    CHECK(report["config"]["folds"] == 3);
}

TEST_CASE("CLI: config file with flag overrides, then train and evaluate") {
    TempDir dir("cli_cfg");
    const auto manifest = coughdwt::testing::WriteTwoBandDataset(dir.path() / "data", 5, 5, 6, 3);
    const auto out = dir.path() / "out";
    std::ofstream(dir.path() / "c.json") << nlohmann::json{{"manifest", manifest.string()}, {"norm", "minmax"},
                                                           {"out", out.string()}, {"tolerance", 1e-4}}.dump();
    CHECK(Cli("train --config " + Quote(dir.path() / "c.json") + " --kernel linear").exit_code == 0);
    std::ifstream model_in(out / "model.json");
    const auto model = nlohmann::json::parse(model_in);
    CHECK(model["kernel"] == "linear");
    CHECK(model["config"]["norm"] == "minmax");
    const Run eval = Cli("evaluate --config " + Quote(dir.path() / "c.json"));
    CHECK(eval.exit_code == 0);
    CHECK(std::filesystem::exists(out / "metrics.json"));
}

TEST_CASE("CLI: errors exit nonzero and name the stage") {
    TempDir dir("cli_err");
    const Run missing = Cli("cross-validate --manifest " + Quote(dir.path() / "none.csv") + " --out " +
                            Quote(dir.path()));
    CHECK(missing.exit_code != 0);
    CHECK(missing.output.find("dataset_io") != std::string::npos);

    const Run levels = Cli("train --manifest m.csv --levels 0");
    CHECK(levels.exit_code != 0);
    CHECK(levels.output.find("levels must be ≥ 1") != std::string::npos);

    const Run usage = Cli("train --bogus");
    CHECK(usage.exit_code == 64);
    const Run command = Cli("fit --manifest m.csv");
    CHECK(command.exit_code != 0);
    CHECK(command.output.find("unknown command") != std::string::npos);
}
