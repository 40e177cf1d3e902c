// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_args.hpp"
#include "coughdwt/coughdwt.h"

namespace {

int Fail(cdwt_status status) {
    const std::string stage = cdwt_last_error_stage();
    std::cerr << "coughdwt: error [" << (stage.empty() ? cdwt_status_name(status) : stage)
              << "]: " << cdwt_last_error_message() << '\n';
    return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
    coughdwt::cli::ParsedArgs args;
    try {
        args = coughdwt::cli::ParseArgs(std::vector<std::string>(argv, argv + argc));
    } catch (const coughdwt::cli::UsageError& e) {
        std::cerr << "coughdwt: error [pipeline_cli]: " << e.what() << "\nRun with --help for usage.\n";
        return 64;
    }
    if (args.help) {
        std::cout << args.help_text;
        return 0;
    }

    std::string file_json;
    if (args.config_file) {
        std::ifstream in(*args.config_file, std::ios::binary);
        if (!in) {
            std::cerr << "coughdwt: error [pipeline_cli]: cannot open config file '" << *args.config_file << "'\n";
            return CDWT_ERR_IO;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        file_json = buffer.str();
    }

    cdwt_config* config = nullptr;
    const std::string overrides = args.overrides.dump();
    cdwt_status status = cdwt_config_resolve(file_json.empty() ? nullptr : file_json.c_str(), overrides.c_str(), &config);
    if (status != CDWT_OK) return Fail(status);

    char* paths = nullptr;
    status = cdwt_execute(config, args.command.c_str(), &paths);
    cdwt_config_free(config);
    if (status != CDWT_OK) return Fail(status);

    const auto written = nlohmann::json::parse(paths);
    cdwt_string_free(paths);
    for (const auto& p : written) std::cout << "wrote " << p.get<std::string>() << '\n';
    return 0;
}
