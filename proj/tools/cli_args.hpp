// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace coughdwt::cli {

struct ParsedArgs {
    std::string command;
    std::optional<std::string> config_file;
    nlohmann::json overrides = nlohmann::json::object();  // only flags actually given
    bool help = false;
    std::string help_text;
};

/// Thrown for unknown flags and malformed values; what() is user-facing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// argv[0] is the program name.
ParsedArgs ParseArgs(const std::vector<std::string>& argv);

}  // namespace coughdwt::cli
