// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coughdwt {

/// Pipeline stage an error originated in. Names match the module layout.
enum class Stage { dataset_io, wavelet, features, normalize, svm, eval, pipeline_cli };

/// Coarse error classes, mapped one-to-one onto the C API status codes.
enum class ErrorCode { invalid_argument, io, format, numeric, state };

std::string_view StageName(Stage stage) noexcept;

/// Exception thrown by every core module. what() is "<stage>: <message>".
class Error : public std::runtime_error {
public:
    Error(Stage stage, ErrorCode code, const std::string& message);

    Stage stage() const noexcept { return stage_; }
    ErrorCode code() const noexcept { return code_; }
    const std::string& message() const noexcept { return message_; }

private:
    Stage stage_;
    ErrorCode code_;
    std::string message_;
};

}  // namespace coughdwt
