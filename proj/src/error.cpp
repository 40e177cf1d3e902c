// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#include "coughdwt/error.hpp"

namespace coughdwt {

std::string_view StageName(Stage stage) noexcept {
    switch (stage) {
        case Stage::dataset_io: return "dataset_io";
        case Stage::wavelet: return "wavelet";
        case Stage::features: return "features";
        case Stage::normalize: return "normalize";
        case Stage::svm: return "svm";
        case Stage::eval: return "eval";
        case Stage::pipeline_cli: return "pipeline_cli";
    }
    return "unknown";
}

Error::Error(Stage stage, ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(StageName(stage)) + ": " + message),
      stage_(stage),
      code_(code),
      message_(message) {}

}  // namespace coughdwt
