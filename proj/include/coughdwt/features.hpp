// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coughdwt/dataset_io.hpp"
#include "coughdwt/wavelet.hpp"

namespace coughdwt {

inline constexpr std::size_t kStatsPerBand = 9;
inline constexpr std::size_t kFeatureBands = 6;
inline constexpr std::size_t kFeatureCount = kStatsPerBand * kFeatureBands;

/// Statistic order within each band.
inline constexpr std::array<std::string_view, kStatsPerBand> kStatNames = {
    "mean", "mav", "sd", "rms", "energy", "zc", "skew", "kurt", "entropy"};
inline constexpr std::array<std::string_view, kFeatureBands> kBandNames = {"D1", "D2", "D3", "D4", "D5", "A5"};

/// "<band>_<stat>" for all 54 features, bands outermost.
const std::vector<std::string>& FeatureNames();

using BandStats = std::array<double, kStatsPerBand>;

/// Nine statistics of one coefficient band, in kStatNames order.
///  - sd uses the n-1 denominator (0 when n = 1)
///  - zc counts strict sign changes, skipping exact zeros
///  - skew / excess kurtosis use population central moments and are 0 when
///    the second central moment is below 1e-24
///  - entropy is the Shannon entropy of c_i^2 / energy (0 for zero energy)
BandStats BandFeatures(std::span<const double> coeffs);

struct FeatureVector {
    std::vector<double> values;  // kFeatureCount entries aligned with FeatureNames()
};

/// Concatenates BandFeatures over [D1..D5, A5]. Requires exactly 6 bands.
FeatureVector ExtractFeatures(const WaveletDecomposition& decomposition);

struct FeatureMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
    std::vector<Label> labels;
    std::vector<SegmentSource> sources;

    std::size_t size() const noexcept { return rows.size(); }
    std::size_t columns() const noexcept { return names.size(); }
    /// Rows picked by index, in the given order.
    FeatureMatrix Subset(std::span<const std::size_t> indices) const;
};

/// Throws Error(Stage::features) if rows, labels and sources are misaligned
/// or any row has the wrong width.
void CheckMatrix(const FeatureMatrix& matrix);

/// 54 names + label,subject_id,segment_index; values at 17 significant digits.
/// Each line of `preamble` is written first, prefixed with "# ".
void WriteFeatureCsv(std::ostream& out, const FeatureMatrix& matrix, std::span<const std::string> preamble = {});

}  // namespace coughdwt
