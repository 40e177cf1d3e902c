// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coughdwt {

/// Ground-truth class. positive = COVID19(+).
enum class Label { positive, negative };

std::string_view LabelName(Label label) noexcept;
/// Case-insensitive "positive" / "negative".
Label ParseLabel(std::string_view token);
/// +1 for positive, -1 for negative.
inline int LabelSign(Label label) noexcept { return label == Label::positive ? 1 : -1; }

struct ManifestEntry {
    std::filesystem::path path;  // resolved against the manifest directory
    Label label = Label::negative;
    std::string subject_id;
};

struct ClassCounts {
    std::size_t positive = 0;
    std::size_t negative = 0;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    ClassCounts class_counts;
};

/// Reads a `path,label,subject_id` CSV. Rows keep file order; relative paths
/// resolve against the manifest's directory.
DatasetManifest LoadManifest(const std::filesystem::path& path);
DatasetManifest ParseManifest(std::string_view text, const std::filesystem::path& base_dir);

struct WavData {
    std::vector<double> samples;  // s / 32768
    unsigned sample_rate = 0;
};

/// Mono 16-bit PCM RIFF/WAVE only. Throws Error(Stage::dataset_io).
WavData ReadWav(const std::filesystem::path& path);
WavData DecodeWav(std::span<const unsigned char> bytes);

/// Writes mono 16-bit PCM; samples are quantized as round(x * 32768) clamped
/// to the int16 range, so ReadWav(WriteWav(ReadWav(f))) is lossless.
void WriteWav(const std::filesystem::path& path, std::span<const double> samples, unsigned sample_rate);
std::vector<unsigned char> EncodeWav(std::span<const double> samples, unsigned sample_rate);

/// Samples per window: round(sample_rate * duration_ms / 1000).
std::size_t WindowLength(unsigned sample_rate, double duration_ms);

struct Segmentation {
    std::vector<std::vector<double>> segments;
    std::vector<std::string> warnings;
};

/// Consecutive non-overlapping windows; the remainder is dropped. A signal
/// shorter than one window yields no segments and one warning.
Segmentation SegmentSignal(std::span<const double> samples, unsigned sample_rate, double duration_ms);

struct SegmentSource {
    std::string subject_id;
    std::size_t entry_index = 0;    // manifest row
    std::size_t segment_index = 0;  // window within that recording
};

struct AudioSegment {
    std::vector<double> samples;
    unsigned sample_rate = 0;
    Label label = Label::negative;
    SegmentSource source;
};

struct LoadedSegments {
    std::vector<AudioSegment> segments;
    unsigned sample_rate = 0;
    std::vector<std::string> warnings;
};

/// Reads and segments every manifest entry. All files must share one sample
/// rate; a mixed-rate manifest is an error.
LoadedSegments LoadSegments(const DatasetManifest& manifest, double duration_ms);

}  // namespace coughdwt
