// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The coughdwt Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace coughdwt::testing {

/// Temporary directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

/// Sum of sinusoids with frequencies drawn from [low_hz, high_hz] plus a little
/// white noise, peak-normalized to 0.5.
std::vector<double> BandLimitedSignal(std::size_t samples, unsigned rate, double low_hz, double high_hz,
                                      std::uint64_t seed);

struct SyntheticRecording {
    std::string file;
    std::string label;  // "positive" / "negative"
    std::string subject_id;
    std::size_t segments = 1;
    double low_hz = 0.0;
    double high_hz = 0.0;
    std::size_t tail_samples = 0;  // extra samples past the last full window
};

/// Writes WAVs and a manifest.csv into `dir`; returns the manifest path.
std::filesystem::path WriteDataset(const std::filesystem::path& dir, const std::vector<SyntheticRecording>& recordings,
                                   unsigned rate, double duration_ms, std::uint64_t seed);

/// Two classes of one-segment recordings; positives concentrated in 3-6 kHz
/// (D3 at 48 kHz), negatives in 750-1500 Hz (D5). Subjects rotate over
/// `subjects_per_class` ids per class.
std::filesystem::path WriteTwoBandDataset(const std::filesystem::path& dir, std::size_t positives,
                                          std::size_t negatives, std::uint64_t seed,
                                          std::size_t subjects_per_class = 6);

/// 16 subjects (7 positive with 48 segments, 9 negative with 73 segments),
/// 1640 ms windows at 48 kHz; multi-segment recordings with a ragged tail.
/// Class bands overlap partially.
std::filesystem::path WriteCohortShapedDataset(const std::filesystem::path& dir, std::uint64_t seed);

}  // namespace coughdwt::testing
